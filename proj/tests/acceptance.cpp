// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure. The desk corpus is the examples/ tree.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "bdiff/assignment.hpp"
#include "bdiff/es_builder.hpp"
#include "bdiff/eval.hpp"
#include "bdiff/html.hpp"
#include "bdiff/json_io.hpp"
#include "bdiff/pipeline.hpp"
#include "fuzz.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace {

using bdiff::Config;
using bdiff::EditKind;
using Text = std::vector<std::string>;

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("C%d %s  %s: %s\n", id, ok ? "PASS" : "FAIL", what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<bdiff::CorpusFile> desk_corpus(std::size_t max_lines) {
  std::vector<bdiff::CorpusFile> out;
  for (auto& [name, lines] : testutil::example_corpus()) {
    if (lines.size() <= max_lines) out.push_back({name, std::move(lines)});
  }
  return out;
}

bool sound(const Text& a, const Text& b, const bdiff::EditScript& es, int tab = 4) {
  try {
    return bdiff::apply_es(a, es, tab) == b;
  } catch (const bdiff::EsError&) {
    return false;
  }
}

// Fuzz pairs shared by soundness and the runtime ceiling.
std::vector<std::pair<Text, Text>> fuzz_pairs(int n) {
  fuzz::Gen g(20240601);
  std::vector<std::pair<Text, Text>> out;
  for (int i = 0; i < n; ++i) {
    out.push_back(i % 2 ? fuzz::code_pair(g, 120) : fuzz::random_text_pair(g, 120));
  }
  return out;
}

void criterion1(const std::vector<std::pair<Text, Text>>& pairs,
                const std::vector<bdiff::CorpusFile>& corpus, double* max_fuzz_seconds) {
  int bad_fuzz = 0;
  *max_fuzz_seconds = 0;
  for (const auto& [a, b] : pairs) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto es = bdiff::compute_edit_script(a, b);
    *max_fuzz_seconds = std::max(*max_fuzz_seconds, seconds_since(t0));
    bad_fuzz += !sound(a, b, es);
  }
  const auto r = bdiff::run_evaluation(corpus, 1000, 11, Config{});
  const auto t = r.total();
  report(1, bad_fuzz == 0 && t.unsound == 0 && pairs.size() >= 2000 && t.cases >= 1000,
         "soundness",
         std::to_string(pairs.size()) + " fuzz pairs, " + std::to_string(bad_fuzz) +
             " unsound; " + std::to_string(t.cases) + " mutation pairs, " +
             std::to_string(t.unsound) + " unsound");
}

void criterion2() {
  fuzz::Gen g(77);
  int bad = 0;
  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    auto [a, b] = fuzz::random_text_pair(g, 200);
    const auto m = bdiff::myers_diff(a, b);
    const std::size_t lcs = static_cast<std::size_t>(oracle::lcs_length(a, b));
    bad += m.deleted.size() + m.added.size() != a.size() + b.size() - 2 * lcs;
  }
  report(2, bad == 0, "myers minimality", std::to_string(n) + " pairs, " + std::to_string(bad) +
                                              " above the LCS bound");
}

void criterion3() {
  fuzz::Gen g(5);
  int bad = 0;
  const int n = 500;
  for (int i = 0; i < n; ++i) {
    const int nl = g.uniform(1, 8), nr = g.uniform(1, 8);
    std::vector<bdiff::AssignmentEdge> e;
    for (int u = 0; u < nl; ++u) {
      for (int v = 0; v < nr; ++v) {
        if (g.chance(0.6)) e.push_back({u, v, g.uniform(0, 80) / 16.0});
      }
    }
    const auto picked = bdiff::km_min_matching(nl, nr, e);
    double w = 0;
    for (std::size_t k : picked) w += e[k].weight;
    const auto best = oracle::best_matching(nl, nr, e);
    bad += static_cast<int>(picked.size()) != best.cardinality || w != best.weight;
  }
  report(3, bad == 0, "KM optimality",
         std::to_string(n) + " instances, " + std::to_string(bad) + " off the brute-force optimum");
}

void criterion4(const std::vector<bdiff::CorpusFile>& corpus) {
  const auto r = bdiff::run_evaluation(corpus, 500, 2024, Config{});
  const auto t = r.total();
  const double bm = t.kind_rate[static_cast<std::size_t>(EditKind::BM)];
  const double bc = t.kind_rate[static_cast<std::size_t>(EditKind::BC)];
  const double full = t.fully_matched_fraction();
  report(4, t.cases >= 500 && t.total_rate >= 0.90 && bm >= 0.75 && bc >= 0.75 && full >= 0.70,
         "mutation matching rate",
         std::to_string(t.cases) + " cases; " +
             fmt("total %.3f, BM %.3f, BC %.3f, fully matched %.3f", t.total_rate, bm, bc, full));
}

void criterion5(const std::vector<bdiff::CorpusFile>& corpus) {
  bdiff::MutationOptions opt;
  opt.favor_blocks = true;
  std::vector<const bdiff::CaseResult*> picked;
  const auto r = bdiff::run_evaluation(corpus, 300, 99, Config{}, opt);
  int over = 0;
  for (const auto& c : r.cases) {
    const int blocks = c.truth_by_kind[static_cast<std::size_t>(EditKind::BM)] +
                       c.truth_by_kind[static_cast<std::size_t>(EditKind::BC)];
    if (blocks == 0) continue;
    picked.push_back(&c);
    over += c.computed_size > c.myers_size;
  }
  double es = 0, myers = 0;
  for (const auto* c : picked) {
    es += static_cast<double>(c->computed_size);
    myers += static_cast<double>(c->myers_size);
  }
  const double n = static_cast<double>(std::max<std::size_t>(picked.size(), 1));
  const double reduction = myers == 0 ? 0 : 1.0 - es / myers;
  report(5, picked.size() >= 100 && reduction >= 0.20 && over == 0, "ES size vs Myers",
         std::to_string(picked.size()) + " block-edit pairs; " +
             fmt("mean %.2f vs Myers %.2f (%.1f%% smaller)", es / n, myers / n, 100 * reduction) +
             ", " + std::to_string(over) + " pairs above Myers");
}

int count_kind(const bdiff::EditScript& es, EditKind k) {
  return static_cast<int>(std::count_if(es.actions.begin(), es.actions.end(),
                                        [k](const bdiff::EditAction& a) { return a.kind == k; }));
}

void criterion6() {
  const Text a = testutil::data_lines("move_copy_left.py");
  const Text b = testutil::data_lines("move_copy_right.py");
  const auto es = bdiff::compute_edit_script(a, b);
  const int bm = count_kind(es, EditKind::BM), bc = count_kind(es, EditKind::BC);
  report(6, bm == 1 && bc == 1 && sound(a, b, es), "moved and copied block",
         std::to_string(bm) + " BM, " + std::to_string(bc) + " BC, " +
             std::to_string(es.actions.size()) + " actions");
}

void criterion7() {
  const Text a = testutil::data_lines("indent_shift_left.py");
  const Text b = testutil::data_lines("indent_shift_right.py");
  const auto es = bdiff::compute_edit_script(a, b);
  std::string deltas;
  for (const auto& x : es.actions) {
    if (x.kind == EditKind::BM) deltas += " " + std::to_string(x.indent_delta);
  }
  const int bm = count_kind(es, EditKind::BM);
  report(7, bm == 2 && sound(a, b, es), "two indent shifts",
         std::to_string(bm) + " BM (deltas" + deltas + "), " + std::to_string(es.actions.size()) +
             " actions");
}

void criterion8(const std::vector<bdiff::CorpusFile>& corpus, double max_fuzz_seconds) {
  std::vector<double> times;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto gt = bdiff::mutate(corpus[i].lines, 1000 + i);
    const auto t0 = std::chrono::steady_clock::now();
    (void)bdiff::compute_edit_script(corpus[i].lines, gt.right);
    times.push_back(seconds_since(t0));
  }
  const double median = bdiff::detail::median_of(times);
  const double worst = times.empty() ? 0 : *std::max_element(times.begin(), times.end());
  report(8, !times.empty() && median < 0.5 && max_fuzz_seconds <= 5.0 && worst <= 5.0, "runtime",
         std::to_string(times.size()) + " files <= 2000 lines; " +
             fmt("median %.4f s, max %.4f s; fuzz max %.4f s", median, worst, max_fuzz_seconds));
}

// Every intermediate result of one pipeline run, printed exactly.
std::string stage_dump(const Text& a, const Text& b) {
  const bdiff::DiffOutcome o = bdiff::run_pipeline(a, b, Config{});
  std::ostringstream s;
  s << std::hexfloat;
  auto ints = [&s](const std::vector<int>& v) {
    for (int x : v) s << x << ',';
    s << ';';
  };
  ints(o.base.deleted);
  ints(o.base.added);
  for (auto [l, r] : o.base.unchanged_pairs) s << l << ':' << r << ',';
  for (const auto& h : o.base.hunks) {
    ints(h.deleted);
    ints(h.added);
  }
  s << '\n';
  for (const auto& m : o.split_merges) {
    s << bdiff::to_string(m.kind);
    ints(m.src);
    ints(m.dst);
  }
  s << '\n';
  auto mapping = [&s](const bdiff::CandidateMapping& m) {
    if (const auto* lu = std::get_if<bdiff::LuCandidate>(&m)) {
      s << "LU " << lu->src_line << ' ' << lu->dst_line << ' ' << lu->score << ' ' << lu->crossings;
    } else {
      const auto& c = std::get<bdiff::BlockCandidate>(m);
      s << bdiff::to_string(c.kind) << ' ' << c.src.first << '+' << c.src.count << ' '
        << c.dst.first << '+' << c.dst.count << ' ' << c.indent_delta << ' ' << c.effective_len
        << ' ' << c.weight;
      for (auto [x, y] : c.inner_updates) s << ' ' << x << '~' << y;
    }
    s << '\n';
  };
  for (const auto& m : o.candidates) mapping(m);
  s << "--\n";
  for (const auto& m : o.mappings) mapping(m);
  s << bdiff::es_to_json_string(o.es) << '\n'
    << bdiff::render_text(o.es, a) << bdiff::render_html(o.es, a, b);
  return s.str();
}

void criterion9(const std::vector<std::pair<Text, Text>>& fuzz_sample,
                const std::vector<bdiff::CorpusFile>& corpus) {
  std::vector<std::pair<Text, Text>> suite;
  for (const char* stem : {"move_copy", "indent_shift"}) {
    suite.emplace_back(testutil::data_lines(std::string(stem) + "_left.py"),
                       testutil::data_lines(std::string(stem) + "_right.py"));
  }
  for (std::size_t i = 0; i < 200 && i < fuzz_sample.size(); ++i) suite.push_back(fuzz_sample[i]);
  for (std::size_t i = 0; i < corpus.size(); i += 3) {
    suite.emplace_back(corpus[i].lines, bdiff::mutate(corpus[i].lines, 7 * i).right);
  }
  int differing = 0;
  for (const auto& [a, b] : suite) {
    const std::string first = stage_dump(a, b);
    differing += stage_dump(a, b) != first || stage_dump(a, b) != first;
  }
  report(9, differing == 0, "determinism",
         std::to_string(suite.size()) + " pairs x 3 runs, " + std::to_string(differing) +
             " with differing output");
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto corpus = desk_corpus(2000);
  std::printf("desk corpus: %zu files under examples/ (<= 2000 lines)\n", corpus.size());
  const auto pairs = fuzz_pairs(2000);
  double max_fuzz_seconds = 0;
  criterion1(pairs, corpus, &max_fuzz_seconds);
  criterion2();
  criterion3();
  criterion4(corpus);
  criterion5(corpus);
  criterion6();
  criterion7();
  criterion8(corpus, max_fuzz_seconds);
  criterion9(pairs, corpus);
  std::printf("%d of 9 criteria failed (%.1f s)\n", failures, seconds_since(t0));
  return failures == 0 ? 0 : 1;
}

#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "bdiff/base_diff.hpp"
#include "bdiff/core.hpp"
#include "bdiff/es_builder.hpp"
#include "bdiff/mutation.hpp"
#include "bdiff/pipeline.hpp"

namespace bdiff {

struct CorpusFile {
  std::string name;
  std::vector<std::string> lines;
};

struct CaseResult {
  std::size_t file = 0;
  std::uint64_t seed = 0;
  std::array<int, 7> truth_by_kind{};
  std::array<int, 7> matched_by_kind{};
  std::size_t truth_size = 0;
  std::size_t computed_size = 0;
  std::size_t myers_size = 0;  // deleted + added lines of a minimal line diff
  double rate = 1.0;
  bool sound = true;
  double seconds = 0.0;

  int truth_total() const {
    int n = 0;
    for (int v : truth_by_kind) n += v;
    return n;
  }
  int matched_total() const {
    int n = 0;
    for (int v : matched_by_kind) n += v;
    return n;
  }
  bool fully_matched() const { return matched_total() == truth_total(); }
  double kind_rate(EditKind k) const {
    const auto i = static_cast<std::size_t>(k);
    return truth_by_kind[i] == 0 ? 1.0
                                 : static_cast<double>(matched_by_kind[i]) / truth_by_kind[i];
  }
};

namespace detail {

inline double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : (v[m - 1] + v[m]) / 2.0;
}

inline std::string extension_of(const std::string& name) {
  const std::size_t slash = name.find_last_of('/');
  const std::size_t dot = name.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return "(none)";
  return name.substr(dot + 1);
}

}  // namespace detail

// Aggregate over a set of cases. Rates are averages of per-case rates; a
// kind's average only includes cases whose truth contains that kind.
struct EvalSummary {
  std::size_t cases = 0;
  double truth_mean = 0, truth_median = 0;
  double computed_mean = 0, computed_median = 0;
  double myers_mean = 0;
  double total_rate = 0;
  std::array<double, 7> kind_rate{};
  std::array<int, 7> kind_cases{};
  std::array<int, 7> truth_count{};
  std::array<int, 7> matched_count{};
  std::size_t fully_matched = 0;
  std::size_t unsound = 0;

  double fully_matched_fraction() const {
    return cases == 0 ? 0.0 : static_cast<double>(fully_matched) / static_cast<double>(cases);
  }
  double pooled_rate(EditKind k) const {
    const auto i = static_cast<std::size_t>(k);
    return truth_count[i] == 0 ? 1.0 : static_cast<double>(matched_count[i]) / truth_count[i];
  }
};

inline EvalSummary summarize(const std::vector<const CaseResult*>& cases) {
  EvalSummary s;
  s.cases = cases.size();
  std::vector<double> truth, computed, myers, rates;
  std::array<std::vector<double>, 7> per_kind;
  for (const CaseResult* c : cases) {
    truth.push_back(static_cast<double>(c->truth_size));
    computed.push_back(static_cast<double>(c->computed_size));
    myers.push_back(static_cast<double>(c->myers_size));
    rates.push_back(c->rate);
    if (c->fully_matched()) ++s.fully_matched;
    if (!c->sound) ++s.unsound;
    for (std::size_t k = 0; k < 7; ++k) {
      s.truth_count[k] += c->truth_by_kind[k];
      s.matched_count[k] += c->matched_by_kind[k];
      if (c->truth_by_kind[k] > 0) per_kind[k].push_back(c->kind_rate(static_cast<EditKind>(k)));
    }
  }
  s.truth_mean = detail::mean_of(truth);
  s.truth_median = detail::median_of(truth);
  s.computed_mean = detail::mean_of(computed);
  s.computed_median = detail::median_of(computed);
  s.myers_mean = detail::mean_of(myers);
  s.total_rate = detail::mean_of(rates);
  for (std::size_t k = 0; k < 7; ++k) {
    s.kind_cases[k] = static_cast<int>(per_kind[k].size());
    s.kind_rate[k] = per_kind[k].empty() ? 1.0 : detail::mean_of(per_kind[k]);
  }
  return s;
}

struct EvalReport {
  std::uint64_t seed = 0;
  std::vector<std::string> files;
  std::vector<CaseResult> cases;

  EvalSummary total() const {
    std::vector<const CaseResult*> all;
    for (const auto& c : cases) all.push_back(&c);
    return summarize(all);
  }

  // Summaries per file extension, in name order.
  std::map<std::string, EvalSummary> by_extension() const {
    std::map<std::string, std::vector<const CaseResult*>> groups;
    for (const auto& c : cases) groups[detail::extension_of(files[c.file])].push_back(&c);
    std::map<std::string, EvalSummary> out;
    for (const auto& [ext, v] : groups) out[ext] = summarize(v);
    return out;
  }
};

inline constexpr std::string_view kEvalMethodNote =
    "edit kinds drawn uniformly among enabled kinds; block lengths 2 + geometric(1/2), mean 3";

inline nlohmann::ordered_json summary_json(const EvalSummary& s) {
  nlohmann::ordered_json j;
  j["cases"] = s.cases;
  j["truthEsSize"] = {{"mean", s.truth_mean}, {"median", s.truth_median}};
  j["computedEsSize"] = {{"mean", s.computed_mean}, {"median", s.computed_median}};
  j["myersEsSizeMean"] = s.myers_mean;
  j["fullyMatched"] = s.fully_matched;
  j["fullyMatchedFraction"] = s.fully_matched_fraction();
  j["unsoundCases"] = s.unsound;
  nlohmann::ordered_json rates;
  rates["Total"] = s.total_rate;
  for (EditKind k : kAllEditKinds) rates[std::string(to_string(k))] = s.kind_rate[static_cast<std::size_t>(k)];
  j["avgMatchingRate"] = std::move(rates);
  nlohmann::ordered_json pooled;
  for (EditKind k : kAllEditKinds) {
    const auto i = static_cast<std::size_t>(k);
    pooled[std::string(to_string(k))] = {{"truth", s.truth_count[i]},
                                         {"matched", s.matched_count[i]},
                                         {"cases", s.kind_cases[i]}};
  }
  j["perKind"] = std::move(pooled);
  return j;
}

inline nlohmann::ordered_json report_json(const EvalReport& r) {
  nlohmann::ordered_json j;
  j["seed"] = r.seed;
  j["method"] = std::string(kEvalMethodNote);
  j["total"] = summary_json(r.total());
  nlohmann::ordered_json groups;
  for (const auto& [ext, s] : r.by_extension()) groups[ext] = summary_json(s);
  j["byExtension"] = std::move(groups);
  return j;
}

// Aligned table: group, cases, truth and computed size (mean, median), and
// the average matching rate in total and per kind.
inline std::string report_table(const EvalReport& r) {
  std::string out = "# " + std::string(kEvalMethodNote) + "\n";
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-10s %6s %7s %7s %7s %7s %6s", "Group", "Cases", "GT.mean",
                "GT.med", "ES.mean", "ES.med", "Total");
  out += buf;
  for (EditKind k : kAllEditKinds) {
    std::snprintf(buf, sizeof buf, " %6s", std::string(to_string(k)).c_str());
    out += buf;
  }
  out += "\n";
  auto row = [&](const std::string& name, const EvalSummary& s) {
    std::snprintf(buf, sizeof buf, "%-10s %6zu %7.1f %7.1f %7.1f %7.1f %6.3f", name.c_str(),
                  s.cases, s.truth_mean, s.truth_median, s.computed_mean, s.computed_median,
                  s.total_rate);
    out += buf;
    for (EditKind k : kAllEditKinds) {
      const auto i = static_cast<std::size_t>(k);
      if (s.kind_cases[i] == 0) {
        std::snprintf(buf, sizeof buf, " %6s", "-");
      } else {
        std::snprintf(buf, sizeof buf, " %6.3f", s.kind_rate[i]);
      }
      out += buf;
    }
    out += "\n";
  };
  for (const auto& [ext, s] : r.by_extension()) row(ext, s);
  const EvalSummary t = r.total();
  row("Total", t);
  std::snprintf(buf, sizeof buf, "fully matched: %zu/%zu (%.3f)   unsound: %zu\n", t.fully_matched,
                t.cases, t.fully_matched_fraction(), t.unsound);
  out += buf;
  return out;
}

struct CaseArtifacts {
  const std::vector<std::string>& left;
  const GroundTruth& truth;
  const EditScript& computed;
};

// Mutates files drawn from `corpus`, diffs each mutated pair and scores the
// result against the injected script. `sink`, when set, sees every case.
inline EvalReport run_evaluation(
    const std::vector<CorpusFile>& corpus, int cases, std::uint64_t seed, const Config& cfg,
    const MutationOptions& opt = {},
    const std::function<void(std::size_t, const CaseResult&, const CaseArtifacts&)>& sink = {}) {
  EvalReport report;
  report.seed = seed;
  for (const auto& f : corpus) report.files.push_back(f.name);
  if (corpus.empty()) return report;
  detail::Rng pick(detail::mix_seed(seed));
  for (int i = 0; i < cases; ++i) {
    CaseResult c;
    c.file = static_cast<std::size_t>(pick.uniform(0, static_cast<int>(corpus.size()) - 1));
    c.seed = detail::mix_seed(seed ^ (0x5851f42d4c957f2dULL * static_cast<std::uint64_t>(i + 1)));
    const auto& left = corpus[c.file].lines;
    const GroundTruth gt = mutate(left, c.seed, cfg, opt);
    const auto t0 = std::chrono::steady_clock::now();
    const EditScript es = compute_edit_script(left, gt.right, cfg);
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    try {
      c.sound = apply_es(left, es, cfg.tab_size) == gt.right;
    } catch (const EsError&) {
      c.sound = false;
    }
    const auto hit = match_truth(es, gt.es);
    for (std::size_t t = 0; t < gt.es.actions.size(); ++t) {
      const auto k = static_cast<std::size_t>(gt.es.actions[t].kind);
      ++c.truth_by_kind[k];
      if (hit[t]) ++c.matched_by_kind[k];
    }
    c.rate = matching_rate(es, gt.es);
    c.truth_size = es_size(gt.es);
    c.computed_size = es_size(es);
    const BaseDiffResult myers = myers_diff(left, gt.right);
    c.myers_size = myers.deleted.size() + myers.added.size();
    if (sink) sink(static_cast<std::size_t>(i), c, CaseArtifacts{left, gt, es});
    report.cases.push_back(c);
  }
  return report;
}

}  // namespace bdiff

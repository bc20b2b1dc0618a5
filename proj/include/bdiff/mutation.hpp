#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "bdiff/block_analysis.hpp"
#include "bdiff/core.hpp"
#include "bdiff/es_builder.hpp"
#include "bdiff/levenshtein.hpp"

namespace bdiff {

struct MutationOptions {
  std::optional<int> bound;   // number of edit sites; drawn at random when absent
  bool favor_blocks = false;  // try BM/BC first at half of the sites
};

struct GroundTruth {
  std::vector<std::string> right;
  EditScript es;
};

namespace detail {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform integer in [lo, hi].
  int uniform(int lo, int hi) {
    if (hi <= lo) return lo;
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
  }
  bool chance(double p) {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p;
  }
  // Failures before the first success of a coin with success probability p.
  int geometric(double p, int cap) {
    int k = 0;
    while (k < cap && !chance(p)) ++k;
    return k;
  }
  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))];
  }

 private:
  std::mt19937_64 engine_;
};

inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::string leading_ws(std::string_view raw) {
  const std::size_t n = raw.find_first_not_of(" \t");
  return std::string(raw.substr(0, n == std::string_view::npos ? raw.size() : n));
}

class Mutator {
 public:
  Mutator(std::span<const std::string> left, std::uint64_t seed, const Config& cfg,
          const MutationOptions& opt)
      : left_(left.begin(), left.end()), rng_(seed), cfg_(cfg), opt_(opt) {
    for (std::size_t i = 0; i < left_.size(); ++i) {
      list_.push_back({left_[i], static_cast<int>(i) + 1, -1, 0, false, false});
      ++counts_[left_[i]];
      left_set_.insert(left_[i]);
      auto [indent, body] = expand_indent(left_[i], cfg_.tab_size);
      left_bodies_.push_back(body);
      left_profiles_.emplace_back(body);
    }
    for (EditKind k : kAllEditKinds) {
      if (cfg_.enabled.contains(k)) kinds_.push_back(k);
    }
  }

  GroundTruth run() {
    const int n = static_cast<int>(left_.size());
    int bound = 0;
    if (opt_.bound) {
      bound = std::max(0, *opt_.bound);
    } else {
      bound = rng_.uniform(1, std::max(3, (n + 9) / 10));
    }
    const int gap_max = std::max(2, 2 * n / (bound + 1));
    std::size_t pos = static_cast<std::size_t>(rng_.uniform(0, gap_max - 1));
    int sites = 0;
    while (sites < bound && pos < list_.size()) {
      auto end = mutate_at(pos);
      if (end) {
        ++sites;
        pos = *end + static_cast<std::size_t>(rng_.uniform(1, gap_max));
      } else {
        ++pos;
      }
    }
    return finish();
  }

 private:
  struct Entry {
    std::string content;
    int left_line = 0;  // 0 for inserted lines
    int action = -1;    // action producing this right line
    int slot = 0;       // index into that action's destination list
    bool touched = false;
    bool removed = false;
  };

  struct Pending {
    EditKind kind = EditKind::LD;
    std::vector<int> src;
    int dst_count = 0;
    int indent_delta = 0;
    std::vector<int> inner_slots;
  };

  // --- line predicates -----------------------------------------------------

  bool pristine(std::size_t i) const {
    return i < list_.size() && list_[i].left_line > 0 && !list_[i].touched && !list_[i].removed;
  }

  // The lines just outside [b, e) must be untouched originals (or the file edge).
  bool neighbors_ok(std::size_t b, std::size_t e) const {
    return (b == 0 || pristine(b - 1)) && (e >= list_.size() || pristine(e));
  }

  const std::string* prev_content(std::size_t b) const {
    return b == 0 ? nullptr : &list_[b - 1].content;
  }
  const std::string* next_content(std::size_t e) const {
    return e >= list_.size() ? nullptr : &list_[e].content;
  }

  // A removed or inserted run must not be able to slide along equal
  // neighbouring lines, or the base diff could place it elsewhere.
  bool no_slide(const std::vector<std::string>& run, std::size_t b, std::size_t e) const {
    if (run.empty()) return true;
    const std::string* prev = prev_content(b);
    const std::string* next = next_content(e);
    if (prev && run.back() == *prev) return false;
    if (next && run.front() == *next) return false;
    return true;
  }

  bool fresh(const std::string& s) const {
    if (left_set_.contains(s)) return false;
    auto it = counts_.find(s);
    return it == counts_.end() || it->second == 0;
  }

  bool unlike_left(const std::string& raw) const {
    auto [indent, body] = expand_indent(raw, cfg_.tab_size);
    const CharProfile prof(body);
    for (std::size_t i = 0; i < left_bodies_.size(); ++i) {
      if (left_profiles_[i].ratio_upper_bound(prof) <= cfg_.block_line_sim_thres) continue;
      if (levenshtein_ratio(left_bodies_[i], body) > cfg_.block_line_sim_thres) return false;
    }
    return true;
  }

  bool stop_word(const std::string& raw) const {
    const std::string_view t = trim(raw);
    return t.empty() || cfg_.stop_words.contains(std::string(t));
  }

  int effective(const std::vector<std::string>& raws) const {
    return static_cast<int>(
        std::count_if(raws.begin(), raws.end(), [&](const std::string& r) { return !stop_word(r); }));
  }

  // Number of places the exact run occurs in the left version.
  int occurrences_in_left(const std::vector<std::string>& run) const {
    if (run.empty() || run.size() > left_.size()) return 0;
    int hits = 0;
    for (std::size_t i = 0; i + run.size() <= left_.size(); ++i) {
      if (std::equal(run.begin(), run.end(), left_.begin() + static_cast<std::ptrdiff_t>(i))) ++hits;
    }
    return hits;
  }

  // --- list edits ----------------------------------------------------------

  int new_action(Pending p) {
    actions_.push_back(std::move(p));
    return static_cast<int>(actions_.size()) - 1;
  }

  void remove(std::size_t i) {
    --counts_[list_[i].content];
    list_[i].removed = true;
    list_[i].touched = true;
  }

  void insert(std::size_t at, const std::vector<std::string>& lines, int action, int first_slot,
              bool one_action_per_line = false) {
    std::vector<Entry> fresh_entries;
    for (std::size_t k = 0; k < lines.size(); ++k) {
      Entry e;
      e.content = lines[k];
      e.touched = true;
      if (one_action_per_line) {
        e.action = new_action({EditKind::LA, {}, 1, 0, {}});
        e.slot = 0;
      } else {
        e.action = action;
        e.slot = first_slot + static_cast<int>(k);
      }
      ++counts_[lines[k]];
      fresh_entries.push_back(std::move(e));
    }
    list_.insert(list_.begin() + static_cast<std::ptrdiff_t>(at), fresh_entries.begin(),
                 fresh_entries.end());
  }

  // --- content generators --------------------------------------------------

  std::string random_ident() {
    static const std::vector<std::string> words = {
        "value", "count", "index", "buffer", "result", "node",  "item",
        "total", "offset", "limit", "cache", "state", "token", "scratch"};
    static constexpr std::string_view alnum = "abcdefghijklmnopqrstuvwxyz0123456789";
    std::string s = rng_.pick(words) + "_";
    for (int i = 0; i < 3; ++i) s += alnum[static_cast<std::size_t>(rng_.uniform(0, 35))];
    return s;
  }

  std::string random_statement() {
    const std::string a = random_ident();
    const std::string b = random_ident();
    const std::string n = std::to_string(rng_.uniform(2, 997));
    switch (rng_.uniform(0, 4)) {
      case 0: return a + " = " + b + " + " + n + ";";
      case 1: return a + "(" + b + ", " + n + ");";
      case 2: return "if (" + a + " > " + n + ") " + b + "++;";
      case 3: return "return " + a + " * " + n + ";";
      default: return "log_" + a + "(\"" + b + " " + n + "\");";
    }
  }

  std::optional<std::string> added_line(std::size_t at) {
    const std::string* ref = next_content(at);
    if (ref == nullptr || is_blank(*ref)) ref = prev_content(at);
    const std::string indent = ref && !is_blank(*ref) ? leading_ws(*ref) : std::string();
    for (int attempt = 0; attempt < 8; ++attempt) {
      std::string line = indent + random_statement();
      if (fresh(line) && unlike_left(line)) return line;
    }
    return std::nullopt;
  }

  // A small edit of the text after the indentation.
  std::string tweak_body(const std::string& body) {
    std::string out = body;
    switch (rng_.uniform(0, 3)) {
      case 0: {  // replace an identifier-like token
        std::vector<std::pair<std::size_t, std::size_t>> tokens;
        std::size_t i = 0;
        while (i < out.size()) {
          if (std::isalnum(static_cast<unsigned char>(out[i])) || out[i] == '_') {
            std::size_t j = i;
            while (j < out.size() && (std::isalnum(static_cast<unsigned char>(out[j])) || out[j] == '_')) ++j;
            tokens.emplace_back(i, j - i);
            i = j;
          } else {
            ++i;
          }
        }
        if (tokens.empty()) break;
        auto [at, len] = rng_.pick(tokens);
        out.replace(at, len, random_ident().substr(0, std::max<std::size_t>(len, 3)));
        break;
      }
      case 1: {  // insert a short fragment
        static const std::vector<std::string> bits = {" + 1", "_2", " /* x */", "!", " - n"};
        const auto at = static_cast<std::size_t>(rng_.uniform(1, static_cast<int>(out.size())));
        out.insert(at, rng_.pick(bits));
        break;
      }
      case 2: {  // delete a short span
        if (out.size() < 6) break;
        const int len = rng_.uniform(1, 3);
        const auto at = static_cast<std::size_t>(rng_.uniform(1, static_cast<int>(out.size()) - len));
        out.erase(at, static_cast<std::size_t>(len));
        break;
      }
      default: {  // change one character
        const auto at = static_cast<std::size_t>(rng_.uniform(0, static_cast<int>(out.size()) - 1));
        const char c = out[at];
        out[at] = std::isdigit(static_cast<unsigned char>(c)) ? static_cast<char>('0' + (c - '0' + 1) % 10)
                  : std::isalpha(static_cast<unsigned char>(c)) ? (c == 'z' ? 'q' : 'z')
                                                               : '#';
        break;
      }
    }
    return out;
  }

  // A changed version of `raw` whose similarity stays above `min_ratio`
  // (measured on whole lines or on bodies).
  std::optional<std::string> updated_line(const std::string& raw, double min_ratio, bool on_body) {
    if (stop_word(raw)) return std::nullopt;
    const std::string indent = leading_ws(raw);
    const std::string body = raw.substr(indent.size());
    if (body.size() < 6) return std::nullopt;
    for (int attempt = 0; attempt < 12; ++attempt) {
      std::string nb = tweak_body(body);
      if (nb == body || is_blank(nb) || nb.front() == ' ' || nb.front() == '\t') continue;
      std::string line = indent + nb;
      const double r = on_body ? levenshtein_ratio(body, nb) : levenshtein_ratio(raw, line);
      if (r < min_ratio || !fresh(line)) continue;
      return line;
    }
    return std::nullopt;
  }

  // --- edit kinds ----------------------------------------------------------

  std::optional<std::size_t> do_ld(std::size_t p) {
    if (!pristine(p) || !neighbors_ok(p, p + 1)) return std::nullopt;
    if (!no_slide({list_[p].content}, p, p + 1)) return std::nullopt;
    new_action({EditKind::LD, {list_[p].left_line}, 0, 0, {}});
    remove(p);
    return p + 1;
  }

  std::optional<std::size_t> do_la(std::size_t p) {
    if (!neighbors_ok(p, p)) return std::nullopt;
    const int k = rng_.uniform(1, 2);
    std::vector<std::string> lines;
    for (int i = 0; i < k; ++i) {
      auto line = added_line(p);
      if (!line) return std::nullopt;
      if (std::find(lines.begin(), lines.end(), *line) != lines.end()) return std::nullopt;
      lines.push_back(*line);
    }
    if (!no_slide(lines, p, p)) return std::nullopt;
    insert(p, lines, -1, 0, true);
    return p + lines.size();
  }

  std::optional<std::size_t> do_lu(std::size_t p) {
    if (!pristine(p) || !neighbors_ok(p, p + 1)) return std::nullopt;
    if (!no_slide({list_[p].content}, p, p + 1)) return std::nullopt;
    auto line = updated_line(list_[p].content, 0.8, false);
    if (!line) return std::nullopt;
    const int id = new_action({EditKind::LU, {list_[p].left_line}, 1, 0, {}});
    remove(p);
    insert(p + 1, {*line}, id, 0);
    return p + 2;
  }

  std::optional<std::size_t> do_ls(std::size_t p) {
    if (!pristine(p) || !neighbors_ok(p, p + 1)) return std::nullopt;
    const std::string& raw = list_[p].content;
    if (!no_slide({raw}, p, p + 1)) return std::nullopt;
    const int cap = std::min(4, cfg_.max_split_attempts);
    if (cap < 2) return std::nullopt;
    // Cut points that leave a non-blank piece on both sides.
    std::vector<std::size_t> cuts;
    const std::size_t first_ink = raw.find_first_not_of(" \t");
    const std::size_t last_ink = raw.find_last_not_of(" \t");
    if (first_ink == std::string::npos) return std::nullopt;
    for (std::size_t c = first_ink + 1; c <= last_ink; ++c) cuts.push_back(c);
    if (cuts.empty()) return std::nullopt;
    const int k = rng_.uniform(2, std::min<int>(cap, static_cast<int>(cuts.size()) + 1));
    for (int attempt = 0; attempt < 6; ++attempt) {
      std::vector<std::size_t> chosen;
      std::vector<std::size_t> pool = cuts;
      for (int i = 0; i < k - 1 && !pool.empty(); ++i) {
        const auto at = static_cast<std::size_t>(rng_.uniform(0, static_cast<int>(pool.size()) - 1));
        chosen.push_back(pool[at]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(at));
      }
      std::sort(chosen.begin(), chosen.end());
      std::vector<std::string> pieces;
      std::size_t from = 0;
      for (std::size_t c : chosen) {
        pieces.push_back(raw.substr(from, c - from));
        from = c;
      }
      pieces.push_back(raw.substr(from));
      bool ok = true;
      std::unordered_set<std::string> seen;
      for (const auto& piece : pieces) {
        if (is_blank(piece) || !fresh(piece) || !seen.insert(piece).second) ok = false;
      }
      if (!ok || !no_slide(pieces, p, p + 1)) continue;
      const int id = new_action({EditKind::LS, {list_[p].left_line},
                                 static_cast<int>(pieces.size()), 0, {}});
      remove(p);
      insert(p + 1, pieces, id, 0);
      return p + 1 + pieces.size();
    }
    return std::nullopt;
  }

  std::optional<std::size_t> do_lm(std::size_t p) {
    const int cap = std::min(4, cfg_.max_split_attempts);
    if (cap < 2) return std::nullopt;
    const auto k = static_cast<std::size_t>(rng_.uniform(2, cap));
    if (p + k > list_.size() || !neighbors_ok(p, p + k)) return std::nullopt;
    std::vector<std::string> parts;
    std::string merged;
    for (std::size_t i = p; i < p + k; ++i) {
      if (!pristine(i) || is_blank(list_[i].content)) return std::nullopt;
      parts.push_back(list_[i].content);
      merged += list_[i].content;
    }
    if (!fresh(merged) || !no_slide(parts, p, p + k) || !no_slide({merged}, p, p + k)) {
      return std::nullopt;
    }
    std::vector<int> src;
    for (std::size_t i = p; i < p + k; ++i) {
      src.push_back(list_[i].left_line);
      remove(i);
    }
    const int id = new_action({EditKind::LM, src, 1, 0, {}});
    insert(p + k, {merged}, id, 0);
    return p + k + 1;
  }

  // A pristine run starting at p with non-blank ends and enough effective
  // lines for a block of kind `kind`.
  std::optional<std::size_t> block_at(std::size_t p, int min_len) {
    std::size_t len = 2 + static_cast<std::size_t>(rng_.geometric(0.5, 10));
    std::vector<std::string> raws;
    for (std::size_t i = p; i < p + len; ++i) {
      if (!pristine(i)) return std::nullopt;
      raws.push_back(list_[i].content);
    }
    while (effective(raws) < min_len && len < 12 && pristine(p + len)) {
      raws.push_back(list_[p + len].content);
      ++len;
    }
    if (effective(raws) < min_len) return std::nullopt;
    if (is_blank(raws.front()) || is_blank(raws.back())) return std::nullopt;
    return len;
  }

  // Chooses the shift and the optional inner update for a block about to be
  // placed, then returns the placed lines and the slot of the inner update.
  std::optional<std::pair<std::vector<std::string>, std::vector<int>>> shape_block(
      const std::vector<std::string>& raws, int delta, bool allow_inner) {
    std::vector<std::string> placed;
    for (const auto& r : raws) placed.push_back(reindent(r, delta, cfg_.tab_size));
    std::vector<int> inner;
    if (allow_inner && rng_.chance(0.3)) {
      std::vector<int> options;
      for (std::size_t i = 0; i < raws.size(); ++i) {
        if (!stop_word(raws[i])) options.push_back(static_cast<int>(i));
      }
      if (!options.empty()) {
        const int slot = rng_.pick(options);
        auto line = updated_line(placed[static_cast<std::size_t>(slot)], 0.75, true);
        if (line) {
          placed[static_cast<std::size_t>(slot)] = *line;
          inner.push_back(slot);
        }
      }
    }
    return std::make_pair(std::move(placed), std::move(inner));
  }

  int pick_delta(const std::vector<std::string>& raws, bool must_shift) {
    if (!must_shift && !rng_.chance(0.3)) return 0;
    int min_indent = 1 << 30;
    for (const auto& r : raws) {
      if (!is_blank(r)) min_indent = std::min(min_indent, expand_indent(r, cfg_.tab_size).first);
    }
    const int unit = cfg_.tab_size;
    if (min_indent >= unit && rng_.chance(0.5)) return -unit;
    return unit;
  }

  std::optional<std::size_t> do_bm(std::size_t p) {
    auto len_opt = block_at(p, cfg_.min_bm);
    if (!len_opt) return std::nullopt;
    const std::size_t len = *len_opt;
    const std::size_t e = p + len;
    if (!neighbors_ok(p, e)) return std::nullopt;
    std::vector<std::string> raws;
    std::vector<int> src;
    for (std::size_t i = p; i < e; ++i) {
      raws.push_back(list_[i].content);
      src.push_back(list_[i].left_line);
    }
    if (occurrences_in_left(raws) != 1 || !no_slide(raws, p, e)) return std::nullopt;

    const bool interior_blank = std::any_of(raws.begin(), raws.end(),
                                            [](const std::string& r) { return is_blank(r); });
    const bool can_stay = !interior_blank && effective(raws) >= std::max(3, cfg_.min_bm + 1);
    if (can_stay && rng_.chance(0.25)) {
      const int delta = pick_delta(raws, true);
      auto shaped = shape_block(raws, delta, false);
      if (!shaped || !no_slide(shaped->first, p, e)) return std::nullopt;
      const int id = new_action({EditKind::BM, src, static_cast<int>(len), delta, {}});
      for (std::size_t i = p; i < e; ++i) remove(i);
      insert(e, shaped->first, id, 0);
      return e + len;
    }

    // Far move: every line between the old and new place stays untouched so
    // the base diff keeps them and reports the block as deleted and added.
    const std::size_t min_gap = len + 3;
    std::vector<std::size_t> targets;
    std::size_t lo = p;
    while (lo > 0 && pristine(lo - 1)) --lo;
    for (std::size_t i = lo + (lo > 0 ? 1 : 0); i + min_gap <= p; ++i) targets.push_back(i);
    std::size_t hi = e;
    while (hi < list_.size() && pristine(hi)) ++hi;
    const std::size_t top = hi == list_.size() ? hi : hi - 1;
    for (std::size_t i = e + min_gap; i <= top; ++i) targets.push_back(i);
    if (targets.empty()) return std::nullopt;
    const std::size_t at = rng_.pick(targets);
    const int delta = pick_delta(raws, false);
    auto shaped = shape_block(raws, delta, true);
    if (!shaped || !no_slide(shaped->first, at, at)) return std::nullopt;
    Pending act{EditKind::BM, src, static_cast<int>(len), delta, shaped->second};
    const int id = new_action(std::move(act));
    for (std::size_t i = p; i < e; ++i) remove(i);
    insert(at, shaped->first, id, 0);
    return at < p ? e + len : at + len;
  }

  std::optional<std::size_t> do_bc(std::size_t p) {
    if (!neighbors_ok(p, p) || left_.size() < 2) return std::nullopt;
    for (int attempt = 0; attempt < 8; ++attempt) {
      const std::size_t len = 2 + static_cast<std::size_t>(rng_.geometric(0.5, 10));
      if (len > left_.size()) continue;
      const auto a = static_cast<std::size_t>(rng_.uniform(0, static_cast<int>(left_.size() - len)));
      std::vector<std::string> raws(left_.begin() + static_cast<std::ptrdiff_t>(a),
                                    left_.begin() + static_cast<std::ptrdiff_t>(a + len));
      if (is_blank(raws.front()) || is_blank(raws.back())) continue;
      if (effective(raws) < cfg_.min_bc || occurrences_in_left(raws) != 1) continue;
      const int first = static_cast<int>(a) + 1;
      const int last = static_cast<int>(a + len);
      auto near_source = [&](std::size_t i) {
        return i < list_.size() && list_[i].left_line >= first && list_[i].left_line <= last;
      };
      if ((p > 0 && near_source(p - 1)) || near_source(p)) continue;
      const int delta = pick_delta(raws, false);
      auto shaped = shape_block(raws, delta, true);
      if (!shaped || !no_slide(shaped->first, p, p)) continue;
      std::vector<int> src;
      for (int l = first; l <= last; ++l) src.push_back(l);
      const int id = new_action({EditKind::BC, src, static_cast<int>(len), delta, shaped->second});
      insert(p, shaped->first, id, 0);
      return p + len;
    }
    return std::nullopt;
  }

  std::optional<std::size_t> apply(EditKind k, std::size_t p) {
    switch (k) {
      case EditKind::LD: return do_ld(p);
      case EditKind::LA: return do_la(p);
      case EditKind::LU: return do_lu(p);
      case EditKind::LS: return do_ls(p);
      case EditKind::LM: return do_lm(p);
      case EditKind::BM: return do_bm(p);
      case EditKind::BC: return do_bc(p);
    }
    return std::nullopt;
  }

  std::optional<std::size_t> mutate_at(std::size_t p) {
    std::vector<EditKind> order = kinds_;
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[static_cast<std::size_t>(rng_.uniform(0, static_cast<int>(i) - 1))]);
    }
    if (opt_.favor_blocks && rng_.chance(0.5)) {
      std::stable_partition(order.begin(), order.end(), [](EditKind k) { return is_block_kind(k); });
    }
    for (EditKind k : order) {
      if (auto end = apply(k, p)) return end;
    }
    return std::nullopt;
  }

  GroundTruth finish() {
    GroundTruth gt;
    std::vector<std::vector<int>> dst(actions_.size());
    for (std::size_t i = 0; i < actions_.size(); ++i) {
      dst[i].assign(static_cast<std::size_t>(actions_[i].dst_count), 0);
    }
    for (const auto& e : list_) {
      if (e.removed) continue;
      gt.right.push_back(e.content);
      if (e.action >= 0) {
        dst[static_cast<std::size_t>(e.action)][static_cast<std::size_t>(e.slot)] =
            static_cast<int>(gt.right.size());
      }
    }
    gt.es.left_line_count = static_cast<int>(left_.size());
    gt.es.right_line_count = static_cast<int>(gt.right.size());
    for (std::size_t i = 0; i < actions_.size(); ++i) {
      const Pending& p = actions_[i];
      EditAction a;
      a.kind = p.kind;
      a.src = p.src;
      a.dst = dst[i];
      a.indent_delta = p.indent_delta;
      auto text_of = [&](int r) { return gt.right[static_cast<std::size_t>(r - 1)]; };
      if (a.kind == EditKind::LA || a.kind == EditKind::LU || a.kind == EditKind::LS) {
        for (int r : a.dst) a.text.push_back(text_of(r));
      }
      for (int slot : p.inner_slots) {
        const auto s = static_cast<std::size_t>(slot);
        a.inner_updates.emplace_back(a.src[s], a.dst[s]);
        a.text.push_back(text_of(a.dst[s]));
      }
      gt.es.actions.push_back(std::move(a));
    }
    std::stable_sort(gt.es.actions.begin(), gt.es.actions.end(),
                     [](const EditAction& x, const EditAction& y) {
                       const int kx = x.dst.empty() ? 0 : x.dst.front();
                       const int ky = y.dst.empty() ? 0 : y.dst.front();
                       return kx < ky;
                     });
    if (apply_es(left_, gt.es, cfg_.tab_size) != gt.right) {
      throw EsError("mutation ground truth does not replay to the mutated version");
    }
    return gt;
  }

  std::vector<std::string> left_;
  Rng rng_;
  const Config& cfg_;
  MutationOptions opt_;
  std::vector<Entry> list_;
  std::vector<Pending> actions_;
  std::unordered_map<std::string, int> counts_;
  std::unordered_set<std::string> left_set_;
  std::vector<std::string> left_bodies_;
  std::vector<CharProfile> left_profiles_;
  std::vector<EditKind> kinds_;
};

}  // namespace detail

// Randomly edits `left` top to bottom with the enabled kinds and returns the
// edited version together with the script that produces it. Equal inputs
// give identical results.
inline GroundTruth mutate(std::span<const std::string> left, std::uint64_t seed,
                          const Config& cfg = {}, const MutationOptions& opt = {}) {
  if (left.empty()) return {{}, {}};
  return detail::Mutator(left, seed, cfg, opt).run();
}

// Same kind, same source lines (except LA) and same destination lines
// (except LD). Indentation shifts and inner updates are not compared.
inline bool ea_equivalent(const EditAction& a, const EditAction& b) {
  if (a.kind != b.kind) return false;
  if (a.kind != EditKind::LA && a.src != b.src) return false;
  if (a.kind != EditKind::LD && a.dst != b.dst) return false;
  return true;
}

// For each truth action, whether an unused equivalent computed action exists.
inline std::vector<bool> match_truth(const EditScript& computed, const EditScript& truth) {
  std::vector<bool> used(computed.actions.size(), false);
  std::vector<bool> hit(truth.actions.size(), false);
  for (std::size_t t = 0; t < truth.actions.size(); ++t) {
    for (std::size_t c = 0; c < computed.actions.size(); ++c) {
      if (!used[c] && ea_equivalent(computed.actions[c], truth.actions[t])) {
        used[c] = true;
        hit[t] = true;
        break;
      }
    }
  }
  return hit;
}

inline double matching_rate(const EditScript& computed, const EditScript& truth) {
  if (truth.actions.empty()) return 1.0;
  const auto hit = match_truth(computed, truth);
  return static_cast<double>(std::count(hit.begin(), hit.end(), true)) /
         static_cast<double>(truth.actions.size());
}

inline bool es_equivalent(const EditScript& a, const EditScript& b) {
  return a.actions.size() == b.actions.size() && matching_rate(a, b) == 1.0 &&
         matching_rate(b, a) == 1.0;
}

}  // namespace bdiff

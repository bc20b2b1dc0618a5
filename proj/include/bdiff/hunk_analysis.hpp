#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "bdiff/base_diff.hpp"
#include "bdiff/core.hpp"
#include "bdiff/levenshtein.hpp"

namespace bdiff {

// An exact line split (one left line -> several right lines) or merge.
struct SplitMergeAction {
  EditKind kind = EditKind::LS;
  std::vector<int> src;
  std::vector<int> dst;

  bool operator==(const SplitMergeAction&) const = default;
};

struct LuCandidate {
  int src_line = 0;
  int dst_line = 0;
  double score = 0.0;
  int crossings = 0;

  bool operator==(const LuCandidate&) const = default;
};

namespace detail {

// Walks consecutive fragment lines starting at `start`, peeling each one off
// the front of `whole`. Blank fragments are skipped without counting as an
// attempt. Returns the last fragment line when the concatenation is exact.
inline std::optional<int> match_fragments(std::string_view whole, const Lines& fragments,
                                          int start, const std::unordered_set<int>& available,
                                          int max_attempts) {
  if (is_blank(whole)) return std::nullopt;
  if (is_blank(fragments[static_cast<std::size_t>(start - 1)].raw)) return std::nullopt;
  std::string_view rest = whole;
  int attempts = 0;
  for (int j = start; available.contains(j); ++j) {
    std::string_view piece = fragments[static_cast<std::size_t>(j - 1)].raw;
    if (is_blank(piece)) continue;
    if (++attempts > max_attempts) return std::nullopt;
    if (rest == piece) {
      if (j == start) return std::nullopt;  // identical lines are not a split
      return j;
    }
    if (!rest.starts_with(piece)) return std::nullopt;
    rest.remove_prefix(piece.size());
  }
  return std::nullopt;
}

// Shared driver for splits (whole = deleted, fragments = added) and merges.
inline std::vector<SplitMergeAction> detect_fragmented(const std::vector<int>& wholes,
                                                       const Lines& whole_side,
                                                       const std::vector<int>& pieces,
                                                       const Lines& piece_side, int max_attempts,
                                                       EditKind kind) {
  std::vector<SplitMergeAction> found;
  std::unordered_set<int> available(pieces.begin(), pieces.end());
  for (int w : wholes) {
    const std::string_view text = whole_side[static_cast<std::size_t>(w - 1)].raw;
    for (int start : pieces) {
      if (!available.contains(start)) continue;
      auto end = match_fragments(text, piece_side, start, available, max_attempts);
      if (!end) continue;
      std::vector<int> span;
      for (int j = start; j <= *end; ++j) {
        span.push_back(j);
        available.erase(j);
      }
      SplitMergeAction act;
      act.kind = kind;
      if (kind == EditKind::LS) {
        act.src = {w};
        act.dst = std::move(span);
      } else {
        act.src = std::move(span);
        act.dst = {w};
      }
      found.push_back(std::move(act));
      break;
    }
  }
  return found;
}

}  // namespace detail

// Exact splits inside a hunk: one deleted line equal to the concatenation of
// consecutive added lines.
inline std::vector<SplitMergeAction> detect_splits(const Hunk& hunk, const Lines& left,
                                                   const Lines& right, const Config& cfg) {
  if (hunk.deleted.empty() || hunk.added.size() < 2) return {};
  return detail::detect_fragmented(hunk.deleted, left, hunk.added, right,
                                   cfg.max_split_attempts, EditKind::LS);
}

// Mirror of detect_splits: consecutive deleted lines concatenating to one
// added line.
inline std::vector<SplitMergeAction> detect_merges(const Hunk& hunk, const Lines& left,
                                                   const Lines& right, const Config& cfg) {
  if (hunk.added.empty() || hunk.deleted.size() < 2) return {};
  return detail::detect_fragmented(hunk.added, right, hunk.deleted, left,
                                   cfg.max_split_attempts, EditKind::LM);
}

// Drops the lines consumed by `actions` from the hunk.
inline void remove_consumed(Hunk& hunk, const std::vector<SplitMergeAction>& actions) {
  std::unordered_set<int> src, dst;
  for (const auto& a : actions) {
    src.insert(a.src.begin(), a.src.end());
    dst.insert(a.dst.begin(), a.dst.end());
  }
  std::erase_if(hunk.deleted, [&](int l) { return src.contains(l); });
  std::erase_if(hunk.added, [&](int r) { return dst.contains(r); });
}

// Fraction of positionally aligned context lines (up to ctx_len above and
// below) that are equal after trimming trailing whitespace. Positions that
// fall outside either file are left out of the denominator.
inline double context_similarity(int l, int r, const Lines& left, const Lines& right,
                                 int ctx_len) {
  int total = 0, matched = 0;
  const int nl = static_cast<int>(left.size());
  const int nr = static_cast<int>(right.size());
  for (int k = 1; k <= ctx_len; ++k) {
    for (int sign : {-1, 1}) {
      const int ll = l + sign * k;
      const int rr = r + sign * k;
      if (ll < 1 || ll > nl || rr < 1 || rr > nr) continue;
      ++total;
      if (trim_right(left[static_cast<std::size_t>(ll - 1)].raw) ==
          trim_right(right[static_cast<std::size_t>(rr - 1)].raw)) {
        ++matched;
      }
    }
  }
  return total == 0 ? 1.0 : static_cast<double>(matched) / total;
}

// Combined line similarity: content (Levenshtein ratio of the raw lines)
// blended with context similarity by cfg.line_wgt.
inline double w_besti_line(int l, int r, const Lines& left, const Lines& right,
                           const Config& cfg) {
  const double content = levenshtein_ratio(left[static_cast<std::size_t>(l - 1)].raw,
                                           right[static_cast<std::size_t>(r - 1)].raw);
  const double context = context_similarity(l, r, left, right, cfg.ctx_len);
  return cfg.line_wgt * content + (1.0 - cfg.line_wgt) * context;
}

inline constexpr double kScoreEpsilon = 1e-12;

// All (deleted, added) pairs of the hunk scoring at least cfg.sim_thres.
inline std::vector<LuCandidate> candidate_lus(const Hunk& hunk, const Lines& left,
                                              const Lines& right, const Config& cfg) {
  std::vector<LuCandidate> out;
  if (hunk.deleted.empty() || hunk.added.empty()) return out;
  std::vector<CharProfile> lprof;
  lprof.reserve(hunk.deleted.size());
  for (int l : hunk.deleted) lprof.emplace_back(left[static_cast<std::size_t>(l - 1)].raw);
  for (int r : hunk.added) {
    const std::string& rtext = right[static_cast<std::size_t>(r - 1)].raw;
    const CharProfile rprof(rtext);
    for (std::size_t i = 0; i < hunk.deleted.size(); ++i) {
      const int l = hunk.deleted[i];
      const double context = context_similarity(l, r, left, right, cfg.ctx_len);
      const double ctx_part = (1.0 - cfg.line_wgt) * context;
      const double best = cfg.line_wgt * lprof[i].ratio_upper_bound(rprof) + ctx_part;
      if (best < cfg.sim_thres - 1e-9) continue;
      const double content =
          levenshtein_ratio(left[static_cast<std::size_t>(l - 1)].raw, rtext);
      const double score = cfg.line_wgt * content + ctx_part;
      if (score >= cfg.sim_thres - kScoreEpsilon) out.push_back({l, r, score, 0});
    }
  }
  return out;
}

constexpr bool crosses(const LuCandidate& a, const LuCandidate& b) {
  return static_cast<long long>(a.src_line - b.src_line) * (b.dst_line - a.dst_line) > 0;
}

// Repeatedly discards the candidate with the most crossings until none
// cross. Among equal counts the lowest score goes first, then the larger
// (src, dst). Shared-line conflicts are kept for the assignment step.
inline std::vector<LuCandidate> remove_max_intersections(std::vector<LuCandidate> cands) {
  const std::size_t n = cands.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    cands[i].crossings = 0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (crosses(cands[i], cands[j])) {
        adj[i].push_back(j);
        adj[j].push_back(i);
        ++cands[i].crossings;
        ++cands[j].crossings;
      }
    }
  }
  std::vector<char> alive(n, 1);
  for (;;) {
    std::size_t worst = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!alive[i] || cands[i].crossings == 0) continue;
      if (worst == n) {
        worst = i;
        continue;
      }
      const auto& a = cands[i];
      const auto& w = cands[worst];
      if (a.crossings != w.crossings) {
        if (a.crossings > w.crossings) worst = i;
      } else if (a.score != w.score) {
        if (a.score < w.score) worst = i;
      } else if (std::pair(a.src_line, a.dst_line) > std::pair(w.src_line, w.dst_line)) {
        worst = i;
      }
    }
    if (worst == n) break;
    alive[worst] = 0;
    for (std::size_t j : adj[worst]) {
      if (alive[j]) --cands[j].crossings;
    }
  }
  std::vector<LuCandidate> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (alive[i]) out.push_back(cands[i]);
  }
  return out;
}

}  // namespace bdiff

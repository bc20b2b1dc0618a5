#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "bdiff/core.hpp"
#include "bdiff/levenshtein.hpp"

namespace bdiff {

struct LineRange {
  int first = 0;
  int count = 0;

  int last() const { return first + count - 1; }
  bool empty() const { return count <= 0; }
  bool contains(int line) const { return line >= first && line <= last(); }
  bool overlaps(const LineRange& o) const {
    return !empty() && !o.empty() && first <= o.last() && o.first <= last();
  }
  std::vector<int> lines() const {
    std::vector<int> v;
    for (int i = 0; i < count; ++i) v.push_back(first + i);
    return v;
  }
  bool operator==(const LineRange&) const = default;
  auto operator<=>(const LineRange&) const = default;
};

// Splits an ascending list of line numbers into maximal contiguous ranges.
inline std::vector<LineRange> to_runs(std::span<const int> lines) {
  std::vector<LineRange> runs;
  for (int l : lines) {
    if (!runs.empty() && runs.back().last() + 1 == l) {
      ++runs.back().count;
    } else {
      runs.push_back({l, 1});
    }
  }
  return runs;
}

enum class MatchType : std::uint8_t { kNone, kExact, kUpdated };

// Outcome of comparing one left line with one right line inside a block.
// `delta` is the indentation shift; nullopt means the pair is blank on both
// sides and fits any shift.
struct LineMatch {
  MatchType type = MatchType::kNone;
  std::optional<int> delta;
  double sim = 0.0;

  bool matched() const { return type != MatchType::kNone; }
  bool operator==(const LineMatch&) const = default;
};

struct BlockCandidate {
  EditKind kind = EditKind::BM;
  LineRange src;
  LineRange dst;
  int indent_delta = 0;
  std::vector<std::pair<int, int>> inner_updates;
  int effective_len = 0;
  double weight = 0.0;

  bool operator==(const BlockCandidate&) const = default;
};

inline bool is_stop_word_line(const SourceLine& line, const Config& cfg) {
  std::string_view t = trim(line.body);
  return t.empty() || cfg.stop_words.contains(std::string(t));
}

// Lines that are neither blank nor made only of a stop word.
inline int effective_length(std::span<const SourceLine> lines, const Config& cfg) {
  return static_cast<int>(std::count_if(lines.begin(), lines.end(), [&](const SourceLine& l) {
    return !is_stop_word_line(l, cfg);
  }));
}

inline int effective_length(const Lines& version, LineRange range, const Config& cfg) {
  return effective_length(
      std::span<const SourceLine>(version).subspan(static_cast<std::size_t>(range.first - 1),
                                                   static_cast<std::size_t>(range.count)),
      cfg);
}

// A left/right pair matches when the bodies are identical (exact, provided
// re-indenting the left line by the shift reproduces the right line) or when
// the body Levenshtein ratio exceeds cfg.block_line_sim_thres (updated).
inline LineMatch line_block_match(const SourceLine& l, const SourceLine& r, const Config& cfg) {
  const bool lb = is_blank(l.raw);
  const bool rb = is_blank(r.raw);
  if (lb && rb) {
    return l.raw == r.raw ? LineMatch{MatchType::kExact, std::nullopt, 1.0}
                          : LineMatch{MatchType::kUpdated, std::nullopt, 1.0};
  }
  if (lb || rb) return {};
  const int delta = r.indent - l.indent;
  if (l.body == r.body) {
    if (reindent(l.raw, delta, cfg.tab_size) == r.raw) return {MatchType::kExact, delta, 1.0};
    return {MatchType::kUpdated, delta, 1.0};
  }
  const double sim = levenshtein_ratio(l.body, r.body);
  if (sim > cfg.block_line_sim_thres) return {MatchType::kUpdated, delta, sim};
  return {};
}

namespace detail {

// line_block_match with cached body hashes and character profiles, so the
// quadratic candidate scan rejects most pairs without a full distance.
class BlockLineMatcher {
 public:
  BlockLineMatcher(const Lines& left, const Lines& right, const Config& cfg)
      : left_(left), right_(right), cfg_(cfg) {
    prepare(left_, lhash_, lprof_);
    prepare(right_, rhash_, rprof_);
  }

  LineMatch operator()(int l, int r) const {
    const auto li = static_cast<std::size_t>(l - 1);
    const auto ri = static_cast<std::size_t>(r - 1);
    const SourceLine& a = left_[li];
    const SourceLine& b = right_[ri];
    if (lhash_[li] != rhash_[ri] || a.body != b.body) {
      if (is_blank(a.raw) || is_blank(b.raw)) return line_block_match(a, b, cfg_);
      if (lprof_[li].ratio_upper_bound(rprof_[ri]) <= cfg_.block_line_sim_thres) return {};
    }
    return line_block_match(a, b, cfg_);
  }

 private:
  static void prepare(const Lines& v, std::vector<std::size_t>& hashes,
                      std::vector<CharProfile>& profiles) {
    hashes.reserve(v.size());
    profiles.reserve(v.size());
    for (const auto& line : v) {
      hashes.push_back(std::hash<std::string>{}(line.body));
      profiles.emplace_back(line.body);
    }
  }

  const Lines& left_;
  const Lines& right_;
  const Config& cfg_;
  std::vector<std::size_t> lhash_, rhash_;
  std::vector<CharProfile> lprof_, rprof_;
};

// Maximal half-open intervals of `cells` in which every cell matches and all
// non-wildcard shifts agree. Wildcard cells between two shift groups belong
// to both neighbouring intervals.
inline std::vector<std::pair<std::size_t, std::size_t>> maximal_segments(
    std::span<const LineMatch> cells) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = cells.size();
  std::size_t i = 0;
  while (i < n) {
    if (!cells[i].matched()) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && cells[j].matched()) ++j;
    // Shift groups inside [i, j): (first position, last position).
    std::vector<std::pair<std::size_t, std::size_t>> groups;
    std::optional<int> current;
    for (std::size_t p = i; p < j; ++p) {
      if (!cells[p].delta) continue;
      if (!groups.empty() && current == cells[p].delta) {
        groups.back().second = p;
      } else {
        groups.emplace_back(p, p);
        current = cells[p].delta;
      }
    }
    if (groups.empty()) {
      out.emplace_back(i, j);
    } else {
      for (std::size_t g = 0; g < groups.size(); ++g) {
        const std::size_t b = g == 0 ? i : groups[g - 1].second + 1;
        const std::size_t e = g + 1 == groups.size() ? j : groups[g + 1].first;
        out.emplace_back(b, e);
      }
    }
    i = j;
  }
  return out;
}

inline void scan_block_candidates(EditKind kind, std::span<const LineRange> src_runs,
                                  std::span<const LineRange> dst_runs, const Lines& left,
                                  const Config& cfg,
                                  const BlockLineMatcher& match,
                                  std::vector<BlockCandidate>& out) {
  const int min_len = kind == EditKind::BM ? cfg.min_bm : cfg.min_bc;
  std::vector<LineMatch> cells;
  for (const LineRange& s : src_runs) {
    for (const LineRange& d : dst_runs) {
      // Diagonals start on the first row or the first column of the run pair.
      for (int off = -(d.count - 1); off < s.count; ++off) {
        const int s0 = s.first + std::max(off, 0);
        const int d0 = d.first + std::max(-off, 0);
        const int len = std::min(s.last() - s0, d.last() - d0) + 1;
        cells.clear();
        for (int k = 0; k < len; ++k) cells.push_back(match(s0 + k, d0 + k));
        for (auto [b, e] : maximal_segments(cells)) {
          BlockCandidate c;
          c.kind = kind;
          c.src = {s0 + static_cast<int>(b), static_cast<int>(e - b)};
          c.dst = {d0 + static_cast<int>(b), static_cast<int>(e - b)};
          c.effective_len = effective_length(left, c.src, cfg);
          if (c.effective_len < min_len) continue;
          for (std::size_t p = b; p < e; ++p) {
            if (cells[p].delta) c.indent_delta = *cells[p].delta;
            if (cells[p].type == MatchType::kUpdated) {
              c.inner_updates.emplace_back(s0 + static_cast<int>(p), d0 + static_cast<int>(p));
            }
          }
          // A copy whose every line was rewritten saves nothing over additions.
          if (kind == EditKind::BC &&
              static_cast<int>(c.inner_updates.size()) >= c.dst.count) {
            continue;
          }
          out.push_back(std::move(c));
        }
      }
    }
  }
}

inline void sort_candidates(std::vector<BlockCandidate>& v) {
  std::sort(v.begin(), v.end(), [](const BlockCandidate& a, const BlockCandidate& b) {
    return std::tie(a.src.first, a.dst.first, a.src.count) <
           std::tie(b.src.first, b.dst.first, b.src.count);
  });
}

}  // namespace detail

// Block moves: maximal aligned runs between deleted and added lines.
inline std::vector<BlockCandidate> find_bm_candidates(std::span<const LineRange> deleted_runs,
                                                      std::span<const LineRange> added_runs,
                                                      const Lines& left, const Lines& right,
                                                      const Config& cfg) {
  std::vector<BlockCandidate> out;
  detail::BlockLineMatcher match(left, right, cfg);
  detail::scan_block_candidates(EditKind::BM, deleted_runs, added_runs, left, cfg, match, out);
  detail::sort_candidates(out);
  return out;
}

// Block copies: any window of the left version against the added runs.
inline std::vector<BlockCandidate> find_bc_candidates(const Lines& left,
                                                      std::span<const LineRange> added_runs,
                                                      const Lines& right, const Config& cfg) {
  std::vector<BlockCandidate> out;
  if (left.empty()) return out;
  const LineRange whole{1, static_cast<int>(left.size())};
  detail::BlockLineMatcher match(left, right, cfg);
  detail::scan_block_candidates(EditKind::BC, std::span<const LineRange>(&whole, 1), added_runs,
                                left, cfg, match, out);
  detail::sort_candidates(out);
  return out;
}

}  // namespace bdiff

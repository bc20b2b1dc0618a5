#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "bdiff/assignment.hpp"
#include "bdiff/base_diff.hpp"
#include "bdiff/block_analysis.hpp"
#include "bdiff/core.hpp"
#include "bdiff/hunk_analysis.hpp"
#include "bdiff/levenshtein.hpp"

namespace bdiff {

using CandidateMapping = std::variant<LuCandidate, BlockCandidate>;

inline EditKind kind_of(const CandidateMapping& c) {
  if (const auto* b = std::get_if<BlockCandidate>(&c)) return b->kind;
  return EditKind::LU;
}

inline LineRange src_span(const CandidateMapping& c) {
  if (const auto* b = std::get_if<BlockCandidate>(&c)) return b->src;
  return {std::get<LuCandidate>(c).src_line, 1};
}

inline LineRange dst_span(const CandidateMapping& c) {
  if (const auto* b = std::get_if<BlockCandidate>(&c)) return b->dst;
  return {std::get<LuCandidate>(c).dst_line, 1};
}

// Position of every line in the base diff's edit sequence. Each hunk lists
// its deletions before its additions; an unchanged pair is a single step.
class DiffTimeline {
 public:
  DiffTimeline() = default;
  explicit DiffTimeline(const BaseDiffResult& r)
      : left_pos_(static_cast<std::size_t>(r.left_count) + 1, 0),
        right_pos_(static_cast<std::size_t>(r.right_count) + 1, 0) {
    std::size_t di = 0, ai = 0;
    auto push = [&](char op) {
      const std::size_t n = ops_.size();
      ops_.push_back(op);
      unchanged_.push_back((unchanged_.empty() ? 0 : unchanged_.back()) + (op == 'U'));
      added_.push_back((added_.empty() ? 0 : added_.back()) + (op == 'A'));
      deleted_.push_back((deleted_.empty() ? 0 : deleted_.back()) + (op == 'D'));
      return static_cast<int>(n);
    };
    auto drain = [&](int left_end, int right_end) {
      while (di < r.deleted.size() && r.deleted[di] < left_end) {
        left_pos_[static_cast<std::size_t>(r.deleted[di++])] = push('D');
      }
      while (ai < r.added.size() && r.added[ai] < right_end) {
        right_pos_[static_cast<std::size_t>(r.added[ai++])] = push('A');
      }
    };
    for (auto [l, rr] : r.unchanged_pairs) {
      drain(l, rr);
      const int p = push('U');
      left_pos_[static_cast<std::size_t>(l)] = p;
      right_pos_[static_cast<std::size_t>(rr)] = p;
    }
    drain(r.left_count + 1, r.right_count + 1);
  }

  int left_position(int line) const { return left_pos_[static_cast<std::size_t>(line)]; }
  int right_position(int line) const { return right_pos_[static_cast<std::size_t>(line)]; }

  // Right lines emitted strictly before step `pos`.
  int right_lines_before(int pos) const {
    if (pos <= 0) return 0;
    const auto p = static_cast<std::size_t>(pos - 1);
    return unchanged_[p] + added_[p];
  }

  // Unchanged pairs plus max(added, deleted) strictly between two steps.
  int distance(int pos_a, int pos_b) const {
    const int lo = std::min(pos_a, pos_b);
    const int hi = std::max(pos_a, pos_b);
    if (hi - lo <= 1) return 0;
    auto between = [&](const std::vector<int>& pref) {
      return pref[static_cast<std::size_t>(hi - 1)] - pref[static_cast<std::size_t>(lo)];
    };
    return between(unchanged_) + std::max(between(added_), between(deleted_));
  }

 private:
  std::vector<char> ops_;
  std::vector<int> unchanged_, added_, deleted_;
  std::vector<int> left_pos_, right_pos_;
};

// Number of edits a mapping stands for: 1 for a line update; 2 for a move
// and 3 for a copy, each plus one for an indentation change and plus one
// when inner line updates are attached.
inline int edit_times(const CandidateMapping& c) {
  const auto* b = std::get_if<BlockCandidate>(&c);
  if (b == nullptr) return 1;
  int n = b->kind == EditKind::BM ? 2 : 3;
  if (b->indent_delta != 0) ++n;
  if (!b->inner_updates.empty()) ++n;
  return n;
}

namespace detail {

inline std::string joined_context(const Lines& v, int from, int to) {
  std::string s;
  for (int i = from; i <= to; ++i) {
    s += v[static_cast<std::size_t>(i - 1)].raw;
    s += '\n';
  }
  return s;
}

}  // namespace detail

// Levenshtein ratio between the text surrounding two blocks: up to ctx_len
// lines above and below each, truncated symmetrically at file edges.
inline double block_ctx_sim(LineRange u, LineRange v, const Lines& left, const Lines& right,
                            const Config& cfg) {
  const int above = std::min({cfg.ctx_len, u.first - 1, v.first - 1});
  const int below = std::min({cfg.ctx_len, static_cast<int>(left.size()) - u.last(),
                              static_cast<int>(right.size()) - v.last()});
  std::string a, b;
  if (above > 0) {
    a += detail::joined_context(left, u.first - above, u.first - 1);
    b += detail::joined_context(right, v.first - above, v.first - 1);
  }
  if (below > 0) {
    a += detail::joined_context(left, u.last() + 1, u.last() + below);
    b += detail::joined_context(right, v.last() + 1, v.last() + below);
  }
  return levenshtein_ratio(a, b);
}

inline int block_dist(LineRange u, LineRange v, const DiffTimeline& timeline) {
  return timeline.distance(timeline.left_position(u.first), timeline.right_position(v.first));
}

inline double block_weight(const BlockCandidate& c, double ctx_sim, int dist) {
  return static_cast<double>(edit_times(c)) / c.effective_len + (1.0 - ctx_sim) / 10.0 +
         dist / 100.0;
}

inline double lu_weight(const LuCandidate& c) { return 1.0 + (1.0 - c.score) / 10.0; }

enum class Side : std::uint8_t { kLeft, kRight };

struct MappingVertex {
  Side side = Side::kLeft;
  LineRange span;
  std::vector<std::size_t> members;  // indices into the candidate list
  bool phantom = false;
};

struct WeightedEdge {
  int u = 0;  // left vertex
  int v = 0;  // right vertex
  double w = 0.0;
  std::size_t origin = 0;  // candidate index
};

struct BipartiteGraph {
  std::vector<MappingVertex> left;
  std::vector<MappingVertex> right;
  std::vector<WeightedEdge> edges;
};

// Everything the weight formulas need besides the candidate itself.
struct MatchingContext {
  const Lines& left;
  const Lines& right;
  const Config& cfg;
  DiffTimeline timeline;

  MatchingContext(const Lines& l, const Lines& r, const Config& c, const BaseDiffResult& base)
      : left(l), right(r), cfg(c), timeline(base) {}

  double weight(const CandidateMapping& c) const {
    if (const auto* lu = std::get_if<LuCandidate>(&c)) return lu_weight(*lu);
    const auto& b = std::get<BlockCandidate>(c);
    return block_weight(b, block_ctx_sim(b.src, b.dst, left, right, cfg),
                        block_dist(b.src, b.dst, timeline));
  }
};

inline double weight_of(const CandidateMapping& c) {
  if (const auto* lu = std::get_if<LuCandidate>(&c)) return lu_weight(*lu);
  return std::get<BlockCandidate>(c).weight;
}

namespace detail {

// Merges spans that share at least one line. Returns the merged spans and,
// for every input span, the index of the merged span containing it.
inline std::pair<std::vector<LineRange>, std::vector<int>> merge_spans(
    const std::vector<LineRange>& spans) {
  std::vector<std::size_t> order(spans.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(spans[a].first, spans[a].count, a) < std::tie(spans[b].first, spans[b].count, b);
  });
  std::vector<LineRange> merged;
  std::vector<int> owner(spans.size(), -1);
  for (std::size_t i : order) {
    const LineRange& s = spans[i];
    if (!merged.empty() && s.first <= merged.back().last()) {
      const int end = std::max(merged.back().last(), s.last());
      merged.back().count = end - merged.back().first + 1;
    } else {
      merged.push_back(s);
    }
    owner[i] = static_cast<int>(merged.size()) - 1;
  }
  return {std::move(merged), std::move(owner)};
}

}  // namespace detail

// Left vertices merge overlapping non-copy sources; every copy source is a
// vertex of its own. Right vertices merge all overlapping destinations.
inline BipartiteGraph build_bipartite(std::span<const CandidateMapping> cands) {
  BipartiteGraph g;
  std::vector<LineRange> lspans, rspans;
  std::vector<std::size_t> lmembers;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    rspans.push_back(dst_span(cands[i]));
    if (kind_of(cands[i]) != EditKind::BC) {
      lspans.push_back(src_span(cands[i]));
      lmembers.push_back(i);
    }
  }
  auto [lmerged, lowner] = detail::merge_spans(lspans);
  auto [rmerged, rowner] = detail::merge_spans(rspans);
  for (const auto& s : lmerged) g.left.push_back({Side::kLeft, s, {}, false});
  for (const auto& s : rmerged) g.right.push_back({Side::kRight, s, {}, false});

  std::vector<int> left_vertex(cands.size(), -1);
  for (std::size_t k = 0; k < lmembers.size(); ++k) {
    left_vertex[lmembers[k]] = lowner[k];
  }
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (left_vertex[i] < 0) {
      left_vertex[i] = static_cast<int>(g.left.size());
      g.left.push_back({Side::kLeft, src_span(cands[i]), {}, true});
    }
    const int u = left_vertex[i];
    const int v = rowner[i];
    g.left[static_cast<std::size_t>(u)].members.push_back(i);
    g.right[static_cast<std::size_t>(v)].members.push_back(i);
    g.edges.push_back({u, v, weight_of(cands[i]), i});
  }
  return g;
}

inline std::vector<std::size_t> km_min_matching(const BipartiteGraph& g) {
  std::vector<AssignmentEdge> edges;
  edges.reserve(g.edges.size());
  for (const auto& e : g.edges) edges.push_back({e.u, e.v, e.w});
  auto picked = km_min_matching(static_cast<int>(g.left.size()),
                                static_cast<int>(g.right.size()), edges);
  std::vector<std::size_t> out;
  out.reserve(picked.size());
  for (std::size_t i : picked) out.push_back(g.edges[i].origin);
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

constexpr int kind_rank(EditKind k) {
  return k == EditKind::BM ? 0 : (k == EditKind::BC ? 1 : 2);
}

// Deterministic candidate order: moves, then copies, then line updates, by
// source and destination position.
inline void sort_pool(std::vector<CandidateMapping>& pool) {
  std::stable_sort(pool.begin(), pool.end(), [](const CandidateMapping& a, const CandidateMapping& b) {
    const LineRange sa = src_span(a), sb = src_span(b);
    const LineRange da = dst_span(a), db = dst_span(b);
    return std::make_tuple(kind_rank(kind_of(a)), sa.first, da.first, sa.count) <
           std::make_tuple(kind_rank(kind_of(b)), sb.first, db.first, sb.count);
  });
}

// The parts of `c` that survive after removing taken lines, as fresh
// candidates with recomputed inner updates, length and weight.
inline void fragment(const CandidateMapping& c, const std::vector<char>& left_taken,
                     const std::vector<char>& right_taken, const MatchingContext& ctx,
                     std::vector<CandidateMapping>& out) {
  if (const auto* lu = std::get_if<LuCandidate>(&c)) {
    if (!left_taken[static_cast<std::size_t>(lu->src_line)] &&
        !right_taken[static_cast<std::size_t>(lu->dst_line)]) {
      out.push_back(*lu);
    }
    return;
  }
  const auto& b = std::get<BlockCandidate>(c);
  const int min_len = b.kind == EditKind::BM ? ctx.cfg.min_bm : ctx.cfg.min_bc;
  auto free_at = [&](int k) {
    if (right_taken[static_cast<std::size_t>(b.dst.first + k)]) return false;
    return b.kind == EditKind::BC || !left_taken[static_cast<std::size_t>(b.src.first + k)];
  };
  int k = 0;
  while (k < b.src.count) {
    if (!free_at(k)) {
      ++k;
      continue;
    }
    int e = k;
    while (e < b.src.count && free_at(e)) ++e;
    if (k == 0 && e == b.src.count) {
      out.push_back(b);
      return;
    }
    BlockCandidate piece;
    piece.kind = b.kind;
    piece.src = {b.src.first + k, e - k};
    piece.dst = {b.dst.first + k, e - k};
    piece.indent_delta = b.indent_delta;
    for (auto [s, d] : b.inner_updates) {
      if (piece.src.contains(s)) piece.inner_updates.emplace_back(s, d);
    }
    piece.effective_len = effective_length(ctx.left, piece.src, ctx.cfg);
    const bool copy_all_rewritten =
        piece.kind == EditKind::BC &&
        static_cast<int>(piece.inner_updates.size()) >= piece.dst.count;
    if (piece.effective_len >= min_len && !copy_all_rewritten) {
      piece.weight = ctx.weight(piece);
      out.push_back(std::move(piece));
    }
    k = e;
  }
}

}  // namespace detail

// Rounds of bipartite construction and minimum-weight matching. After each
// round the selected lines are removed from the remaining candidates, whose
// leftover pieces compete in the next round, until nothing is left.
inline std::vector<CandidateMapping> iterative_km(std::vector<CandidateMapping> pool,
                                                  const MatchingContext& ctx) {
  for (auto& c : pool) {
    if (auto* b = std::get_if<BlockCandidate>(&c)) b->weight = ctx.weight(*b);
  }
  std::vector<char> left_taken(ctx.left.size() + 1, 0);
  std::vector<char> right_taken(ctx.right.size() + 1, 0);
  std::vector<CandidateMapping> selected;
  while (!pool.empty()) {
    detail::sort_pool(pool);
    BipartiteGraph g = build_bipartite(pool);
    // Exactly equal weights resolve in pool order.
    for (auto& e : g.edges) e.w += static_cast<double>(e.origin) * 1e-12;
    const auto picked = km_min_matching(g);
    std::vector<char> is_picked(pool.size(), 0);
    for (std::size_t i : picked) {
      is_picked[i] = 1;
      const LineRange s = src_span(pool[i]);
      const LineRange d = dst_span(pool[i]);
      for (int line = d.first; line <= d.last(); ++line) {
        right_taken[static_cast<std::size_t>(line)] = 1;
      }
      if (kind_of(pool[i]) != EditKind::BC) {
        for (int line = s.first; line <= s.last(); ++line) {
          left_taken[static_cast<std::size_t>(line)] = 1;
        }
      }
      selected.push_back(pool[i]);
    }
    std::vector<CandidateMapping> next;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (!is_picked[i]) detail::fragment(pool[i], left_taken, right_taken, ctx, next);
    }
    pool = std::move(next);
  }
  return selected;
}

}  // namespace bdiff

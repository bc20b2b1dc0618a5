#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bdiff/core.hpp"

namespace bdiff {

// A maximal run of consecutive deleted and/or added lines. After split and
// merge detection removes lines, the lists may no longer be contiguous.
struct Hunk {
  std::vector<int> deleted;
  std::vector<int> added;

  bool operator==(const Hunk&) const = default;
};

struct BaseDiffResult {
  std::vector<int> deleted;                         // left line numbers, ascending
  std::vector<int> added;                           // right line numbers, ascending
  std::vector<std::pair<int, int>> unchanged_pairs;  // (left, right), monotone
  std::vector<Hunk> hunks;
  int left_count = 0;
  int right_count = 0;
};

namespace detail {

// Interns line texts so comparisons are integer compares.
inline std::pair<std::vector<int>, std::vector<int>> intern_lines(
    std::span<const std::string> left, std::span<const std::string> right) {
  std::unordered_map<std::string_view, int> ids;
  ids.reserve(left.size() + right.size());
  auto encode = [&](std::span<const std::string> lines) {
    std::vector<int> out;
    out.reserve(lines.size());
    for (const auto& l : lines) {
      auto [it, inserted] = ids.try_emplace(l, static_cast<int>(ids.size()));
      out.push_back(it->second);
    }
    return out;
  };
  auto a = encode(left);
  auto b = encode(right);
  return {std::move(a), std::move(b)};
}

// Linear-space Myers: recursively splits on the middle snake. Marks
// keep_a[i] / keep_b[j] for elements on the common subsequence.
class MyersSolver {
 public:
  MyersSolver(const std::vector<int>& a, const std::vector<int>& b,
              std::vector<char>& keep_a, std::vector<char>& keep_b)
      : a_(a), b_(b), keep_a_(keep_a), keep_b_(keep_b) {}

  void run(int a_lo, int a_hi, int b_lo, int b_hi) {
    while (a_lo < a_hi && b_lo < b_hi && a_[a_lo] == b_[b_lo]) {
      keep_a_[a_lo++] = 1;
      keep_b_[b_lo++] = 1;
    }
    while (a_lo < a_hi && b_lo < b_hi && a_[a_hi - 1] == b_[b_hi - 1]) {
      keep_a_[--a_hi] = 1;
      keep_b_[--b_hi] = 1;
    }
    const int n = a_hi - a_lo;
    const int m = b_hi - b_lo;
    if (n == 0 || m == 0) return;

    const int w = n - m;
    const int total = n + m;
    const int z = 2 * std::min(n, m) + 2;
    std::vector<int> fwd(static_cast<std::size_t>(z), 0);
    std::vector<int> bwd(static_cast<std::size_t>(z), 0);
    auto at = [z](std::vector<int>& v, int k) -> int& {
      return v[static_cast<std::size_t>(((k % z) + z) % z)];
    };

    const int half = total / 2 + (total % 2 != 0);
    for (int h = 0; h <= half; ++h) {
      for (int pass = 0; pass < 2; ++pass) {
        std::vector<int>& c = pass == 0 ? fwd : bwd;
        std::vector<int>& d = pass == 0 ? bwd : fwd;
        const int odd = pass == 0 ? 1 : 0;
        const int dir = pass == 0 ? 1 : -1;
        const int k_lo = -(h - 2 * std::max(0, h - m));
        const int k_hi = h - 2 * std::max(0, h - n);
        for (int k = k_lo; k <= k_hi; k += 2) {
          int x = (k == -h || (k != h && at(c, k - 1) < at(c, k + 1))) ? at(c, k + 1)
                                                                       : at(c, k - 1) + 1;
          int y = x - k;
          const int sx = x, sy = y;
          while (x < n && y < m &&
                 a_[a_lo + (1 - odd) * (n - 1) + dir * x] ==
                     b_[b_lo + (1 - odd) * (m - 1) + dir * y]) {
            ++x;
            ++y;
          }
          at(c, k) = x;
          const int kz = -(k - w);
          if (total % 2 == odd && kz >= -(h - odd) && kz <= h - odd && at(c, k) + at(d, kz) >= n) {
            int dcount, sx0, sy0, ex0, ey0;
            if (odd == 1) {
              dcount = 2 * h - 1;
              sx0 = sx; sy0 = sy; ex0 = x; ey0 = y;
            } else {
              dcount = 2 * h;
              sx0 = n - x; sy0 = m - y; ex0 = n - sx; ey0 = m - sy;
            }
            if (dcount > 1 || (sx0 != ex0 && sy0 != ey0)) {
              for (int i = 0; i < ex0 - sx0; ++i) {
                keep_a_[a_lo + sx0 + i] = 1;
                keep_b_[b_lo + sy0 + i] = 1;
              }
              run(a_lo, a_lo + sx0, b_lo, b_lo + sy0);
              run(a_lo + ex0, a_hi, b_lo + ey0, b_hi);
            } else if (m > n) {
              for (int i = 0; i < n; ++i) {
                keep_a_[a_lo + i] = 1;
                keep_b_[b_lo + i] = 1;
              }
            } else {
              for (int i = 0; i < m; ++i) {
                keep_a_[a_lo + i] = 1;
                keep_b_[b_lo + i] = 1;
              }
            }
            return;
          }
        }
      }
    }
  }

 private:
  const std::vector<int>& a_;
  const std::vector<int>& b_;
  std::vector<char>& keep_a_;
  std::vector<char>& keep_b_;
};

// Histogram strategy: anchor on the common line with the fewest occurrences
// in the left region, grow it into the longest equal run, recurse on both
// sides, and hand regions without a usable anchor to Myers.
class HistogramSolver {
 public:
  static constexpr int kMaxChain = 64;

  HistogramSolver(const std::vector<int>& a, const std::vector<int>& b,
                  std::vector<char>& keep_a, std::vector<char>& keep_b, int alphabet)
      : a_(a), b_(b), keep_a_(keep_a), keep_b_(keep_b),
        count_(static_cast<std::size_t>(alphabet), 0),
        positions_(static_cast<std::size_t>(alphabet)) {}

  void run(int a_lo, int a_hi, int b_lo, int b_hi) {
    while (a_lo < a_hi && b_lo < b_hi && a_[a_lo] == b_[b_lo]) {
      keep_a_[a_lo++] = 1;
      keep_b_[b_lo++] = 1;
    }
    while (a_lo < a_hi && b_lo < b_hi && a_[a_hi - 1] == b_[b_hi - 1]) {
      keep_a_[--a_hi] = 1;
      keep_b_[--b_hi] = 1;
    }
    if (a_lo == a_hi || b_lo == b_hi) return;
    if (a_hi - a_lo < 3 || b_hi - b_lo < 3) {
      MyersSolver(a_, b_, keep_a_, keep_b_).run(a_lo, a_hi, b_lo, b_hi);
      return;
    }

    for (int i = a_lo; i < a_hi; ++i) {
      auto id = static_cast<std::size_t>(a_[i]);
      ++count_[id];
      positions_[id].push_back(i);
    }

    int best_count = kMaxChain + 1;
    int best_len = 0, best_a = -1, best_b = -1;
    for (int j = b_lo; j < b_hi; ++j) {
      auto id = static_cast<std::size_t>(b_[j]);
      const int cnt = count_[id];
      if (cnt == 0 || cnt > best_count) continue;
      for (int i : positions_[id]) {
        int s_a = i, s_b = j;
        while (s_a > a_lo && s_b > b_lo && a_[s_a - 1] == b_[s_b - 1]) { --s_a; --s_b; }
        int e_a = i + 1, e_b = j + 1;
        while (e_a < a_hi && e_b < b_hi && a_[e_a] == b_[e_b]) { ++e_a; ++e_b; }
        const int len = e_a - s_a;
        const bool better =
            cnt < best_count ||
            (cnt == best_count &&
             (len > best_len || (len == best_len && s_a < best_a)));
        if (better) {
          best_count = cnt;
          best_len = len;
          best_a = s_a;
          best_b = s_b;
        }
      }
    }

    for (int i = a_lo; i < a_hi; ++i) {
      auto id = static_cast<std::size_t>(a_[i]);
      count_[id] = 0;
      positions_[id].clear();
    }

    if (best_a < 0) {
      MyersSolver(a_, b_, keep_a_, keep_b_).run(a_lo, a_hi, b_lo, b_hi);
      return;
    }
    for (int t = 0; t < best_len; ++t) {
      keep_a_[best_a + t] = 1;
      keep_b_[best_b + t] = 1;
    }
    run(a_lo, best_a, b_lo, best_b);
    run(best_a + best_len, a_hi, best_b + best_len, b_hi);
  }

 private:
  const std::vector<int>& a_;
  const std::vector<int>& b_;
  std::vector<char>& keep_a_;
  std::vector<char>& keep_b_;
  std::vector<int> count_;
  std::vector<std::vector<int>> positions_;
};

}  // namespace detail

// Groups deleted/added lines into maximal hunks. Two changes belong to the
// same hunk when no unchanged pair separates them.
inline std::vector<Hunk> build_hunks(const BaseDiffResult& r) {
  std::vector<Hunk> hunks;
  std::size_t di = 0, ai = 0;
  auto flush = [&](int left_end, int right_end) {
    Hunk h;
    while (di < r.deleted.size() && r.deleted[di] < left_end) h.deleted.push_back(r.deleted[di++]);
    while (ai < r.added.size() && r.added[ai] < right_end) h.added.push_back(r.added[ai++]);
    if (!h.deleted.empty() || !h.added.empty()) hunks.push_back(std::move(h));
  };
  for (auto [l, rr] : r.unchanged_pairs) flush(l, rr);
  flush(r.left_count + 1, r.right_count + 1);
  return hunks;
}

namespace detail {

inline BaseDiffResult result_from_keep(const std::vector<char>& keep_a,
                                       const std::vector<char>& keep_b) {
  BaseDiffResult r;
  r.left_count = static_cast<int>(keep_a.size());
  r.right_count = static_cast<int>(keep_b.size());
  std::size_t j = 0;
  for (std::size_t i = 0; i < keep_a.size(); ++i) {
    if (!keep_a[i]) {
      r.deleted.push_back(static_cast<int>(i) + 1);
      continue;
    }
    while (j < keep_b.size() && !keep_b[j]) ++j;
    r.unchanged_pairs.emplace_back(static_cast<int>(i) + 1, static_cast<int>(j) + 1);
    ++j;
  }
  for (std::size_t k = 0; k < keep_b.size(); ++k) {
    if (!keep_b[k]) r.added.push_back(static_cast<int>(k) + 1);
  }
  r.hunks = build_hunks(r);
  return r;
}

}  // namespace detail

// Minimal line diff (Myers, linear space). Lines compare by exact text.
inline BaseDiffResult myers_diff(std::span<const std::string> left,
                                 std::span<const std::string> right) {
  auto [a, b] = detail::intern_lines(left, right);
  std::vector<char> keep_a(a.size(), 0), keep_b(b.size(), 0);
  detail::MyersSolver(a, b, keep_a, keep_b)
      .run(0, static_cast<int>(a.size()), 0, static_cast<int>(b.size()));
  return detail::result_from_keep(keep_a, keep_b);
}

inline BaseDiffResult histogram_diff(std::span<const std::string> left,
                                     std::span<const std::string> right) {
  auto [a, b] = detail::intern_lines(left, right);
  int alphabet = 0;
  for (int v : a) alphabet = std::max(alphabet, v + 1);
  for (int v : b) alphabet = std::max(alphabet, v + 1);
  std::vector<char> keep_a(a.size(), 0), keep_b(b.size(), 0);
  detail::HistogramSolver(a, b, keep_a, keep_b, alphabet)
      .run(0, static_cast<int>(a.size()), 0, static_cast<int>(b.size()));
  return detail::result_from_keep(keep_a, keep_b);
}

inline BaseDiffResult base_diff(std::span<const std::string> left,
                                std::span<const std::string> right, BaseAlgorithm algo) {
  return algo == BaseAlgorithm::kMyers ? myers_diff(left, right) : histogram_diff(left, right);
}

}  // namespace bdiff

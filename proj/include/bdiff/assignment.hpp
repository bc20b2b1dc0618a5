#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

namespace bdiff {

struct AssignmentEdge {
  int left = 0;
  int right = 0;
  double weight = 0.0;
};

namespace detail {

// Hungarian method with potentials for a dense rows x cols cost matrix,
// rows <= cols. Returns the column assigned to each row.
inline std::vector<int> hungarian(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  if (n == 0) return {};
  const int m = static_cast<int>(cost[0].size());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<double> v(static_cast<std::size_t>(m) + 1, 0.0);
  std::vector<int> p(static_cast<std::size_t>(m) + 1, 0);
  std::vector<int> way(static_cast<std::size_t>(m) + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(static_cast<std::size_t>(m) + 1, inf);
    std::vector<char> used(static_cast<std::size_t>(m) + 1, 0);
    do {
      used[static_cast<std::size_t>(j0)] = 1;
      const int i0 = p[static_cast<std::size_t>(j0)];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= m; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        const double cur = cost[static_cast<std::size_t>(i0 - 1)][static_cast<std::size_t>(j - 1)] -
                           u[static_cast<std::size_t>(i0)] - v[static_cast<std::size_t>(j)];
        if (cur < minv[static_cast<std::size_t>(j)]) {
          minv[static_cast<std::size_t>(j)] = cur;
          way[static_cast<std::size_t>(j)] = j0;
        }
        if (minv[static_cast<std::size_t>(j)] < delta) {
          delta = minv[static_cast<std::size_t>(j)];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[static_cast<std::size_t>(j)]) {
          u[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])] += delta;
          v[static_cast<std::size_t>(j)] -= delta;
        } else {
          minv[static_cast<std::size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (p[static_cast<std::size_t>(j0)] != 0);
    do {
      const int j1 = way[static_cast<std::size_t>(j0)];
      p[static_cast<std::size_t>(j0)] = p[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(static_cast<std::size_t>(n), -1);
  for (int j = 1; j <= m; ++j) {
    if (p[static_cast<std::size_t>(j)] != 0) {
      row_to_col[static_cast<std::size_t>(p[static_cast<std::size_t>(j)] - 1)] = j - 1;
    }
  }
  return row_to_col;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

// Minimum-weight matching among the matchings of maximum cardinality.
//
// Each connected component is solved as a rectangular assignment in which
// missing pairs cost more than every real edge of the component combined, so
// the optimum uses as many real edges as possible and then the lightest
// ones. Padded assignments are dropped. Parallel edges keep the lightest,
// ties going to the lower index. Returns indices into `edges`, ascending.
inline std::vector<std::size_t> km_min_matching(int left_count, int right_count,
                                                std::span<const AssignmentEdge> edges) {
  const auto nl = static_cast<std::size_t>(left_count);
  const auto nr = static_cast<std::size_t>(right_count);
  detail::DisjointSets sets(nl + nr);
  for (const auto& e : edges) {
    sets.unite(static_cast<std::size_t>(e.left), nl + static_cast<std::size_t>(e.right));
  }

  std::vector<std::vector<std::size_t>> by_component(nl + nr);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    by_component[sets.find(static_cast<std::size_t>(edges[i].left))].push_back(i);
  }

  std::vector<std::size_t> selected;
  for (const auto& comp : by_component) {
    if (comp.empty()) continue;
    std::vector<int> lefts, rights;
    for (std::size_t i : comp) {
      lefts.push_back(edges[i].left);
      rights.push_back(edges[i].right);
    }
    std::sort(lefts.begin(), lefts.end());
    lefts.erase(std::unique(lefts.begin(), lefts.end()), lefts.end());
    std::sort(rights.begin(), rights.end());
    rights.erase(std::unique(rights.begin(), rights.end()), rights.end());
    auto index_of = [](const std::vector<int>& v, int x) {
      return static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), x) - v.begin());
    };

    const bool transpose = lefts.size() > rights.size();
    const std::size_t rows = transpose ? rights.size() : lefts.size();
    const std::size_t cols = transpose ? lefts.size() : rights.size();
    double total = 0.0;
    for (std::size_t i : comp) total += edges[i].weight;
    const double pad = total + 1.0;

    std::vector<std::vector<double>> cost(rows, std::vector<double>(cols, pad));
    std::vector<std::vector<std::size_t>> best(rows, std::vector<std::size_t>(cols, edges.size()));
    for (std::size_t i : comp) {
      std::size_t r = index_of(lefts, edges[i].left);
      std::size_t c = index_of(rights, edges[i].right);
      if (transpose) std::swap(r, c);
      std::size_t& slot = best[r][c];
      if (slot == edges.size() || edges[i].weight < edges[slot].weight) {
        slot = i;
        cost[r][c] = edges[i].weight;
      }
    }
    const auto assign = detail::hungarian(cost);
    for (std::size_t r = 0; r < rows; ++r) {
      const int c = assign[r];
      if (c < 0) continue;
      const std::size_t e = best[r][static_cast<std::size_t>(c)];
      if (e != edges.size()) selected.push_back(e);
    }
  }
  std::sort(selected.begin(), selected.end());
  return selected;
}

}  // namespace bdiff

#include "bdiff/assignment.hpp"

#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "fuzz.hpp"
#include "oracles.hpp"

namespace bdiff {
namespace {

double total(const std::vector<AssignmentEdge>& e, const std::vector<std::size_t>& picked) {
  double w = 0;
  for (std::size_t i : picked) w += e[i].weight;
  return w;
}

TEST(KmMinMatching, SingleEdge) {
  const std::vector<AssignmentEdge> e = {{0, 0, 3.0}};
  EXPECT_EQ(km_min_matching(1, 1, e), std::vector<std::size_t>{0});
}

TEST(KmMinMatching, TwoByTwo) {
  // [[1,2],[2,4]]: the anti-diagonal totals 4, the diagonal 5.
  const std::vector<AssignmentEdge> e = {{0, 0, 1}, {0, 1, 2}, {1, 0, 2}, {1, 1, 4}};
  const auto picked = km_min_matching(2, 2, e);
  EXPECT_EQ(picked, (std::vector<std::size_t>{1, 2}));
}

TEST(KmMinMatching, TwoLeftOneRight) {
  const std::vector<AssignmentEdge> e = {{0, 0, 5}, {1, 0, 2}};
  EXPECT_EQ(km_min_matching(2, 1, e), std::vector<std::size_t>{1});
}

TEST(KmMinMatching, CardinalityBeforeWeight) {
  // Taking the cheap edge alone leaves one vertex unmatched.
  const std::vector<AssignmentEdge> e = {{0, 0, 1}, {0, 1, 10}, {1, 0, 10}};
  EXPECT_EQ(km_min_matching(2, 2, e), (std::vector<std::size_t>{1, 2}));
}

TEST(KmMinMatching, EmptyAndIsolated) {
  EXPECT_TRUE(km_min_matching(0, 0, {}).empty());
  EXPECT_TRUE(km_min_matching(3, 2, {}).empty());
}

TEST(KmMinMatching, ParallelEdgesKeepLightest) {
  const std::vector<AssignmentEdge> e = {{0, 0, 3}, {0, 0, 1}, {0, 0, 1}};
  EXPECT_EQ(km_min_matching(1, 1, e), std::vector<std::size_t>{1});
}

// Dyadic weights keep every sum exact, so totals compare with ==.
std::vector<AssignmentEdge> random_graph(fuzz::Gen& g, int nl, int nr) {
  std::vector<AssignmentEdge> e;
  const double density = g.real(0.1, 1.0);
  for (int u = 0; u < nl; ++u) {
    for (int v = 0; v < nr; ++v) {
      const int copies = g.chance(0.1) ? 2 : 1;
      for (int c = 0; c < copies; ++c) {
        if (g.chance(density)) e.push_back({u, v, g.uniform(0, 64) / 8.0});
      }
    }
  }
  return e;
}

TEST(KmMinMatchingProperty, EqualsBruteForce) {
  fuzz::Gen g(3);
  for (int iter = 0; iter < 800; ++iter) {
    const int nl = g.uniform(0, 8), nr = g.uniform(0, 8);
    const auto e = random_graph(g, nl, nr);
    const auto picked = km_min_matching(nl, nr, e);
    std::set<int> ls, rs;
    for (std::size_t i : picked) {
      ASSERT_TRUE(ls.insert(e[i].left).second);
      ASSERT_TRUE(rs.insert(e[i].right).second);
    }
    const auto best = oracle::best_matching(nl, nr, e);
    ASSERT_EQ(static_cast<int>(picked.size()), best.cardinality) << "case " << iter;
    ASSERT_EQ(total(e, picked), best.weight) << "case " << iter;
  }
}

}  // namespace
}  // namespace bdiff

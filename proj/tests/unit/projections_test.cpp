#include "ffgeom/exceptional_constructions.hpp"
#include "ffgeom/projections.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace ffgeom;

namespace {

PointSet random_set(std::mt19937& rng, int n, std::int64_t p, std::size_t size) {
  std::uniform_int_distribution<std::int64_t> dist(0, p - 1);
  std::vector<Point> pts;
  for (std::size_t i = 0; i < size; ++i) {
    Point x(static_cast<std::size_t>(n));
    for (auto& c : x) c = dist(rng);
    pts.push_back(x);
  }
  return PointSet(pts, n, p);
}

}  // namespace

TEST(Projection, Examples) {
  for (const auto& v : all_linear(3, 1, 3)) {
    EXPECT_EQ(projection_size(PointSet::full_space(3, 3), v), 9u);
    EXPECT_EQ(projection_size(PointSet({{1, 2, 0}}, 3, 3), v), 1u);
  }
}

TEST(Projection, MatchesCosetOracle) {
  std::mt19937 rng(3);
  for (std::int64_t p : {2, 3, 5}) {
    for (int n = 2; n <= 3; ++n) {
      const auto a = random_set(rng, n, p, 6);
      for (int d = 0; d <= n; ++d) {
        for (const auto& v : all_linear(n, d, p)) {
          const auto v_points = oracle::span_points(oracle::basis_rows(v), n, p);
          EXPECT_EQ(projection_size(a, v), oracle::projection_count(a.points(), v_points, p));
          EXPECT_EQ(project_set(a, v).size(), projection_size(a, v));
        }
      }
    }
  }
}

TEST(Projection, SlicingIdentityAndMonotonicity) {
  std::mt19937 rng(5);
  for (std::int64_t p : {3, 5}) {
    const auto a = random_set(rng, 3, p, 10);
    const auto b = set_union(a, random_set(rng, 3, p, 10));
    ASSERT_TRUE(a.is_subset_of(b));
    for (const auto& v : all_linear(3, 1, p)) {
      const auto fibres = fibre_sizes(a, v);
      EXPECT_EQ(std::accumulate(fibres.begin(), fibres.end(), std::size_t{0}), a.size());
      EXPECT_LE(projection_size(a, v), projection_size(b, v));
    }
  }
}

TEST(Projection, DimensionFormulaMatchesPointCount) {
  for (std::int64_t p : {2, 3}) {
    for (int m = 0; m <= 3; ++m) {
      for (const auto& w : all_linear(3, m, p)) {
        std::vector<Point> pts;
        for (const auto& x : oracle::span_points(oracle::basis_rows(w), 3, p)) pts.push_back(x);
        const PointSet w_set(pts, 3, p);
        for (const auto& v : all_linear(3, 1, p)) {
          EXPECT_EQ(BigInt(projection_size(w_set, v)), ipow(p, static_cast<std::uint64_t>(projection_dimension(w, v))));
        }
      }
    }
  }
}

TEST(Projection, OberlinRectangleHorizontalCount) {
  const auto a = oberlin_rectangle(Rational(3, 2), Rational(1), 101);
  const auto horizontal = LinearSubspace::coordinate(2, {0}, 101);
  // Cosets of the x-axis are rows y = c, and |y| <= floor(101/5) = 20.
  EXPECT_LE(projection_size(a, horizontal), 2 * 20 + 1u);
}

TEST(Exceptional, Examples) {
  const PointSet one({{2, 3}}, 2, 5);
  EXPECT_EQ(exceptional_set(one, {Rational(1, 2), 1}).size(), 6u);
  EXPECT_TRUE(exceptional_set(PointSet::full_space(3, 3), {Rational(2), 2}).empty());
  EXPECT_TRUE(exceptional_set(PointSet::full_space(3, 3), {Rational(1), 1}).empty());
}

TEST(Exceptional, OberlinRectangleContainsTheHorizontalBand) {
  const auto a = oberlin_rectangle(Rational(3, 2), Rational(1), 101);
  const auto e = exceptional_set(a, {Rational(1), 1});
  for (std::int64_t kappa = -2; kappa <= 2; ++kappa) {
    const auto v = LinearSubspace::span({{1, kappa}}, 2, 101);
    EXPECT_TRUE(std::binary_search(e.begin(), e.end(), v)) << kappa;
  }
}

TEST(Exceptional, ThresholdIsStrictAndExact) {
  // 3 points on distinct cosets: exceptional at s iff 3 < 5^s.
  const PointSet a({{0, 0}, {0, 1}, {0, 2}}, 2, 5);
  const auto vertical = LinearSubspace::coordinate(2, {1}, 5);
  const auto horizontal = LinearSubspace::coordinate(2, {0}, 5);
  ASSERT_EQ(projection_size(a, horizontal), 3u);
  EXPECT_FALSE(is_exceptional(a, horizontal, Rational(2, 3)));  // 27 > 25
  EXPECT_TRUE(is_exceptional(a, horizontal, Rational(7, 10)));  // 3^10 < 5^7
  EXPECT_TRUE(is_exceptional(a, vertical, Rational(1, 100)));
}

TEST(Exceptional, MonotoneInThreshold) {
  std::mt19937 rng(9);
  const auto a = random_set(rng, 2, 7, 8);
  const auto lo = exceptional_set(a, {Rational(1, 2), 1});
  const auto hi = exceptional_set(a, {Rational(3, 4), 1});
  EXPECT_TRUE(std::includes(hi.begin(), hi.end(), lo.begin(), lo.end()));
}

TEST(SmallProjectionCount, Examples) {
  const auto line = LinearSubspace::coordinate(2, {0}, 3);
  EXPECT_EQ(count_small_projection_subspaces(line, 1, 0), 1);
  EXPECT_EQ(count_small_projection_subspaces(line, 1, 1), 4);
  EXPECT_EQ(count_small_projection_subspaces(LinearSubspace::coordinate(3, {0}, 3), 1, 1), 13);
}

TEST(SmallProjectionCount, MatchesPointProjection) {
  for (std::int64_t p : {2, 3}) {
    const auto w = LinearSubspace::coordinate(4, {0, 1}, p);
    std::vector<Point> pts;
    for (const auto& x : oracle::span_points(oracle::basis_rows(w), 4, p)) pts.push_back(x);
    const PointSet w_set(pts, 4, p);
    for (int l = 0; l <= 2; ++l) {
      std::size_t brute = 0;
      for (const auto& v : all_linear(4, 2, p)) {
        if (compare_count_to_power(projection_size(w_set, v), p, Rational(l)) != std::strong_ordering::greater) ++brute;
      }
      EXPECT_EQ(count_small_projection_subspaces(w, 2, l), brute);
    }
  }
}

TEST(SmallProjectionCount, RejectsBadHypotheses) {
  const auto w = LinearSubspace::coordinate(3, {0, 1, 2}, 2);
  EXPECT_THROW(count_small_projection_subspaces(w, 1, 0), DomainError);
  EXPECT_THROW(count_small_projection_subspaces(w, 3, 0), DomainError);
}

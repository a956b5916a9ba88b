#include "ffgeom/indices.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace ffgeom;

namespace {

using R = Rational;

/// Case ladder evaluated by search instead of ceilings, with case (c) in
/// its d + m + planar-min form.
R furstenberg_by_search(const R& s, const R& t, int n, int k) {
  if (s.numerator() == 0) return std::max(R(0), t - R(k * (n - k)));
  int d = 0;
  while (s - R(d) > R(1)) ++d;
  const R sigma = s - R(d);
  const R base((k - d - 1) * (n - k));
  if (t <= base) return s;
  int m = 0;
  while (t - base - R((d + 2) * m) > R(d + 2)) ++m;
  const R tau = t - base - R((d + 2) * m);
  if (tau <= R(2)) return R(d + m) + oracle::f21(sigma, tau);
  return s + R(m + 1);
}

ExactExponent m21(const R& a, const R& s) {
  if (s > std::min(a, R(1))) return ExactExponent(R(1));
  if (s <= a - R(1)) return ExactExponent::negative_infinity();
  return ExactExponent(std::max(R(0), R(2) * s - a));
}

}  // namespace

TEST(CanonicalSplit, Examples) {
  EXPECT_EQ(canonical_split(R(3, 2)).integer, 1);
  EXPECT_EQ(canonical_split(R(3, 2)).fraction, R(1, 2));
  EXPECT_EQ(canonical_split(R(2)).integer, 1);
  EXPECT_EQ(canonical_split(R(2)).fraction, R(1));
  EXPECT_EQ(canonical_split(R(1, 3)).integer, 0);
  EXPECT_EQ(canonical_split(R(1, 3)).fraction, R(1, 3));
  EXPECT_THROW(canonical_split(R(0)), DomainError);
}

TEST(Furstenberg, Examples) {
  EXPECT_EQ(furstenberg_index(R(1, 2), R(1), 2, 1), ExactExponent(R(5, 4)));
  EXPECT_EQ(furstenberg_index(R(0), R(2), 2, 1), ExactExponent(R(1)));
  const auto p = FurstenbergParams::make(R(2), R(3), 3, 2);
  EXPECT_EQ(p.branch, FurstenbergCase::d);
  EXPECT_EQ(p.d, 1);
  EXPECT_EQ(p.m, 0);
  EXPECT_EQ(p.tau, R(3));
  EXPECT_EQ(p.index(), ExactExponent(R(3)));
}

TEST(Furstenberg, RejectsInadmissible) {
  EXPECT_THROW(furstenberg_index(R(2), R(1), 3, 1), DomainError);
  EXPECT_THROW(furstenberg_index(R(1), R(5), 2, 1), DomainError);
  EXPECT_THROW(furstenberg_index(R(1), R(1), 2, 2), DomainError);
  EXPECT_THROW(furstenberg_index(R(-1, 2), R(1), 2, 1), DomainError);
}

TEST(Furstenberg, PlanarClosedForm) {
  for (int i = 1; i <= 12; ++i) {
    for (int j = 0; j <= 24; ++j) {
      const R s(i, 12);
      const R t(j, 12);
      EXPECT_EQ(furstenberg_index(s, t, 2, 1), ExactExponent(oracle::f21(s, t))) << to_string(s) << " " << to_string(t);
    }
  }
}

TEST(Furstenberg, MatchesSearchOracle) {
  for (int n = 2; n <= 5; ++n) {
    for (int k = 1; k < n; ++k) {
      for (int i = 0; i <= 6 * k; ++i) {
        for (int j = 0; j <= 6 * (k + 1) * (n - k); ++j) {
          const R s(i, 6);
          const R t(j, 6);
          EXPECT_EQ(furstenberg_index(s, t, n, k), ExactExponent(furstenberg_by_search(s, t, n, k)))
              << to_string(s) << " " << to_string(t) << " " << n << " " << k;
        }
      }
    }
  }
}

TEST(Furstenberg, FullSpace) {
  for (int n = 2; n <= 5; ++n) {
    for (int k = 1; k < n; ++k) EXPECT_EQ(furstenberg_index(R(k), R((k + 1) * (n - k)), n, k), ExactExponent(R(n)));
  }
}

TEST(Marstrand, Examples) {
  EXPECT_EQ(marstrand_index(R(1), R(3, 4), 2, 1), ExactExponent(R(1, 2)));
  EXPECT_TRUE(marstrand_index(R(3), R(1), 3, 1).is_negative_infinity());
  const auto m = MarstrandParams::make(R(5, 2), R(3, 2), 4, 2);
  EXPECT_EQ(m.m, 2);
  EXPECT_EQ(m.beta, R(1, 2));
  EXPECT_EQ(m.l, 1);
  EXPECT_EQ(m.gamma, R(1, 2));
  EXPECT_EQ(m.type, MarstrandType::type3);
  EXPECT_EQ(m.index(), ExactExponent(R(5, 2)));
}

TEST(Marstrand, Classification) {
  EXPECT_EQ(classify_marstrand_type(R(1, 2), R(2), 3, 2), MarstrandType::type1);
  EXPECT_EQ(classify_marstrand_type(R(1), R(3, 4), 2, 1), MarstrandType::type3);
  EXPECT_EQ(classify_marstrand_type(R(5, 2), R(7, 4), 4, 2), MarstrandType::type2);
  EXPECT_EQ(marstrand_index(R(5, 2), R(7, 4), 4, 2), ExactExponent(R(3)));
}

TEST(Marstrand, ExactlyOneTypeHolds) {
  for (int n = 2; n <= 5; ++n) {
    for (int k = 1; k < n; ++k) {
      for (int i = 1; i <= 6 * n; ++i) {
        for (int j = 1; j <= 6 * n; ++j) {
          const auto c = marstrand_type_conditions(R(i, 6), R(j, 6), n, k);
          EXPECT_EQ(std::count(c.begin(), c.end(), true), 1) << i << "/6 " << j << "/6 " << n << " " << k;
        }
      }
    }
  }
}

TEST(Marstrand, PlanarDisplay) {
  for (int i = 1; i <= 24; ++i) {
    for (int j = 1; j <= 12; ++j) {
      const R a(i, 12);
      const R s(j, 12);
      EXPECT_EQ(marstrand_index(a, s, 2, 1), m21(a, s)) << to_string(a) << " " << to_string(s);
    }
  }
}

TEST(Marstrand, RejectsOutOfRange) {
  EXPECT_THROW(marstrand_index(R(0), R(1), 2, 1), DomainError);
  EXPECT_THROW(marstrand_index(R(3), R(1), 2, 1), DomainError);
  EXPECT_THROW(marstrand_index(R(1), R(0), 2, 1), DomainError);
}

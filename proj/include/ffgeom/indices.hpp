#pragma once

#include "ffgeom/exact.hpp"

#include <array>
#include <cstdint>

namespace ffgeom {

/// x = integer + fraction with fraction in (0, 1]. Integers map to (x-1, 1).
struct CanonicalSplit {
  std::int64_t integer;
  Rational fraction;
};

/// Throws DomainError for x <= 0.
CanonicalSplit canonical_split(const Rational& x);

/// 1 <= k < n, 0 <= s <= k, 0 <= t <= (k+1)(n-k).
bool furstenberg_admissible(const Rational& s, const Rational& t, int n, int k);

enum class FurstenbergCase { a, b, c, d };

char to_char(FurstenbergCase c);

/// (s, t; n, k) together with the parts of its canonical expression.
/// d and sigma are meaningful when s > 0; m and tau only in cases c and d.
struct FurstenbergParams {
  Rational s;
  Rational t;
  int n = 0;
  int k = 0;
  FurstenbergCase branch = FurstenbergCase::a;
  std::int64_t d = 0;
  Rational sigma;
  std::int64_t m = 0;
  Rational tau;

  /// Throws DomainError unless admissible.
  static FurstenbergParams make(const Rational& s, const Rational& t, int n, int k);

  ExactExponent index() const;
};

ExactExponent furstenberg_index(const Rational& s, const Rational& t, int n, int k);

enum class MarstrandType { type1 = 1, type2 = 2, type3 = 3, type4 = 4 };

/// Which of the four defining conditions hold for (a, s; n, k), indexed by type - 1.
/// For a valid input exactly one entry is true.
std::array<bool, 4> marstrand_type_conditions(const Rational& a, const Rational& s, int n, int k);

/// Throws DomainError unless a in (0, n], s > 0, 1 <= k < n, or if the
/// conditions do not single out one type.
MarstrandType classify_marstrand_type(const Rational& a, const Rational& s, int n, int k);

struct MarstrandParams {
  Rational a;
  Rational s;
  int n = 0;
  int k = 0;
  std::int64_t m = 0;
  Rational beta;
  std::int64_t l = 0;
  Rational gamma;
  MarstrandType type = MarstrandType::type1;

  static MarstrandParams make(const Rational& a, const Rational& s, int n, int k);

  ExactExponent index() const;
};

ExactExponent marstrand_index(const Rational& a, const Rational& s, int n, int k);

}  // namespace ffgeom

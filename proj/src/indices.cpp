#include "ffgeom/indices.hpp"

#include <algorithm>

namespace ffgeom {

namespace {

Rational rmin(const Rational& x, const Rational& y) { return x < y ? x : y; }
Rational rmax(const Rational& x, const Rational& y) { return x < y ? y : x; }

std::string describe(const Rational& x, const Rational& y, int n, int k) {
  return "(" + to_string(x) + ", " + to_string(y) + "; " + std::to_string(n) + ", " +
         std::to_string(k) + ")";
}

void require_marstrand_domain(const Rational& a, const Rational& s, int n, int k) {
  if (k < 1 || k >= n) throw DomainError("need 1 <= k < n, got " + describe(a, s, n, k));
  if (a <= 0 || a > n) throw DomainError("need a in (0, n], got " + describe(a, s, n, k));
  if (s <= 0) throw DomainError("need s > 0, got " + describe(a, s, n, k));
}

}  // namespace

CanonicalSplit canonical_split(const Rational& x) {
  if (x <= 0) throw DomainError("canonical split needs x > 0, got " + to_string(x));
  const std::int64_t d = ceil(x) - 1;
  return {d, x - d};
}

bool furstenberg_admissible(const Rational& s, const Rational& t, int n, int k) {
  return 1 <= k && k < n && s >= 0 && s <= k && t >= 0 && t <= (k + 1) * (n - k);
}

char to_char(FurstenbergCase c) {
  switch (c) {
    case FurstenbergCase::a: return 'a';
    case FurstenbergCase::b: return 'b';
    case FurstenbergCase::c: return 'c';
    case FurstenbergCase::d: return 'd';
  }
  return '?';
}

FurstenbergParams FurstenbergParams::make(const Rational& s, const Rational& t, int n, int k) {
  if (!furstenberg_admissible(s, t, n, k)) {
    throw DomainError("inadmissible Furstenberg tuple " + describe(s, t, n, k));
  }
  FurstenbergParams f;
  f.s = s;
  f.t = t;
  f.n = n;
  f.k = k;
  if (s.numerator() == 0) {
    f.branch = FurstenbergCase::a;
    return f;
  }
  const auto [d, sigma] = canonical_split(s);
  f.d = d;
  f.sigma = sigma;
  const Rational floor_t((k - d - 1) * (n - k));
  if (t <= floor_t) {
    f.branch = FurstenbergCase::b;
    return f;
  }
  const Rational rest = t - floor_t;
  f.m = ceil(rest / (d + 2)) - 1;
  f.tau = rest - (d + 2) * f.m;
  f.branch = f.tau <= 2 ? FurstenbergCase::c : FurstenbergCase::d;
  return f;
}

ExactExponent FurstenbergParams::index() const {
  switch (branch) {
    case FurstenbergCase::a: return rmax(Rational(0), t - k * (n - k));
    case FurstenbergCase::b: return s;
    case FurstenbergCase::c:
      return s + m + rmin(rmin(tau, (sigma + tau) / 2), Rational(1));
    case FurstenbergCase::d: return s + m + 1;
  }
  throw DomainError("unreachable Furstenberg case");
}

ExactExponent furstenberg_index(const Rational& s, const Rational& t, int n, int k) {
  return FurstenbergParams::make(s, t, n, k).index();
}

std::array<bool, 4> marstrand_type_conditions(const Rational& a, const Rational& s, int n, int k) {
  require_marstrand_domain(a, s, n, k);
  const auto [m, beta] = canonical_split(a);
  const auto [l, gamma] = canonical_split(s);
  const bool below = s <= rmin(a, Rational(k));
  return {
      s > rmin(a, Rational(k)),
      below && l + 1 <= m && m <= n + l - k && gamma > beta,
      below && l <= m && m <= n + l - k - 1 && gamma <= beta,
      s <= a - (n - k),
  };
}

MarstrandType classify_marstrand_type(const Rational& a, const Rational& s, int n, int k) {
  const auto holds = marstrand_type_conditions(a, s, n, k);
  if (std::count(holds.begin(), holds.end(), true) != 1) {
    throw DomainError("type conditions are not exclusive at " + describe(a, s, n, k));
  }
  return static_cast<MarstrandType>(std::find(holds.begin(), holds.end(), true) - holds.begin() + 1);
}

MarstrandParams MarstrandParams::make(const Rational& a, const Rational& s, int n, int k) {
  MarstrandParams mp;
  mp.type = classify_marstrand_type(a, s, n, k);
  mp.a = a;
  mp.s = s;
  mp.n = n;
  mp.k = k;
  const auto split_a = canonical_split(a);
  const auto split_s = canonical_split(s);
  mp.m = split_a.integer;
  mp.beta = split_a.fraction;
  mp.l = split_s.integer;
  mp.gamma = split_s.fraction;
  return mp;
}

ExactExponent MarstrandParams::index() const {
  const Rational full(k * (n - k));
  switch (type) {
    case MarstrandType::type1: return full;
    case MarstrandType::type2:
      return full - Rational((m - l) * (k - l)) + rmax(2 * gamma - (beta + 1), Rational(0));
    case MarstrandType::type3:
      return full - Rational((m + 1 - l) * (k - l)) + rmax(2 * gamma - beta, Rational(0));
    case MarstrandType::type4: return ExactExponent::negative_infinity();
  }
  throw DomainError("unreachable Marstrand type");
}

ExactExponent marstrand_index(const Rational& a, const Rational& s, int n, int k) {
  return MarstrandParams::make(a, s, n, k).index();
}

}  // namespace ffgeom

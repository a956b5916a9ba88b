#pragma once

// Slow, independent re-derivations used to check the library.

#include "ffgeom/exact.hpp"
#include "ffgeom/flag_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

namespace oracle {

inline ffgeom::BigInt power(ffgeom::BigInt base, std::uint64_t e) {
  ffgeom::BigInt out = 1;
  for (std::uint64_t i = 0; i < e; ++i) out *= base;
  return out;
}

using Vec = std::vector<std::int64_t>;
using Mat = std::vector<Vec>;

inline std::int64_t md(std::int64_t x, std::int64_t p) { return ((x % p) + p) % p; }

inline std::int64_t inv(std::int64_t x, std::int64_t p) {
  for (std::int64_t y = 1; y < p; ++y) {
    if (md(x * y, p) == 1) return y;
  }
  return 0;
}

/// Textbook Gauss-Jordan on nested vectors.
inline Mat rref(Mat a, std::int64_t p, std::vector<int>* pivots = nullptr) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t i = r;
    while (i < rows && md(a[i][c], p) == 0) ++i;
    if (i == rows) continue;
    std::swap(a[i], a[r]);
    const auto iv = inv(md(a[r][c], p), p);
    for (auto& x : a[r]) x = md(x * iv, p);
    for (std::size_t j = 0; j < rows; ++j) {
      if (j == r) continue;
      const auto f = md(a[j][c], p);
      for (std::size_t q = 0; q < cols; ++q) a[j][q] = md(a[j][q] - f * a[r][q], p);
    }
    if (pivots) pivots->push_back(static_cast<int>(c));
    ++r;
  }
  for (auto& row : a) {
    for (auto& x : row) x = md(x, p);
  }
  return a;
}

/// All points of F_p^n, lexicographic.
inline std::vector<Vec> points(int n, std::int64_t p) {
  std::vector<Vec> out;
  Vec x(static_cast<std::size_t>(n), 0);
  while (true) {
    out.push_back(x);
    int i = n - 1;
    while (i >= 0 && ++x[static_cast<std::size_t>(i)] == p) x[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return out;
  }
}

/// The point set spanned by `gens`, by summing all combinations.
inline std::set<Vec> span_points(const std::vector<Vec>& gens, int n, std::int64_t p) {
  std::set<Vec> out;
  for (const auto& coeffs : points(static_cast<int>(gens.size()), p)) {
    Vec x(static_cast<std::size_t>(n), 0);
    for (std::size_t g = 0; g < gens.size(); ++g) {
      for (int j = 0; j < n; ++j) x[static_cast<std::size_t>(j)] = md(x[static_cast<std::size_t>(j)] + coeffs[g] * gens[g][static_cast<std::size_t>(j)], p);
    }
    out.insert(x);
  }
  return out;
}

/// Number of k-subspaces: count distinct spans of all k-tuples of points.
inline std::size_t brute_grassmannian(int n, int k, std::int64_t p) {
  const auto pts = points(n, p);
  std::set<std::set<Vec>> seen;
  std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
  const auto total = static_cast<std::size_t>(std::pow(static_cast<double>(pts.size()), k));
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    std::vector<Vec> gens;
    for (int i = 0; i < k; ++i) {
      gens.push_back(pts[c % pts.size()]);
      c /= pts.size();
    }
    auto s = span_points(gens, n, p);
    if (s.size() == static_cast<std::size_t>(std::pow(static_cast<double>(p), k))) seen.insert(std::move(s));
  }
  return seen.size();
}

/// Product formula prod_{i<k} (p^(n-i) - 1) / (p^(k-i) - 1).
inline ffgeom::BigInt gaussian_product(int n, int k, std::int64_t p) {
  if (k < 0 || k > n) return 0;
  ffgeom::BigInt num = 1;
  ffgeom::BigInt den = 1;
  for (int i = 0; i < k; ++i) {
    num *= power(p, static_cast<std::uint64_t>(n - i)) - 1;
    den *= power(p, static_cast<std::uint64_t>(k - i)) - 1;
  }
  return num / den;
}

/// Smallest N >= 0 with N^den >= p^num, by doubling then bisection.
inline ffgeom::BigInt ceil_power(std::int64_t p, const ffgeom::Rational& e) {
  const auto target = power(p, static_cast<std::uint64_t>(e.numerator()));
  const auto den = static_cast<std::uint64_t>(e.denominator());
  ffgeom::BigInt lo = 0;  // lo^den < target, or lo = 0
  ffgeom::BigInt hi = 1;
  while (power(hi, den) < target) {
    lo = hi;
    hi *= 2;
  }
  if (lo == 0 && target <= 0) return 0;
  while (hi - lo > 1) {
    const ffgeom::BigInt mid = (lo + hi) / 2;
    if (power(mid, den) < target) lo = mid; else hi = mid;
  }
  return hi;
}

/// Number of cosets of V met by A, with coset equality tested by membership
/// of the difference in the point set of V.
inline std::size_t projection_count(const std::vector<Vec>& a, const std::set<Vec>& v_points, std::int64_t p) {
  std::vector<Vec> reps;
  for (const auto& x : a) {
    bool fresh = true;
    for (const auto& r : reps) {
      Vec diff(x.size());
      for (std::size_t j = 0; j < x.size(); ++j) diff[j] = md(x[j] - r[j], p);
      if (v_points.count(diff)) {
        fresh = false;
        break;
      }
    }
    if (fresh) reps.push_back(x);
  }
  return reps.size();
}

inline std::vector<Vec> basis_rows(const ffgeom::LinearSubspace& v) {
  std::vector<Vec> out;
  for (ffgeom::Index i = 0; i < v.basis().rows(); ++i) out.push_back(v.basis().row(i));
  return out;
}

/// The planar closed form min{s + t, 3s/2 + t/2, s + 1}.
inline ffgeom::Rational f21(const ffgeom::Rational& s, const ffgeom::Rational& t) {
  using R = ffgeom::Rational;
  return std::min({s + t, R(3, 2) * s + R(1, 2) * t, s + 1});
}

}  // namespace oracle

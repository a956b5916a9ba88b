#include "ffgeom/exceptional_constructions.hpp"

#include "ffgeom/parallel.hpp"

#include <algorithm>

namespace ffgeom {

namespace {

std::int64_t small_count(const BigInt& x) {
  return static_cast<std::int64_t>(x);
}

std::vector<int> coord_range(int first, int count) {
  std::vector<int> out;
  for (int i = 0; i < count; ++i) out.push_back(first + i);
  return out;
}

/// Points of X x F_p^m x 0, with X in coordinates 0..x_dim-1.
PointSet product_with_cube(const std::vector<Point>& x_part, int m, int n, std::int64_t p) {
  std::vector<Point> out;
  for (const auto& x : x_part) {
    for (const auto& z : all_points(m, p)) {
      Point y(static_cast<std::size_t>(n), 0);
      std::copy(x.begin(), x.end(), y.begin());
      std::copy(z.begin(), z.end(), y.begin() + static_cast<std::ptrdiff_t>(x.size()));
      out.push_back(std::move(y));
    }
  }
  return PointSet(std::move(out), n, p);
}

/// Lexicographic prefix of `pool` with ceil(p^a) points.
PointSet prefix(const std::vector<Point>& pool, const Rational& a, int n, std::int64_t p) {
  const BigInt want = ceil_rational_power(p, a);
  if (want > BigInt(pool.size())) throw DegenerateScaleError("ceil(p^a) exceeds the available points");
  const auto count = static_cast<std::size_t>(small_count(want));
  return PointSet(std::vector<Point>(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(count)), n, p);
}

ExceptionalWitness start(const Rational& a, const Rational& s, int n, int k, std::int64_t p,
                         std::string branch, std::string containment) {
  ExceptionalWitness w;
  w.params = MarstrandParams::make(a, s, n, k);
  w.p = p;
  w.branch = std::move(branch);
  w.containment = std::move(containment);
  w.set_a = PointSet(n, p);
  return w;
}

void certify(ExceptionalWitness& w, unsigned jobs) {
  w.exceptional = exceptional_set(w.set_a, {w.params.s, w.params.k}, jobs);
  w.certified_count = w.exceptional.size();
}

/// {V in G(n-k, F_p^n) : #pi*_V(F) <= p^l} for the coordinate subspace F.
std::vector<LinearSubspace> small_projection_directions(const LinearSubspace& f, int k, std::int64_t l,
                                                        unsigned jobs) {
  const int n = f.ambient_dim();
  auto all = all_linear(n, n - k, f.modulus());
  const auto keep = parallel_map(
      all.size(), [&](std::size_t i) { return projection_dimension(f, all[i]) <= l; }, jobs);
  std::vector<LinearSubspace> out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (keep[i]) out.push_back(std::move(all[i]));
  }
  return out;
}

/// A = rectangle(beta', gamma) x F_p^m' x 0 with the families U_theta.
void build_product_with_rectangle(ExceptionalWitness& w, std::int64_t m_prime, const Rational& beta_prime,
                                  unsigned jobs) {
  const int n = w.params.n;
  const int k = w.params.k;
  const auto l = w.params.l;
  const auto p = w.p;
  const int m = static_cast<int>(m_prime);
  if (m + 2 > n) throw DomainError("rectangle times F_p^m does not fit in F_p^n");

  const PointSet plane = oberlin_rectangle(beta_prime, w.params.gamma, p);
  w.set_a = product_with_cube(plane.points(), m, n, p);
  const auto thetas = exceptional_set(plane, {w.params.gamma, 1}, jobs);

  const auto cube = LinearSubspace::coordinate(n, coord_range(2, m), p);
  const auto slab = LinearSubspace::coordinate(n, coord_range(0, m + 2), p);
  std::vector<LinearSubspace> theta_sums;
  for (const auto& theta : thetas) {
    std::vector<Point> rows;
    Point r(static_cast<std::size_t>(n), 0);
    r[0] = theta.basis()(0, 0);
    r[1] = theta.basis()(0, 1);
    rows.push_back(r);
    for (int i = 0; i < m; ++i) {
      Point e(static_cast<std::size_t>(n), 0);
      e[static_cast<std::size_t>(2 + i)] = 1;
      rows.push_back(e);
    }
    theta_sums.push_back(LinearSubspace::span(rows, n, p));
  }

  const auto all = all_linear(n, n - k, p);
  // For each V: index of the theta families it belongs to.
  const auto hits = parallel_map(
      all.size(),
      [&](std::size_t i) {
        std::vector<std::size_t> out;
        const auto& v = all[i];
        if (projection_dimension(cube, v) != l || projection_dimension(slab, v) != l + 1) return out;
        for (std::size_t j = 0; j < theta_sums.size(); ++j) {
          if (projection_dimension(theta_sums[j], v) <= l) out.push_back(j);
        }
        return out;
      },
      jobs);
  w.theta_families.assign(thetas.size(), {});
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (auto j : hits[i]) w.theta_families[j].push_back(all[i]);
  }
  for (const auto& family : w.theta_families) {
    w.claimed_directions.insert(w.claimed_directions.end(), family.begin(), family.end());
  }
  std::sort(w.claimed_directions.begin(), w.claimed_directions.end());
}

}  // namespace

PointSet oberlin_rectangle(const Rational& a, const Rational& s, std::int64_t p) {
  require_prime(p);
  const Rational fifth(1, 5);
  const auto x_bound = small_count(floor_scaled_power(p, a - s, fifth));
  const auto y_bound = small_count(floor_scaled_power(p, s, fifth));
  std::vector<Point> pts;
  for (std::int64_t x = -x_bound; x <= x_bound; ++x) {
    for (std::int64_t y = -y_bound; y <= y_bound; ++y) pts.push_back({x, y});
  }
  return PointSet(std::move(pts), 2, p);
}

ExceptionalWitness construct_oberlin_rectangle(const Rational& a, const Rational& s, std::int64_t p,
                                               unsigned jobs) {
  require_prime(p);
  if (a <= 0 || a > 2) throw DomainError("rectangle witness needs a in (0, 2]");
  if (s <= a / 2 || s > std::min(Rational(1), a)) {
    throw DomainError("rectangle witness needs s in (a/2, min{1, a}]");
  }
  const Rational fifth(1, 5);
  if (floor_scaled_power(p, s, fifth) < 1) {
    throw DegenerateScaleError("floor(p^s/5) = 0 at p = " + std::to_string(p));
  }
  auto w = start(a, s, 2, 1, p, "oberlin", "E_s(A;2,1) contains the lines y = kx with |k| <= p^(2s-a)/5");
  w.set_a = oberlin_rectangle(a, s, p);
  const auto slopes = small_count(floor_scaled_power(p, 2 * s - a, fifth));
  for (std::int64_t kappa = -slopes; kappa <= slopes; ++kappa) {
    w.claimed_directions.push_back(LinearSubspace::span({Point{1, kappa}}, 2, p));
  }
  std::sort(w.claimed_directions.begin(), w.claimed_directions.end());
  certify(w, jobs);
  return w;
}

ExceptionalWitness construct_marstrand_witness(const Rational& a, const Rational& s, int n, int k,
                                               std::int64_t p, unsigned jobs) {
  require_prime(p);
  const auto mp = MarstrandParams::make(a, s, n, k);
  const auto m = mp.m;
  const auto l = mp.l;
  const auto& beta = mp.beta;
  const auto& gamma = mp.gamma;

  switch (mp.type) {
    case MarstrandType::type1: {
      auto w = start(a, s, n, k, p, "type1", "E_s(A;n,k) is all of G(n-k, F_p^n)");
      w.set_a = prefix(all_points(n, p), a, n, p);
      const BigInt bound = std::min(BigInt(w.set_a.size()), ipow(BigInt(p), static_cast<std::uint64_t>(k)));
      if (compare_count_to_power(bound, p, s) != std::strong_ordering::less) {
        throw DegenerateScaleError("ceil(p^a) is not below p^s at p = " + std::to_string(p));
      }
      w.claimed_directions = all_linear(n, n - k, p);
      certify(w, jobs);
      return w;
    }

    case MarstrandType::type4: {
      auto w = start(a, s, n, k, p, "type4", "E_s(A;n,k) is empty for every A with #A >= p^a");
      w.set_a = prefix(all_points(n, p), a, n, p);
      certify(w, jobs);
      return w;
    }

    case MarstrandType::type2: {
      if (2 * gamma > beta + 1) {
        auto w = start(a, s, n, k, p, "type2_high_gamma",
                       "a = (m-1) + (beta+1); the disjoint union of U_theta lies in E_s(A;n,k)");
        build_product_with_rectangle(w, m - 1, beta + 1, jobs);
        certify(w, jobs);
        return w;
      }
      auto w = start(a, s, n, k, p, "type2", "E_s(A;n,k) contains {V : #pi*_V(F_p^m) <= p^l}");
      const auto interval = small_count(ceil_rational_power(p, beta));
      if (compare_count_to_power(BigInt(interval), p, gamma) != std::strong_ordering::less) {
        throw DegenerateScaleError("ceil(p^beta) = " + std::to_string(interval) + " is not below p^gamma");
      }
      std::vector<Point> ys;
      for (std::int64_t i = 0; i < interval; ++i) {
        Point y(static_cast<std::size_t>(m + 1), 0);
        for (const auto& z : all_points(static_cast<int>(m), p)) {
          std::copy(z.begin(), z.end(), y.begin());
          y[static_cast<std::size_t>(m)] = i;
          Point full(static_cast<std::size_t>(n), 0);
          std::copy(y.begin(), y.end(), full.begin());
          ys.push_back(std::move(full));
        }
      }
      w.set_a = PointSet(std::move(ys), n, p);
      w.claimed_directions = small_projection_directions(
          LinearSubspace::coordinate(n, coord_range(0, static_cast<int>(m)), p), k, l, jobs);
      certify(w, jobs);
      return w;
    }

    case MarstrandType::type3: {
      if (2 * gamma > beta) {
        auto w = start(a, s, n, k, p, "type3", "the disjoint union of U_theta lies in E_s(A;n,k)");
        build_product_with_rectangle(w, m, beta, jobs);
        certify(w, jobs);
        return w;
      }
      auto w = start(a, s, n, k, p, "type3_low_gamma",
                     "A inside F_p^(m+1) x 0, so E_s(A;n,k) contains {V : #pi*_V(F_p^(m+1)) <= p^l}");
      const int width = static_cast<int>(m) + 1;
      std::vector<Point> pool;
      for (const auto& z : all_points(width, p)) {
        Point full(static_cast<std::size_t>(n), 0);
        std::copy(z.begin(), z.end(), full.begin());
        pool.push_back(std::move(full));
      }
      w.set_a = prefix(pool, a, n, p);
      w.claimed_directions =
          small_projection_directions(LinearSubspace::coordinate(n, coord_range(0, width), p), k, l, jobs);
      certify(w, jobs);
      return w;
    }
  }
  throw DomainError("unreachable Marstrand type");
}

bool certify_lower_bound(const ExceptionalWitness& w, const Rational& c) {
  const ExactExponent target = w.params.index();
  if (target.is_negative_infinity()) return true;
  return compare_scaled(w.certified_count, c, w.p, target.value()) != std::strong_ordering::less;
}

bool claims_sound(const ExceptionalWitness& w) {
  return std::all_of(w.claimed_directions.begin(), w.claimed_directions.end(), [&](const LinearSubspace& v) {
    return std::binary_search(w.exceptional.begin(), w.exceptional.end(), v) &&
           is_exceptional(w.set_a, v, w.params.s);
  });
}

bool theta_families_disjoint(const ExceptionalWitness& w) {
  std::vector<LinearSubspace> all;
  for (const auto& family : w.theta_families) all.insert(all.end(), family.begin(), family.end());
  std::sort(all.begin(), all.end());
  return std::adjacent_find(all.begin(), all.end()) == all.end();
}

void write_witness(std::ostream& out, const ExceptionalWitness& w) {
  out << "p=" << w.p << " n=" << w.params.n << " k=" << w.params.k << " a=" << to_string(w.params.a)
      << " s=" << to_string(w.params.s) << " type=" << static_cast<int>(w.params.type)
      << " branch=" << w.branch << '\n';
  out << "A:";
  for (const auto& x : w.set_a) {
    out << ' ';
    for (std::size_t i = 0; i < x.size(); ++i) out << (i ? "," : "") << x[i];
  }
  out << "\nclaimed:";
  for (const auto& v : w.claimed_directions) out << ' ' << v.to_string();
  out << "\ncertified_count=" << w.certified_count << '\n';
}

}  // namespace ffgeom

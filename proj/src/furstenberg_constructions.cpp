#include "ffgeom/furstenberg_constructions.hpp"

#include "ffgeom/parallel.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace ffgeom {

namespace {

std::size_t as_count(const BigInt& x, const char* what) {
  if (x > BigInt(std::numeric_limits<std::int64_t>::max())) {
    throw DegenerateScaleError(std::string(what) + " is too large to enumerate");
  }
  return static_cast<std::size_t>(static_cast<std::int64_t>(x));
}

std::size_t ceil_count(std::int64_t p, const Rational& e, const char* what,
                       const Rational& coef = Rational(1)) {
  return as_count(ceil_scaled_power(p, e, coef), what);
}

Point unit(int n, int i) {
  Point e(static_cast<std::size_t>(n), 0);
  e[static_cast<std::size_t>(i)] = 1;
  return e;
}

/// Places x into coordinates offset.. of the zero vector of length n.
Point embed(const Point& x, int n, int offset) {
  Point out(static_cast<std::size_t>(n), 0);
  std::copy(x.begin(), x.end(), out.begin() + offset);
  return out;
}

std::vector<Point> rows_of(const LinearSubspace& v) {
  std::vector<Point> rows;
  for (Index i = 0; i < v.basis().rows(); ++i) rows.push_back(v.basis().row(i));
  return rows;
}

void finish(FurstenbergFamily& f) {
  std::vector<Point> all;
  for (const auto& member : f.members) all.insert(all.end(), member.y_set.begin(), member.y_set.end());
  f.union_set = PointSet(std::move(all), f.params.n, f.p);
}

FurstenbergFamily empty_family(const FurstenbergParams& params, std::int64_t p, Rational lambda,
                               std::string branch) {
  FurstenbergFamily f;
  f.params = params;
  f.p = p;
  f.lambda = lambda;
  f.branch = std::move(branch);
  f.union_set = PointSet(params.n, p);
  return f;
}

std::vector<LinearSubspace> non_horizontal_directions(std::int64_t p) {
  const auto horizontal = LinearSubspace::coordinate(2, {0}, p);
  auto lines = all_linear(2, 1, p);
  lines.erase(std::remove(lines.begin(), lines.end(), horizontal), lines.end());
  return lines;
}

/// First `count` lines of the plane, in enumeration order, that are not horizontal.
std::vector<AffineFlat> first_non_horizontal_lines(std::size_t count, std::int64_t p) {
  const auto horizontal = LinearSubspace::coordinate(2, {0}, p);
  std::vector<AffineFlat> out;
  AffineFlatStream stream(2, 1, p);
  while (out.size() < count) {
    auto line = stream.next();
    if (!line) throw DegenerateScaleError("not enough non-horizontal lines");
    if (line->direction() != horizontal) out.push_back(std::move(*line));
  }
  return out;
}

/// Members with Y(L) = L ∩ (F_p x {1..rows}).
void add_row_band(FurstenbergFamily& f, const std::vector<AffineFlat>& lines, std::size_t rows) {
  const auto p = f.p;
  for (const auto& line : lines) {
    std::vector<Point> ys;
    for (auto& x : points_of(line)) {
      const Residue y = x[1] == 0 ? p : x[1];
      if (y >= 1 && static_cast<std::size_t>(y) <= rows) ys.push_back(std::move(x));
    }
    f.members.push_back({line, PointSet(std::move(ys), 2, p)});
  }
}

/// Adds, for every affine map phi from U to the coordinates
/// [offset, offset + target_dim), the graph W of phi with Y(W) = graph over
/// y_u, lifted to k-planes transverse to H = first n-k+d+1 coordinates.
void add_graphs_and_lifts(FurstenbergFamily& f, const AffineFlat& u, const std::vector<Point>& y_u,
                          int offset, int target_dim, int d) {
  const int n = f.params.n;
  const int k = f.params.k;
  const auto p = f.p;
  const int u_dim = u.dim();
  const int h_dim = n - k + d + 1;
  const auto& u_pivots = u.direction().pivots();
  const auto u_rows = rows_of(u.direction());

  std::vector<int> h_coords(static_cast<std::size_t>(h_dim));
  for (int c = 0; c < h_dim; ++c) h_coords[static_cast<std::size_t>(c)] = c;
  const AffineFlat h_flat(LinearSubspace::coordinate(n, h_coords, p), Point(static_cast<std::size_t>(n), 0));
  const int lift_count = k - d - 1;

  // Map digits: target_dim constants, then a target_dim x u_dim matrix row-major.
  for (const auto& digits : all_points(target_dim * (u_dim + 1), p)) {
    auto coeff = [&](int i, int j) { return digits[static_cast<std::size_t>(target_dim + i * u_dim + j)]; };

    std::vector<Point> w_rows = u_rows;
    for (int j = 0; j < u_dim; ++j) {
      for (int i = 0; i < target_dim; ++i) w_rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(offset + i)] = coeff(i, j);
    }
    Point w_base = u.base();
    for (int i = 0; i < target_dim; ++i) w_base[static_cast<std::size_t>(offset + i)] = digits[static_cast<std::size_t>(i)];

    std::vector<Point> y_w;
    y_w.reserve(y_u.size());
    for (const auto& y : y_u) {
      Point z = y;
      for (int i = 0; i < target_dim; ++i) {
        Residue value = digits[static_cast<std::size_t>(i)];
        for (int j = 0; j < u_dim; ++j) value += coeff(i, j) * y[static_cast<std::size_t>(u_pivots[static_cast<std::size_t>(j)])];
        z[static_cast<std::size_t>(offset + i)] = mod(value, p);
      }
      y_w.push_back(std::move(z));
    }
    const PointSet y_set(std::move(y_w), n, p);
    const auto w_dir = LinearSubspace::span(w_rows, n, p);

    // Complement of dir(W) inside H: the non-pivot coordinates of H.
    std::vector<int> complement;
    for (int c = 0; c < h_dim; ++c) {
      if (std::find(w_dir.pivots().begin(), w_dir.pivots().end(), c) == w_dir.pivots().end()) complement.push_back(c);
    }
    for (const auto& h : all_points(lift_count * static_cast<int>(complement.size()), p)) {
      std::vector<Point> rows = rows_of(w_dir);
      for (int j = 0; j < lift_count; ++j) {
        Point e = unit(n, h_dim + j);
        for (std::size_t c = 0; c < complement.size(); ++c) {
          e[static_cast<std::size_t>(complement[c])] = h[static_cast<std::size_t>(j) * complement.size() + c];
        }
        rows.push_back(std::move(e));
      }
      AffineFlat v(LinearSubspace::span(rows, n, p), w_base);
      const auto rel = relate(v, h_flat);
      if (!rel.transverse || rel.intersection_dim != d + 1) {
        throw std::logic_error("lifted plane is not transverse to H: " + v.to_string());
      }
      f.members.push_back({std::move(v), y_set});
    }
  }
}

FurstenbergFamily case_a(const FurstenbergParams& fp, std::int64_t p) {
  const int n = fp.n;
  const int k = fp.k;
  const Rational full(k * (n - k));
  if (fp.t <= full) {
    auto f = empty_family(fp, p, Rational(1), "a_origin");
    const std::size_t count = ceil_count(p, fp.t, "ceil(p^t)");
    const PointSet origin({Point(static_cast<std::size_t>(n), 0)}, n, p);
    LinearSubspaceStream stream(n, k, p);
    while (f.members.size() < count) {
      auto v = stream.next();
      if (!v) throw DegenerateScaleError("fewer than ceil(p^t) subspaces");
      f.members.push_back({AffineFlat(std::move(*v), Point(static_cast<std::size_t>(n), 0)), origin});
    }
    finish(f);
    return f;
  }

  auto f = empty_family(fp, p, Rational(1), "a_points");
  const std::size_t count = ceil_count(p, fp.t - full, "ceil(p^(t-k(n-k)))");
  const auto base_points = all_points(n - k, p);
  if (count > base_points.size()) throw DegenerateScaleError("ceil(p^(t-k(n-k))) exceeds p^(n-k)");
  for (std::size_t i = 0; i < count; ++i) {
    const Point x = embed(base_points[i], n, 0);
    const PointSet y({x}, n, p);
    for (const auto& h : all_points(k * (n - k), p)) {
      std::vector<Point> rows;
      for (int j = 0; j < k; ++j) {
        Point e = unit(n, n - k + j);
        for (int c = 0; c < n - k; ++c) e[static_cast<std::size_t>(c)] = h[static_cast<std::size_t>(j * (n - k) + c)];
        rows.push_back(std::move(e));
      }
      f.members.push_back({AffineFlat(LinearSubspace::span(rows, n, p), x), y});
    }
  }
  finish(f);
  return f;
}

FurstenbergFamily case_b(const FurstenbergParams& fp, std::int64_t p) {
  const int n = fp.n;
  const int k = fp.k;
  const int d = static_cast<int>(fp.d);
  auto f = empty_family(fp, p, Rational(1), "b");

  const std::size_t y_count = ceil_count(p, fp.s, "ceil(p^s)");
  const auto low = all_points(d + 1, p);
  if (y_count > low.size()) throw DegenerateScaleError("ceil(p^s) exceeds p^(d+1)");
  std::vector<Point> ys;
  for (std::size_t i = 0; i < y_count; ++i) ys.push_back(embed(low[i], n, 0));
  const PointSet y(std::move(ys), n, p);

  const std::size_t count = ceil_count(p, fp.t, "ceil(p^t)");
  LinearSubspaceStream stream(n - d - 1, k - d - 1, p);
  while (f.members.size() < count) {
    auto extra = stream.next();
    if (!extra) throw DegenerateScaleError("fewer than ceil(p^t) subspaces in case b");
    std::vector<Point> rows;
    for (int i = 0; i <= d; ++i) rows.push_back(unit(n, i));
    for (const auto& r : rows_of(*extra)) rows.push_back(embed(r, n, d + 1));
    f.members.push_back({AffineFlat(LinearSubspace::span(rows, n, p), Point(static_cast<std::size_t>(n), 0)), y});
  }
  finish(f);
  return f;
}

FurstenbergFamily case_c(const FurstenbergParams& fp, std::int64_t p) {
  const int n = fp.n;
  const int d = static_cast<int>(fp.d);
  const int m = static_cast<int>(fp.m);
  const auto seed = construct_2d(fp.sigma, fp.tau, p);
  auto f = empty_family(fp, p, seed.lambda, "c/" + seed.branch);

  const auto tail = all_points(d, p);
  for (const auto& member : seed.members) {
    std::vector<Point> rows;
    for (const auto& r : rows_of(member.flat.direction())) rows.push_back(embed(r, n, 0));
    for (int i = 0; i < d; ++i) rows.push_back(unit(n, 2 + i));
    const AffineFlat u(LinearSubspace::span(rows, n, p), embed(member.flat.base(), n, 0));

    std::vector<Point> y_u;
    for (const auto& y : member.y_set) {
      for (const auto& z : tail) {
        Point x = embed(y, n, 0);
        std::copy(z.begin(), z.end(), x.begin() + 2);
        y_u.push_back(std::move(x));
      }
    }
    add_graphs_and_lifts(f, u, y_u, d + 2, m, d);
  }
  finish(f);
  return f;
}

FurstenbergFamily case_d(const FurstenbergParams& fp, std::int64_t p) {
  const int n = fp.n;
  const int d = static_cast<int>(fp.d);
  const int m = static_cast<int>(fp.m);
  auto f = empty_family(fp, p, Rational(1), "d");

  const std::size_t first = ceil_count(p, fp.sigma, "ceil(p^sigma)");
  std::vector<int> coords;
  for (int i = 0; i <= d; ++i) coords.push_back(i);
  const AffineFlat u(LinearSubspace::coordinate(n, coords, p), Point(static_cast<std::size_t>(n), 0));

  std::vector<Point> y_u;
  for (const auto& z : all_points(d + 1, p)) {
    if (static_cast<std::size_t>(z[0]) < first) y_u.push_back(embed(z, n, 0));
  }
  add_graphs_and_lifts(f, u, y_u, d + 1, m + 1, d);
  finish(f);
  return f;
}

}  // namespace

FurstenbergFamily construct_2d(const Rational& s, const Rational& t, std::int64_t p) {
  require_prime(p);
  if (s < 0 || s > 1 || t < 0 || t > 2) {
    throw DomainError("planar construction needs 0 <= s <= 1, 0 <= t <= 2");
  }
  const auto fp = FurstenbergParams::make(s, t, 2, 1);
  const Rational half(1, 2);

  if (s.numerator() == 0) {
    if (t <= 1) {
      auto f = empty_family(fp, p, half, "pencil");
      const std::size_t count = ceil_count(p, t, "ceil(p^t)");
      const PointSet origin({Point{0, 0}}, 2, p);
      auto lines = all_linear(2, 1, p);
      if (count > lines.size()) throw DegenerateScaleError("ceil(p^t) exceeds p+1 lines");
      for (std::size_t i = 0; i < count; ++i) f.members.push_back({AffineFlat(lines[i], Point{0, 0}), origin});
      finish(f);
      return f;
    }
    auto f = empty_family(fp, p, half, "point_lines");
    const std::size_t count = ceil_count(p, t - 1, "ceil(p^(t-1))");
    if (count > static_cast<std::size_t>(p)) throw DegenerateScaleError("ceil(p^(t-1)) exceeds p");
    const auto directions = non_horizontal_directions(p);
    for (std::size_t i = 0; i < count; ++i) {
      const Point x{static_cast<Residue>(i), 0};
      const PointSet y({x}, 2, p);
      for (const auto& dir : directions) f.members.push_back({AffineFlat(dir, x), y});
    }
    finish(f);
    return f;
  }

  const std::size_t rows = ceil_count(p, s, "ceil(p^s)");
  if (t <= s || t > 2 - s) {
    auto f = empty_family(fp, p, half, t <= s ? "sum" : "strip");
    add_row_band(f, first_non_horizontal_lines(ceil_count(p, t, "ceil(p^t)"), p), rows);
    finish(f);
    return f;
  }

  auto f = empty_family(fp, p, half, "grid");
  const std::size_t slopes = ceil_count(p, (t - s) / 2, "ceil(p^((t-s)/2))");
  const std::size_t intercepts = ceil_count(p, (s + t) / 2, "ceil(p^((s+t)/2))");
  const std::size_t xs = ceil_count(p, s, "ceil(p^s/2)", half);
  if (slopes >= static_cast<std::size_t>(p)) {
    throw DegenerateScaleError("ceil(p^((t-s)/2)) = " + std::to_string(slopes) + " slopes need p > " + std::to_string(slopes));
  }
  if (intercepts > static_cast<std::size_t>(p)) {
    throw DegenerateScaleError("ceil(p^((s+t)/2)) = " + std::to_string(intercepts) + " exceeds p");
  }
  if (xs >= static_cast<std::size_t>(p)) {
    throw DegenerateScaleError("ceil(p^s/2) = " + std::to_string(xs) + " is not below p");
  }
  for (std::size_t a = 1; a <= slopes; ++a) {
    const auto dir = LinearSubspace::span({Point{1, static_cast<Residue>(a)}}, 2, p);
    for (std::size_t b = 1; b <= intercepts; ++b) {
      std::vector<Point> ys;
      for (std::size_t x = 1; x <= xs; ++x) {
        ys.push_back({static_cast<Residue>(x), static_cast<Residue>(a * x + b)});
      }
      f.members.push_back({AffineFlat(dir, Point{0, static_cast<Residue>(b)}), PointSet(std::move(ys), 2, p)});
    }
  }
  finish(f);
  return f;
}

FurstenbergFamily construct_general(const Rational& s, const Rational& t, int n, int k,
                                    std::int64_t p) {
  const auto fp = FurstenbergParams::make(s, t, n, k);
  require_prime(p);
  switch (fp.branch) {
    case FurstenbergCase::a: return case_a(fp, p);
    case FurstenbergCase::b: return case_b(fp, p);
    case FurstenbergCase::c: return case_c(fp, p);
    case FurstenbergCase::d: return case_d(fp, p);
  }
  throw DomainError("unreachable Furstenberg case");
}

ValidityRecord verify_family(const FurstenbergFamily& f, unsigned jobs) {
  ValidityRecord record;
  auto fail = [&](std::string why) {
    record.is_valid = false;
    record.failures.push_back(std::move(why));
  };

  if (compare_scaled(BigInt(f.members.size()), f.lambda, f.p, f.params.t) == std::strong_ordering::less) {
    fail("only " + std::to_string(f.members.size()) + " members, need lambda*p^t");
  }

  const auto member_failures = parallel_map(
      f.members.size(),
      [&](std::size_t i) {
        std::vector<std::string> out;
        const auto& member = f.members[i];
        if (compare_scaled(BigInt(member.y_set.size()), f.lambda, f.p, f.params.s) == std::strong_ordering::less) {
          out.push_back("member " + std::to_string(i) + ": #Y=" + std::to_string(member.y_set.size()) +
                        " below lambda*p^s");
        }
        for (const auto& y : member.y_set) {
          if (!member.flat.contains(y)) {
            out.push_back("member " + std::to_string(i) + ": a point of Y lies off " + member.flat.to_string());
            break;
          }
        }
        return out;
      },
      jobs);
  for (const auto& list : member_failures) {
    for (const auto& why : list) fail(why);
  }

  std::vector<AffineFlat> flats;
  flats.reserve(f.members.size());
  for (const auto& member : f.members) flats.push_back(member.flat);
  std::sort(flats.begin(), flats.end());
  if (auto dup = std::adjacent_find(flats.begin(), flats.end()); dup != flats.end()) {
    fail("duplicate member " + dup->to_string());
  }

  std::vector<Point> all;
  for (const auto& member : f.members) all.insert(all.end(), member.y_set.begin(), member.y_set.end());
  if (PointSet(std::move(all), f.params.n, f.p) != f.union_set) fail("union_set is not the union of the Y(V)");
  return record;
}

bool lower_bound_sanity(const FurstenbergFamily& f) {
  const BigInt e(f.union_set.size());
  if (e < ceil_scaled_power(f.p, f.params.s, f.lambda)) return false;
  const BigInt incidences = e * gaussian_binomial(f.params.n, f.params.k, f.p);
  return compare_scaled(incidences, f.lambda * f.lambda, f.p, f.params.s + f.params.t) !=
         std::strong_ordering::less;
}

bool upper_bound_holds(const FurstenbergFamily& f, const Rational& c) {
  return compare_scaled(BigInt(f.union_set.size()), c, f.p, f.params.index().value()) !=
         std::strong_ordering::greater;
}

ConstructionReport report(const FurstenbergFamily& f, const std::string& family_id,
                          const Rational& upper_constant, unsigned jobs) {
  ConstructionReport r;
  r.family_id = family_id;
  r.branch = f.branch;
  r.e_size = f.union_set.size();
  r.target = f.params.index();
  r.ratio = BigRational(r.e_size, ceil_rational_power(f.p, r.target.value()));
  auto validity = verify_family(f, jobs);
  r.valid = validity.is_valid;
  r.failures = std::move(validity.failures);
  r.lower_sanity = lower_bound_sanity(f);
  r.upper_bound = upper_bound_holds(f, upper_constant);
  if (!r.lower_sanity) r.failures.emplace_back("lower-bound sanity fails");
  if (!r.upper_bound) r.failures.emplace_back("#E exceeds the upper constant times p^F");
  return r;
}

void write_family(std::ostream& out, const FurstenbergFamily& f) {
  out << "p=" << f.p << " n=" << f.params.n << " k=" << f.params.k << " s=" << to_string(f.params.s)
      << " t=" << to_string(f.params.t) << " lambda=" << to_string(f.lambda) << " branch=" << f.branch
      << '\n';
  for (const auto& member : f.members) {
    out << member.flat.to_string() << ';';
    for (const auto& y : member.y_set) {
      out << ' ';
      for (std::size_t i = 0; i < y.size(); ++i) out << (i ? "," : "") << y[i];
    }
    out << '\n';
  }
}

}  // namespace ffgeom

#include "ffgeom/projections.hpp"

#include "ffgeom/parallel.hpp"

#include <algorithm>
#include <iterator>

namespace ffgeom {

namespace {

void require_same_space(const PointSet& a, const LinearSubspace& v) {
  if (a.ambient_dim() != v.ambient_dim() || a.modulus() != v.modulus()) {
    throw DomainError("point set and subspace live in different spaces");
  }
}

std::vector<Point> sorted_representatives(const PointSet& a, const LinearSubspace& v) {
  require_same_space(a, v);
  std::vector<Point> reps;
  reps.reserve(a.size());
  for (const auto& x : a) reps.push_back(coset_representative(x, v));
  std::sort(reps.begin(), reps.end());
  return reps;
}

}  // namespace

PointSet::PointSet(int ambient_dim, std::int64_t p) : n_(ambient_dim), p_(p) {
  if (ambient_dim < 0) throw DomainError("negative ambient dimension");
  require_prime(p);
}

PointSet::PointSet(std::vector<Point> points, int ambient_dim, std::int64_t p)
    : PointSet(ambient_dim, p) {
  for (auto& x : points) {
    if (static_cast<int>(x.size()) != ambient_dim) throw DomainError("point has wrong dimension");
    for (auto& c : x) c = mod(c, p);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  points_ = std::move(points);
}

PointSet PointSet::full_space(int ambient_dim, std::int64_t p) {
  PointSet out(ambient_dim, p);
  out.points_ = all_points(ambient_dim, p);
  return out;
}

bool PointSet::contains(const Point& x) const {
  return std::binary_search(points_.begin(), points_.end(), x);
}

bool PointSet::is_subset_of(const PointSet& other) const {
  return n_ == other.n_ && p_ == other.p_ &&
         std::includes(other.points_.begin(), other.points_.end(), points_.begin(), points_.end());
}

PointSet set_union(const PointSet& a, const PointSet& b) {
  if (a.ambient_dim() != b.ambient_dim() || a.modulus() != b.modulus()) {
    throw DomainError("union of point sets from different spaces");
  }
  std::vector<Point> merged;
  merged.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(merged));
  return PointSet(std::move(merged), a.ambient_dim(), a.modulus());
}

PointSet project_set(const PointSet& a, const LinearSubspace& v) {
  return PointSet(sorted_representatives(a, v), a.ambient_dim(), a.modulus());
}

std::size_t projection_size(const PointSet& a, const LinearSubspace& v) {
  auto reps = sorted_representatives(a, v);
  return static_cast<std::size_t>(std::distance(reps.begin(), std::unique(reps.begin(), reps.end())));
}

std::vector<std::size_t> fibre_sizes(const PointSet& a, const LinearSubspace& v) {
  const auto reps = sorted_representatives(a, v);
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < reps.size();) {
    std::size_t j = i;
    while (j < reps.size() && reps[j] == reps[i]) ++j;
    sizes.push_back(j - i);
    i = j;
  }
  return sizes;
}

int projection_dimension(const LinearSubspace& w, const LinearSubspace& v) {
  return w.dim() - intersection(v, w).dim();
}

bool is_exceptional(const PointSet& a, const LinearSubspace& v, const Rational& s) {
  return compare_count_to_power(BigInt(projection_size(a, v)), a.modulus(), s) ==
         std::strong_ordering::less;
}

std::vector<LinearSubspace> exceptional_set(const PointSet& a, const ExceptionalQuery& q,
                                            unsigned jobs) {
  const int n = a.ambient_dim();
  if (q.s <= 0) throw DomainError("exceptional threshold must be positive");
  if (q.k < 0 || q.k >= n) throw DomainError("need 0 <= k < n for exceptional sets");
  auto directions = all_linear(n, n - q.k, a.modulus());
  const auto flags = parallel_map(
      directions.size(), [&](std::size_t i) { return is_exceptional(a, directions[i], q.s); }, jobs);
  std::vector<LinearSubspace> out;
  for (std::size_t i = 0; i < directions.size(); ++i) {
    if (flags[i]) out.push_back(std::move(directions[i]));
  }
  return out;
}

BigInt count_small_projection_subspaces(const LinearSubspace& w, int k, int l, unsigned jobs) {
  const int n = w.ambient_dim();
  const int m = w.dim();
  if (k < 1 || k >= n) throw DomainError("need 1 <= k < n");
  if (l < 0 || l > k || l > m || n - k < m - l) {
    throw DomainError("small-projection count needs n-k >= m-l, l <= k, l <= m");
  }
  const auto directions = all_linear(n, n - k, w.modulus());
  const auto small = parallel_map(
      directions.size(),
      [&](std::size_t i) { return projection_dimension(w, directions[i]) <= l; }, jobs);
  return BigInt(std::count(small.begin(), small.end(), true));
}

}  // namespace ffgeom

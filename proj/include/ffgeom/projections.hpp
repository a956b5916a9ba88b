#pragma once

#include "ffgeom/exact.hpp"
#include "ffgeom/flag_geometry.hpp"

#include <cstddef>
#include <vector>

namespace ffgeom {

/// Finite subset of F_p^n kept strictly sorted.
class PointSet {
 public:
  PointSet(int ambient_dim, std::int64_t p);
  /// Reduces coordinates mod p, sorts and removes duplicates.
  PointSet(std::vector<Point> points, int ambient_dim, std::int64_t p);

  static PointSet full_space(int ambient_dim, std::int64_t p);

  int ambient_dim() const { return n_; }
  std::int64_t modulus() const { return p_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<Point>& points() const { return points_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  bool contains(const Point& x) const;
  bool is_subset_of(const PointSet& other) const;

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  int n_;
  std::int64_t p_;
  std::vector<Point> points_;
};

PointSet set_union(const PointSet& a, const PointSet& b);

/// pi*_V(A): one canonical representative per coset of V meeting A.
PointSet project_set(const PointSet& a, const LinearSubspace& v);

/// #pi*_V(A), without materialising a PointSet.
std::size_t projection_size(const PointSet& a, const LinearSubspace& v);

/// #(A ∩ L) for each coset L in project_set(a, v), in the same order.
std::vector<std::size_t> fibre_sizes(const PointSet& a, const LinearSubspace& v);

/// log_p #pi*_V(W) for a linear W, i.e. dim W - dim(V ∩ W).
int projection_dimension(const LinearSubspace& w, const LinearSubspace& v);

/// Asks for V in G(n-k, F_p^n) with #pi*_V(A) < p^s.
struct ExceptionalQuery {
  Rational s;
  int k;
};

/// Strict test #pi*_V(A) < p^s.
bool is_exceptional(const PointSet& a, const LinearSubspace& v, const Rational& s);

/// E_s(A; n, k) in enumeration order of G(n-k, F_p^n).
std::vector<LinearSubspace> exceptional_set(const PointSet& a, const ExceptionalQuery& q,
                                            unsigned jobs = 1);

/// #{V in G(n-k, F_p^n) : #pi*_V(W) <= p^l} by enumeration of G(n-k, F_p^n).
/// Requires n-k >= dim W - l, l <= k, l <= dim W, l >= 0, 1 <= k < n.
BigInt count_small_projection_subspaces(const LinearSubspace& w, int k, int l, unsigned jobs = 1);

}  // namespace ffgeom

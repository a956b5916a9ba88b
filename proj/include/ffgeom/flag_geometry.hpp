#pragma once

#include "ffgeom/exact.hpp"
#include "ffgeom/prime_matrix.hpp"

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace ffgeom {

/// A linear subspace of F_p^n, stored as its RREF basis (dim rows, no zero rows).
/// Two values compare equal exactly when they are the same subspace.
class LinearSubspace {
 public:
  /// Row space of `spanning`.
  static LinearSubspace span(const PrimeMatrix& spanning);
  static LinearSubspace span(const std::vector<Point>& vectors, int ambient_dim, std::int64_t p);
  static LinearSubspace zero(int ambient_dim, std::int64_t p);
  static LinearSubspace whole(int ambient_dim, std::int64_t p);
  /// span{e_c : c in coords}.
  static LinearSubspace coordinate(int ambient_dim, const std::vector<int>& coords, std::int64_t p);

  /// Precondition: `basis` is in RREF with no zero rows and `pivots` are its pivot columns.
  static LinearSubspace from_rref(PrimeMatrix basis, std::vector<Index> pivots);

  int ambient_dim() const { return static_cast<int>(basis_.cols()); }
  int dim() const { return static_cast<int>(basis_.rows()); }
  std::int64_t modulus() const { return basis_.modulus(); }
  const PrimeMatrix& basis() const { return basis_; }
  const std::vector<Index>& pivots() const { return pivots_; }

  bool contains(const Point& x) const;
  bool contains(const LinearSubspace& other) const;

  /// Rows rendered as "[a b c|d e f]".
  std::string to_string() const;

  friend bool operator==(const LinearSubspace& a, const LinearSubspace& b);
  friend std::strong_ordering operator<=>(const LinearSubspace& a, const LinearSubspace& b);

 private:
  LinearSubspace(PrimeMatrix basis, std::vector<Index> pivots)
      : basis_(std::move(basis)), pivots_(std::move(pivots)) {}

  PrimeMatrix basis_;
  std::vector<Index> pivots_;
};

LinearSubspace operator+(const LinearSubspace& a, const LinearSubspace& b);
LinearSubspace intersection(const LinearSubspace& a, const LinearSubspace& b);

/// Canonical coset representative of x + V: the unique point of x + V
/// vanishing on V's pivot coordinates.
Point coset_representative(const Point& x, const LinearSubspace& v);

/// An affine flat base + direction with the canonical base point.
class AffineFlat {
 public:
  AffineFlat(LinearSubspace direction, const Point& through);

  const LinearSubspace& direction() const { return direction_; }
  const Point& base() const { return base_; }
  int dim() const { return direction_.dim(); }
  int ambient_dim() const { return direction_.ambient_dim(); }
  std::int64_t modulus() const { return direction_.modulus(); }

  bool contains(const Point& x) const;

  /// "dir=[..] base=(..)".
  std::string to_string() const;

  friend bool operator==(const AffineFlat& a, const AffineFlat& b) = default;
  friend std::strong_ordering operator<=>(const AffineFlat& a, const AffineFlat& b);

 private:
  LinearSubspace direction_;
  Point base_;
};

/// Number of k-dimensional subspaces of F_p^n.
BigInt gaussian_binomial(int n, int k, std::int64_t p);

/// Lazily enumerates G(k, F_p^n) in lexicographic order of
/// (pivot columns, free entries read row-major).
class LinearSubspaceStream {
 public:
  LinearSubspaceStream(int n, int k, std::int64_t p);

  std::optional<LinearSubspace> next();

 private:
  void load_pattern();
  bool advance_pattern();

  int n_;
  int k_;
  std::int64_t p_;
  bool done_ = false;
  std::vector<int> pivots_;
  std::vector<std::pair<int, int>> free_slots_;  // (row, col)
  std::vector<Residue> digits_;
  bool pattern_fresh_ = true;
};

/// Lazily enumerates A(k, F_p^n): each direction in LinearSubspaceStream
/// order, then canonical base points in lexicographic order.
class AffineFlatStream {
 public:
  AffineFlatStream(int n, int k, std::int64_t p);

  std::optional<AffineFlat> next();

 private:
  LinearSubspaceStream directions_;
  std::optional<LinearSubspace> current_;
  std::vector<int> free_coords_;
  std::vector<Residue> digits_;
  bool fresh_ = true;
  std::int64_t p_;
  int n_;
};

std::vector<LinearSubspace> all_linear(int n, int k, std::int64_t p);

/// All points of F_p^n in lexicographic order.
std::vector<Point> all_points(int n, std::int64_t p);

/// The p^dim points of a flat, ordered by their coordinates along the basis.
std::vector<Point> points_of(const AffineFlat& flat);

struct FlatRelation {
  std::optional<int> intersection_dim;  // nullopt when empty
  bool parallel = false;
  bool transverse = false;
};

FlatRelation relate(const AffineFlat& v, const AffineFlat& w);

}  // namespace ffgeom

#pragma once

#include "ffgeom/exact.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <vector>

namespace ffgeom {

using Residue = std::int64_t;
using Index = Eigen::Index;

/// A point of F_p^n as a row of reduced residues.
using Point = std::vector<Residue>;

/// Trial division; intended for desk-scale moduli.
bool is_prime(std::int64_t p);

/// Throws DomainError("<p> is not prime") unless p is prime.
void require_prime(std::int64_t p);

constexpr Residue mod(Residue x, Residue p) {
  const Residue r = x % p;
  return r < 0 ? r + p : r;
}

/// Inverse of a nonzero residue modulo a prime.
Residue inverse_mod(Residue x, Residue p);

/// Element of the prime field F_p.
class FieldScalar {
 public:
  FieldScalar(Residue value, std::int64_t modulus);

  Residue value() const { return value_; }
  std::int64_t modulus() const { return modulus_; }

  FieldScalar inverse() const;

  friend FieldScalar operator+(FieldScalar a, FieldScalar b);
  friend FieldScalar operator-(FieldScalar a, FieldScalar b);
  friend FieldScalar operator*(FieldScalar a, FieldScalar b);
  friend FieldScalar operator-(FieldScalar a);
  friend bool operator==(const FieldScalar&, const FieldScalar&) = default;

 private:
  FieldScalar(Residue value, std::int64_t modulus, bool /*trusted*/)
      : value_(value), modulus_(modulus) {}

  Residue value_;
  std::int64_t modulus_;
};

/// Dense matrix over F_p. Entries are kept reduced into [0, p).
class PrimeMatrix {
 public:
  using Storage = Eigen::Matrix<Residue, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  /// Zero matrix. Verifies that p is prime.
  PrimeMatrix(Index rows, Index cols, std::int64_t p);
  /// Reduces every entry mod p. Verifies that p is prime.
  PrimeMatrix(const Storage& entries, std::int64_t p);

  /// Precondition: p already verified prime and all entries in [0, p).
  static PrimeMatrix from_reduced(Storage entries, std::int64_t p) {
    return PrimeMatrix(std::move(entries), p, Trusted{});
  }
  static PrimeMatrix identity(Index n, std::int64_t p);
  static PrimeMatrix from_rows(const std::vector<Point>& rows, Index cols, std::int64_t p);

  Index rows() const { return entries_.rows(); }
  Index cols() const { return entries_.cols(); }
  std::int64_t modulus() const { return modulus_; }
  const Storage& entries() const { return entries_; }

  Residue operator()(Index i, Index j) const { return entries_(i, j); }
  FieldScalar at(Index i, Index j) const { return {entries_(i, j), modulus_}; }
  void set(Index i, Index j, Residue value) { entries_(i, j) = mod(value, modulus_); }

  Point row(Index i) const;

  friend bool operator==(const PrimeMatrix& a, const PrimeMatrix& b) {
    return a.modulus_ == b.modulus_ && a.entries_.rows() == b.entries_.rows() &&
           a.entries_.cols() == b.entries_.cols() && a.entries_ == b.entries_;
  }

 private:
  struct Trusted {};
  PrimeMatrix(Storage entries, std::int64_t p, Trusted) : entries_(std::move(entries)), modulus_(p) {}

  Storage entries_;
  std::int64_t modulus_;
};

PrimeMatrix operator*(const PrimeMatrix& a, const PrimeMatrix& b);
PrimeMatrix transpose(const PrimeMatrix& m);
PrimeMatrix vstack(const PrimeMatrix& top, const PrimeMatrix& bottom);
/// First `count` rows.
PrimeMatrix top_rows(const PrimeMatrix& m, Index count);

struct RrefResult {
  PrimeMatrix reduced;
  std::vector<Index> pivots;
};

/// Reduced row echelon form; same shape as the input, zero rows last.
RrefResult rref(const PrimeMatrix& m);

Index rank(const PrimeMatrix& m);

/// Basis of the right null space {v : m v^T = 0}, as the rows of an RREF matrix.
PrimeMatrix kernel_basis(const PrimeMatrix& m);

}  // namespace ffgeom

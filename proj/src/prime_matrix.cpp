#include "ffgeom/prime_matrix.hpp"

#include <string>

namespace ffgeom {

namespace {

auto reducer(std::int64_t p) {
  return [p](Residue x) { return mod(x, p); };
}

}  // namespace

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  if (p % 2 == 0) return p == 2;
  for (std::int64_t d = 3; d * d <= p; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

void require_prime(std::int64_t p) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
}

Residue inverse_mod(Residue x, Residue p) {
  // Extended Euclid on (x, p).
  Residue a = mod(x, p);
  if (a == 0) throw DomainError("zero has no inverse");
  Residue b = p;
  Residue u = 1;
  Residue v = 0;
  while (b != 0) {
    const Residue q = a / b;
    a -= q * b;
    std::swap(a, b);
    u -= q * v;
    std::swap(u, v);
  }
  return mod(u, p);
}

FieldScalar::FieldScalar(Residue value, std::int64_t modulus) : modulus_(modulus) {
  require_prime(modulus);
  value_ = mod(value, modulus);
}

FieldScalar FieldScalar::inverse() const { return {inverse_mod(value_, modulus_), modulus_, true}; }

namespace {

void require_same_field(const FieldScalar& a, const FieldScalar& b) {
  if (a.modulus() != b.modulus()) throw DomainError("field scalars from different fields");
}

}  // namespace

FieldScalar operator+(FieldScalar a, FieldScalar b) {
  require_same_field(a, b);
  return {mod(a.value_ + b.value_, a.modulus_), a.modulus_, true};
}

FieldScalar operator-(FieldScalar a, FieldScalar b) {
  require_same_field(a, b);
  return {mod(a.value_ - b.value_, a.modulus_), a.modulus_, true};
}

FieldScalar operator*(FieldScalar a, FieldScalar b) {
  require_same_field(a, b);
  return {mod(a.value_ * b.value_, a.modulus_), a.modulus_, true};
}

FieldScalar operator-(FieldScalar a) { return {mod(-a.value_, a.modulus_), a.modulus_, true}; }

PrimeMatrix::PrimeMatrix(Index rows, Index cols, std::int64_t p)
    : entries_(Storage::Zero(rows, cols)), modulus_(p) {
  require_prime(p);
}

PrimeMatrix::PrimeMatrix(const Storage& entries, std::int64_t p)
    : entries_(entries.unaryExpr(reducer(p))), modulus_(p) {
  require_prime(p);
}

PrimeMatrix PrimeMatrix::identity(Index n, std::int64_t p) {
  require_prime(p);
  return from_reduced(Storage::Identity(n, n), p);
}

PrimeMatrix PrimeMatrix::from_rows(const std::vector<Point>& rows, Index cols, std::int64_t p) {
  require_prime(p);
  Storage entries(static_cast<Index>(rows.size()), cols);
  for (Index i = 0; i < entries.rows(); ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (static_cast<Index>(row.size()) != cols) throw DomainError("ragged rows");
    for (Index j = 0; j < cols; ++j) entries(i, j) = mod(row[static_cast<std::size_t>(j)], p);
  }
  return from_reduced(std::move(entries), p);
}

Point PrimeMatrix::row(Index i) const {
  Point out(static_cast<std::size_t>(cols()));
  for (Index j = 0; j < cols(); ++j) out[static_cast<std::size_t>(j)] = entries_(i, j);
  return out;
}

PrimeMatrix operator*(const PrimeMatrix& a, const PrimeMatrix& b) {
  if (a.modulus() != b.modulus()) throw DomainError("matrices over different fields");
  if (a.cols() != b.rows()) throw DomainError("shape mismatch in product");
  const auto p = a.modulus();
  PrimeMatrix::Storage out = PrimeMatrix::Storage::Zero(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index l = 0; l < a.cols(); ++l) {
      const Residue x = a(i, l);
      if (x == 0) continue;
      out.row(i) = (out.row(i) + x * b.entries().row(l)).unaryExpr(reducer(p));
    }
  }
  return PrimeMatrix::from_reduced(std::move(out), p);
}

PrimeMatrix transpose(const PrimeMatrix& m) {
  return PrimeMatrix::from_reduced(m.entries().transpose(), m.modulus());
}

PrimeMatrix vstack(const PrimeMatrix& top, const PrimeMatrix& bottom) {
  if (top.modulus() != bottom.modulus()) throw DomainError("matrices over different fields");
  if (top.cols() != bottom.cols()) throw DomainError("column mismatch in vstack");
  PrimeMatrix::Storage out(top.rows() + bottom.rows(), top.cols());
  out << top.entries(), bottom.entries();
  return PrimeMatrix::from_reduced(std::move(out), top.modulus());
}

PrimeMatrix top_rows(const PrimeMatrix& m, Index count) {
  return PrimeMatrix::from_reduced(m.entries().topRows(count), m.modulus());
}

RrefResult rref(const PrimeMatrix& m) {
  const auto p = m.modulus();
  PrimeMatrix::Storage a = m.entries();
  std::vector<Index> pivots;
  Index r = 0;
  for (Index c = 0; c < a.cols() && r < a.rows(); ++c) {
    Index found = r;
    while (found < a.rows() && a(found, c) == 0) ++found;
    if (found == a.rows()) continue;
    if (found != r) a.row(found).swap(a.row(r));
    const Residue inv = inverse_mod(a(r, c), p);
    a.row(r) = (a.row(r) * inv).unaryExpr(reducer(p));
    for (Index i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Residue factor = a(i, c);
      a.row(i) = (a.row(i) - factor * a.row(r)).unaryExpr(reducer(p));
    }
    pivots.push_back(c);
    ++r;
  }
  return {PrimeMatrix::from_reduced(std::move(a), p), std::move(pivots)};
}

Index rank(const PrimeMatrix& m) { return static_cast<Index>(rref(m).pivots.size()); }

PrimeMatrix kernel_basis(const PrimeMatrix& m) {
  const auto p = m.modulus();
  const auto [reduced, pivots] = rref(m);
  const Index n = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Index c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;

  PrimeMatrix::Storage basis(n - static_cast<Index>(pivots.size()), n);
  basis.setZero();
  Index row = 0;
  for (Index free = 0; free < n; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    basis(row, free) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      basis(row, pivots[i]) = mod(-reduced(static_cast<Index>(i), free), p);
    }
    ++row;
  }
  // The free-column construction is already echelon up to ordering; normalise.
  return rref(PrimeMatrix::from_reduced(std::move(basis), p)).reduced;
}

}  // namespace ffgeom

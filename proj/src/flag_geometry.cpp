#include "ffgeom/flag_geometry.hpp"

#include <algorithm>
#include <sstream>

namespace ffgeom {

namespace {

void require_dims(int n, int k) {
  if (n < 0 || k < 0 || k > n) {
    throw DomainError("need 0 <= k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  }
}

std::string render_point(const Point& x) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < x.size(); ++i) out << (i ? " " : "") << x[i];
  out << ')';
  return out.str();
}

}  // namespace

LinearSubspace LinearSubspace::span(const PrimeMatrix& spanning) {
  auto [reduced, pivots] = rref(spanning);
  const auto r = static_cast<Index>(pivots.size());
  return LinearSubspace(top_rows(reduced, r), std::move(pivots));
}

LinearSubspace LinearSubspace::span(const std::vector<Point>& vectors, int ambient_dim,
                                    std::int64_t p) {
  return span(PrimeMatrix::from_rows(vectors, ambient_dim, p));
}

LinearSubspace LinearSubspace::zero(int ambient_dim, std::int64_t p) {
  return LinearSubspace(PrimeMatrix(0, ambient_dim, p), {});
}

LinearSubspace LinearSubspace::whole(int ambient_dim, std::int64_t p) {
  std::vector<Index> pivots(static_cast<std::size_t>(ambient_dim));
  for (int i = 0; i < ambient_dim; ++i) pivots[static_cast<std::size_t>(i)] = i;
  return LinearSubspace(PrimeMatrix::identity(ambient_dim, p), std::move(pivots));
}

LinearSubspace LinearSubspace::coordinate(int ambient_dim, const std::vector<int>& coords,
                                          std::int64_t p) {
  std::vector<Point> rows;
  for (int c : coords) {
    if (c < 0 || c >= ambient_dim) throw DomainError("coordinate out of range");
    Point e(static_cast<std::size_t>(ambient_dim), 0);
    e[static_cast<std::size_t>(c)] = 1;
    rows.push_back(std::move(e));
  }
  return span(rows, ambient_dim, p);
}

LinearSubspace LinearSubspace::from_rref(PrimeMatrix basis, std::vector<Index> pivots) {
  return LinearSubspace(std::move(basis), std::move(pivots));
}

bool LinearSubspace::contains(const Point& x) const {
  const Point r = coset_representative(x, *this);
  return std::all_of(r.begin(), r.end(), [](Residue v) { return v == 0; });
}

bool LinearSubspace::contains(const LinearSubspace& other) const {
  if (other.ambient_dim() != ambient_dim() || other.modulus() != modulus()) return false;
  for (Index i = 0; i < other.basis_.rows(); ++i) {
    if (!contains(other.basis_.row(i))) return false;
  }
  return true;
}

std::string LinearSubspace::to_string() const {
  std::ostringstream out;
  out << '[';
  for (Index i = 0; i < basis_.rows(); ++i) {
    if (i) out << '|';
    for (Index j = 0; j < basis_.cols(); ++j) out << (j ? " " : "") << basis_(i, j);
  }
  out << ']';
  return out.str();
}

bool operator==(const LinearSubspace& a, const LinearSubspace& b) {
  return a.basis_ == b.basis_;
}

std::strong_ordering operator<=>(const LinearSubspace& a, const LinearSubspace& b) {
  if (auto c = a.ambient_dim() <=> b.ambient_dim(); c != 0) return c;
  if (auto c = a.modulus() <=> b.modulus(); c != 0) return c;
  if (auto c = a.dim() <=> b.dim(); c != 0) return c;
  if (auto c = a.pivots_ <=> b.pivots_; c != 0) return c;
  const auto& x = a.basis_.entries();
  const auto& y = b.basis_.entries();
  for (Index i = 0; i < x.rows(); ++i) {
    for (Index j = 0; j < x.cols(); ++j) {
      if (auto c = x(i, j) <=> y(i, j); c != 0) return c;
    }
  }
  return std::strong_ordering::equal;
}

LinearSubspace operator+(const LinearSubspace& a, const LinearSubspace& b) {
  return LinearSubspace::span(vstack(a.basis(), b.basis()));
}

LinearSubspace intersection(const LinearSubspace& a, const LinearSubspace& b) {
  // (A^perp + B^perp)^perp under the standard (nondegenerate) bilinear form.
  const PrimeMatrix normals = vstack(kernel_basis(a.basis()), kernel_basis(b.basis()));
  return LinearSubspace::span(kernel_basis(normals));
}

Point coset_representative(const Point& x, const LinearSubspace& v) {
  if (static_cast<int>(x.size()) != v.ambient_dim()) throw DomainError("dimension mismatch");
  const auto p = v.modulus();
  Point y(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) y[j] = mod(x[j], p);
  const auto& basis = v.basis().entries();
  const auto& pivots = v.pivots();
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    const Residue f = y[static_cast<std::size_t>(pivots[i])];
    if (f == 0) continue;
    for (Index j = 0; j < basis.cols(); ++j) {
      const Residue b = basis(static_cast<Index>(i), j);
      if (b != 0) y[static_cast<std::size_t>(j)] = mod(y[static_cast<std::size_t>(j)] - f * b, p);
    }
  }
  return y;
}

AffineFlat::AffineFlat(LinearSubspace direction, const Point& through)
    : direction_(std::move(direction)), base_(coset_representative(through, direction_)) {}

bool AffineFlat::contains(const Point& x) const {
  return coset_representative(x, direction_) == base_;
}

std::string AffineFlat::to_string() const {
  return "dir=" + direction_.to_string() + " base=" + render_point(base_);
}

std::strong_ordering operator<=>(const AffineFlat& a, const AffineFlat& b) {
  if (auto c = a.direction_ <=> b.direction_; c != 0) return c;
  return a.base_ <=> b.base_;
}

BigInt gaussian_binomial(int n, int k, std::int64_t p) {
  require_dims(n, k);
  require_prime(p);
  BigInt num = 1;
  BigInt den = 1;
  for (int i = 0; i < k; ++i) {
    num *= ipow(BigInt(p), static_cast<std::uint64_t>(n - i)) - 1;
    den *= ipow(BigInt(p), static_cast<std::uint64_t>(k - i)) - 1;
  }
  return num / den;
}

LinearSubspaceStream::LinearSubspaceStream(int n, int k, std::int64_t p) : n_(n), k_(k), p_(p) {
  require_dims(n, k);
  require_prime(p);
  pivots_.resize(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) pivots_[static_cast<std::size_t>(i)] = i;
  load_pattern();
}

void LinearSubspaceStream::load_pattern() {
  free_slots_.clear();
  for (int i = 0; i < k_; ++i) {
    for (int j = pivots_[static_cast<std::size_t>(i)] + 1; j < n_; ++j) {
      if (!std::binary_search(pivots_.begin(), pivots_.end(), j)) free_slots_.emplace_back(i, j);
    }
  }
  digits_.assign(free_slots_.size(), 0);
}

bool LinearSubspaceStream::advance_pattern() {
  // Next k-combination of {0..n-1} in lexicographic order.
  int i = k_ - 1;
  while (i >= 0 && pivots_[static_cast<std::size_t>(i)] == n_ - k_ + i) --i;
  if (i < 0) return false;
  ++pivots_[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < k_; ++j) {
    pivots_[static_cast<std::size_t>(j)] = pivots_[static_cast<std::size_t>(j - 1)] + 1;
  }
  load_pattern();
  return true;
}

std::optional<LinearSubspace> LinearSubspaceStream::next() {
  if (done_) return std::nullopt;

  PrimeMatrix::Storage basis = PrimeMatrix::Storage::Zero(k_, n_);
  std::vector<Index> pivots(pivots_.begin(), pivots_.end());
  for (int i = 0; i < k_; ++i) basis(i, pivots_[static_cast<std::size_t>(i)]) = 1;
  for (std::size_t s = 0; s < free_slots_.size(); ++s) {
    basis(free_slots_[s].first, free_slots_[s].second) = digits_[s];
  }
  LinearSubspace out = LinearSubspace::from_rref(PrimeMatrix::from_reduced(std::move(basis), p_),
                                                 std::move(pivots));

  // Advance: last free entry varies fastest.
  std::size_t pos = digits_.size();
  while (pos > 0) {
    --pos;
    if (++digits_[pos] < p_) return out;
    digits_[pos] = 0;
  }
  if (!advance_pattern()) done_ = true;
  return out;
}

AffineFlatStream::AffineFlatStream(int n, int k, std::int64_t p)
    : directions_(n, k, p), p_(p), n_(n) {}

std::optional<AffineFlat> AffineFlatStream::next() {
  if (fresh_) {
    current_ = directions_.next();
    if (!current_) return std::nullopt;
    free_coords_.clear();
    const auto& piv = current_->pivots();
    for (int j = 0; j < n_; ++j) {
      if (std::find(piv.begin(), piv.end(), j) == piv.end()) free_coords_.push_back(j);
    }
    digits_.assign(free_coords_.size(), 0);
    fresh_ = false;
  }
  Point base(static_cast<std::size_t>(n_), 0);
  for (std::size_t i = 0; i < free_coords_.size(); ++i) {
    base[static_cast<std::size_t>(free_coords_[i])] = digits_[i];
  }
  AffineFlat out(*current_, base);

  std::size_t pos = digits_.size();
  bool carried_out = true;
  while (pos > 0) {
    --pos;
    if (++digits_[pos] < p_) {
      carried_out = false;
      break;
    }
    digits_[pos] = 0;
  }
  if (carried_out) fresh_ = true;
  return out;
}

std::vector<LinearSubspace> all_linear(int n, int k, std::int64_t p) {
  std::vector<LinearSubspace> out;
  LinearSubspaceStream stream(n, k, p);
  while (auto v = stream.next()) out.push_back(std::move(*v));
  return out;
}

std::vector<Point> all_points(int n, std::int64_t p) {
  require_prime(p);
  std::vector<Point> out;
  Point x(static_cast<std::size_t>(n), 0);
  while (true) {
    out.push_back(x);
    int pos = n - 1;
    while (pos >= 0 && ++x[static_cast<std::size_t>(pos)] == p) {
      x[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

std::vector<Point> points_of(const AffineFlat& flat) {
  const auto p = flat.modulus();
  const auto& basis = flat.direction().basis();
  std::vector<Point> out;
  for (const auto& coeffs : all_points(flat.dim(), p)) {
    Point x = flat.base();
    for (Index i = 0; i < basis.rows(); ++i) {
      const Residue c = coeffs[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      for (Index j = 0; j < basis.cols(); ++j) {
        x[static_cast<std::size_t>(j)] = mod(x[static_cast<std::size_t>(j)] + c * basis(i, j), p);
      }
    }
    out.push_back(std::move(x));
  }
  return out;
}

FlatRelation relate(const AffineFlat& v, const AffineFlat& w) {
  if (v.ambient_dim() != w.ambient_dim() || v.modulus() != w.modulus()) {
    throw DomainError("flats live in different ambient spaces");
  }
  const int n = v.ambient_dim();
  const auto p = v.modulus();
  const LinearSubspace sum = v.direction() + w.direction();
  Point diff(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    diff[static_cast<std::size_t>(j)] =
        mod(w.base()[static_cast<std::size_t>(j)] - v.base()[static_cast<std::size_t>(j)], p);
  }

  FlatRelation rel;
  if (sum.contains(diff)) rel.intersection_dim = v.dim() + w.dim() - sum.dim();
  rel.parallel = v.dim() <= w.dim() ? w.direction().contains(v.direction())
                                    : v.direction().contains(w.direction());
  rel.transverse = rel.intersection_dim.has_value() && *rel.intersection_dim == v.dim() + w.dim() - n;
  return rel;
}

}  // namespace ffgeom

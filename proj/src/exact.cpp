#include "ffgeom/exact.hpp"

#include <charconv>

namespace ffgeom {

namespace {

void require_nonnegative_power(std::int64_t p, const Rational& e, const Rational& coef) {
  if (p < 1) throw DomainError("power base must be positive");
  if (e < 0) throw DomainError("exponent must be nonnegative, got " + to_string(e));
  if (coef < 0) throw DomainError("coefficient must be nonnegative, got " + to_string(coef));
}

// a^d * p^r for coef = a/b, e = r/d.
BigInt scaled_target(std::int64_t p, const Rational& e, const Rational& coef) {
  const auto d = static_cast<std::uint64_t>(e.denominator());
  const auto r = static_cast<std::uint64_t>(e.numerator());
  return ipow(BigInt(coef.numerator()), d) * ipow(BigInt(p), r);
}

std::optional<std::int64_t> parse_integer(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (*first == '+') return std::nullopt;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

}  // namespace

std::int64_t floor(const Rational& x) {
  const auto q = x.numerator() / x.denominator();
  return (x.numerator() % x.denominator() != 0 && x.numerator() < 0) ? q - 1 : q;
}

std::int64_t ceil(const Rational& x) {
  const auto q = x.numerator() / x.denominator();
  return (x.numerator() % x.denominator() != 0 && x.numerator() > 0) ? q + 1 : q;
}

std::string to_string(const Rational& x) {
  return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

std::string to_string(const BigRational& x) {
  return boost::multiprecision::numerator(x).str() + "/" +
         boost::multiprecision::denominator(x).str();
}

std::optional<Rational> parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    auto n = parse_integer(text);
    if (!n) return std::nullopt;
    return Rational(*n);
  }
  auto n = parse_integer(text.substr(0, slash));
  auto d = parse_integer(text.substr(slash + 1));
  if (!n || !d || *d <= 0) return std::nullopt;
  return Rational(*n, *d);
}

const Rational& ExactExponent::value() const {
  if (!value_) throw DomainError("value() of -infinity");
  return *value_;
}

std::string ExactExponent::to_string() const {
  return value_ ? ffgeom::to_string(*value_) : std::string("-inf");
}

std::strong_ordering operator<=>(const ExactExponent& a, const ExactExponent& b) {
  if (!a.value_ || !b.value_) {
    if (!a.value_ && !b.value_) return std::strong_ordering::equal;
    return a.value_ ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  if (*a.value_ < *b.value_) return std::strong_ordering::less;
  if (*b.value_ < *a.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

ExactExponent operator+(const ExactExponent& a, const ExactExponent& b) {
  if (!a.value_ || !b.value_) return ExactExponent::negative_infinity();
  return ExactExponent(*a.value_ + *b.value_);
}

ExactExponent operator-(const ExactExponent& a, const Rational& b) {
  if (!a.value_) return a;
  return ExactExponent(*a.value_ - b);
}

BigInt ipow(const BigInt& base, std::uint64_t exponent) {
  BigInt result = 1;
  BigInt square = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= square;
    exponent >>= 1U;
    if (exponent != 0) square *= square;
  }
  return result;
}

BigInt integer_root_floor(const BigInt& x, std::uint64_t degree) {
  if (x < 0) throw DomainError("integer root of a negative number");
  if (degree == 0) throw DomainError("zeroth root");
  if (degree == 1 || x < 2) return x;
  // x < 2^(bits), so the root is < 2^(bits/degree + 1).
  const auto bits = boost::multiprecision::msb(x) + 1;
  BigInt lo = 0;
  BigInt hi = BigInt(1) << static_cast<unsigned>(bits / degree + 1);
  while (lo < hi) {
    BigInt mid = (lo + hi + 1) >> 1;
    if (ipow(mid, degree) <= x) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

BigInt floor_scaled_power(std::int64_t p, const Rational& e, const Rational& coef) {
  require_nonnegative_power(p, e, coef);
  const auto d = static_cast<std::uint64_t>(e.denominator());
  return integer_root_floor(scaled_target(p, e, coef), d) / BigInt(coef.denominator());
}

BigInt ceil_scaled_power(std::int64_t p, const Rational& e, const Rational& coef) {
  require_nonnegative_power(p, e, coef);
  const auto d = static_cast<std::uint64_t>(e.denominator());
  const BigInt target = scaled_target(p, e, coef);
  const BigInt lower = floor_scaled_power(p, e, coef);
  return ipow(lower * coef.denominator(), d) == target ? lower : lower + 1;
}

BigInt ceil_rational_power(std::int64_t p, const Rational& e) {
  return ceil_scaled_power(p, e, Rational(1));
}

std::strong_ordering compare_scaled(const BigInt& c, const Rational& coef, std::int64_t p,
                                    const Rational& e) {
  require_nonnegative_power(p, e, coef);
  if (c < 0) throw DomainError("count must be nonnegative");
  const auto d = static_cast<std::uint64_t>(e.denominator());
  const BigInt lhs = ipow(c * coef.denominator(), d);
  const BigInt rhs = scaled_target(p, e, coef);
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::strong_ordering compare_count_to_power(const BigInt& c, std::int64_t p, const Rational& e) {
  return compare_scaled(c, Rational(1), p, e);
}

}  // namespace ffgeom

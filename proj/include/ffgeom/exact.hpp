#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ffgeom {

/// Raised when an operation is called outside its mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a construction cannot be realised at the requested prime
/// because some rounded count p^x collapses or exceeds the available objects.
class DegenerateScaleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;
using Rational = boost::rational<std::int64_t>;

std::int64_t floor(const Rational& x);
std::int64_t ceil(const Rational& x);

/// Formats as "num/den" (always with an explicit denominator).
std::string to_string(const Rational& x);
std::string to_string(const BigRational& x);

/// Strict parse: accepts "n" or "n/d" with decimal integers, rejects
/// decimals, exponents and whitespace.
std::optional<Rational> parse_rational(std::string_view text);

/// A rational exponent, or the distinguished bottom element -infinity.
class ExactExponent {
 public:
  ExactExponent(Rational value) : value_(value) {}  // NOLINT: implicit by design of the value type
  ExactExponent(std::int64_t value) : value_(Rational(value)) {}  // NOLINT

  static ExactExponent negative_infinity() { return ExactExponent(); }

  bool is_negative_infinity() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }

  /// Throws DomainError on -infinity.
  const Rational& value() const;

  std::string to_string() const;

  friend bool operator==(const ExactExponent& a, const ExactExponent& b) = default;
  friend std::strong_ordering operator<=>(const ExactExponent& a, const ExactExponent& b);

  /// -infinity absorbs.
  friend ExactExponent operator+(const ExactExponent& a, const ExactExponent& b);
  friend ExactExponent operator-(const ExactExponent& a, const Rational& b);

 private:
  ExactExponent() = default;
  std::optional<Rational> value_;
};

BigInt ipow(const BigInt& base, std::uint64_t exponent);

/// Largest r with r^degree <= x.
BigInt integer_root_floor(const BigInt& x, std::uint64_t degree);

/// floor(coef * p^e) for e >= 0, coef >= 0, computed without floating point.
BigInt floor_scaled_power(std::int64_t p, const Rational& e, const Rational& coef = Rational(1));
/// ceil(coef * p^e) for e >= 0, coef >= 0.
BigInt ceil_scaled_power(std::int64_t p, const Rational& e, const Rational& coef = Rational(1));

/// Exact ceil(p^e); e = r/d is decided through the integer d-th root of p^r.
BigInt ceil_rational_power(std::int64_t p, const Rational& e);

/// Sign of c - p^e, decided by comparing c^d with p^r.
std::strong_ordering compare_count_to_power(const BigInt& c, std::int64_t p, const Rational& e);

/// Sign of c - coef * p^e for coef >= 0.
std::strong_ordering compare_scaled(const BigInt& c, const Rational& coef, std::int64_t p,
                                    const Rational& e);

}  // namespace ffgeom

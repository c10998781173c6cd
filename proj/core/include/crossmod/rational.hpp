#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

namespace crossmod {

using BigInt = boost::multiprecision::cpp_int;

/// Exact fraction in lowest terms with a positive denominator.
class ExactRational {
 public:
  ExactRational() = default;
  ExactRational(BigInt value) : value_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  ExactRational(const BigInt& numerator, const BigInt& denominator);

  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const { return boost::multiprecision::denominator(value_); }
  bool is_integer() const { return denominator() == 1; }

  /// "p/q", with q = 1 written out.
  std::string to_string() const;
  /// Accepts "p/q" or "p".
  static ExactRational parse(std::string_view text);

  ExactRational& operator*=(const ExactRational& rhs) {
    value_ *= rhs.value_;
    return *this;
  }
  ExactRational& operator/=(const ExactRational& rhs);
  friend ExactRational operator*(ExactRational a, const ExactRational& b) { return a *= b; }
  friend ExactRational operator/(ExactRational a, const ExactRational& b) { return a /= b; }

  friend bool operator==(const ExactRational& a, const ExactRational& b) { return a.value_ == b.value_; }
  friend bool operator<(const ExactRational& a, const ExactRational& b) { return a.value_ < b.value_; }

 private:
  explicit ExactRational(boost::multiprecision::cpp_rational v) : value_(std::move(v)) {}
  boost::multiprecision::cpp_rational value_;
};

std::ostream& operator<<(std::ostream& os, const ExactRational& r);

/// base^exponent without overflow.
BigInt big_pow(std::size_t base, std::size_t exponent);

}  // namespace crossmod

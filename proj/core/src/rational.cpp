#include "crossmod/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace crossmod {

ExactRational::ExactRational(const BigInt& numerator, const BigInt& denominator) {
  if (denominator == 0) throw std::domain_error("zero denominator");
  // cpp_rational rejects a negative denominator, so move the sign up first.
  value_ = denominator < 0 ? boost::multiprecision::cpp_rational(-numerator, -denominator)
                           : boost::multiprecision::cpp_rational(numerator, denominator);
}

ExactRational& ExactRational::operator/=(const ExactRational& rhs) {
  if (rhs.value_ == 0) throw std::domain_error("division by zero");
  value_ /= rhs.value_;
  return *this;
}

std::string ExactRational::to_string() const {
  return numerator().str() + "/" + denominator().str();
}

ExactRational ExactRational::parse(std::string_view text) {
  auto parse_int = [](std::string_view digits) {
    if (digits.empty()) throw std::invalid_argument("empty integer");
    std::size_t start = (digits[0] == '-' || digits[0] == '+') ? 1 : 0;
    if (start == digits.size()) throw std::invalid_argument("malformed integer");
    for (std::size_t i = start; i < digits.size(); ++i)
      if (digits[i] < '0' || digits[i] > '9') throw std::invalid_argument("malformed integer '" + std::string(digits) + "'");
    return BigInt(std::string(digits));
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return ExactRational(parse_int(text));
  return ExactRational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::ostream& operator<<(std::ostream& os, const ExactRational& r) { return os << r.to_string(); }

BigInt big_pow(std::size_t base, std::size_t exponent) {
  BigInt result = 1;
  for (std::size_t i = 0; i < exponent; ++i) result *= base;
  return result;
}

}  // namespace crossmod

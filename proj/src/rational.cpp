#include "olc/rational.hpp"

#include <stdexcept>

namespace olc {

Rational::Rational(long num, long den) : value_(num, den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  value_.canonicalize();
}

Rational Rational::from_mpq(mpq_class value) {
  Rational r;
  r.value_ = std::move(value);
  r.value_.canonicalize();
  return r;
}

Rational Rational::parse(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  const auto slash = s.find('/');
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  auto valid_int = [](const std::string& digits, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !digits.empty() && digits[0] == '-') i = 1;
    if (i == digits.size()) return false;
    for (; i < digits.size(); ++i) {
      if (digits[i] < '0' || digits[i] > '9') return false;
    }
    return true;
  };
  if (!valid_int(num, true) || !valid_int(den, false)) {
    throw std::invalid_argument("malformed rational \"" + s + "\"");
  }
  mpz_class n(num, 10);
  mpz_class d(den, 10);
  if (d == 0) throw std::invalid_argument("rational with zero denominator");
  mpq_class q(n, d);
  q.canonicalize();
  return from_mpq(std::move(q));
}

std::string Rational::str() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.value_ == 0) throw std::domain_error("rational division by zero");
  value_ /= o.value_;
  return *this;
}

Rational pow(const Rational& base, unsigned exponent) {
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), exponent);
  return Rational::from_mpq(mpq_class(num, den));
}

Rational midpoint(const Rational& a, const Rational& b) {
  return (a + b) / Rational(2);
}

}  // namespace olc

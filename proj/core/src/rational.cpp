#include "natquant/rational.hpp"

#include <stdexcept>

namespace natquant {

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  const auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) {
      return Rational(Integer(std::string(text)));
    }
    Integer num{std::string(text.substr(0, slash))};
    Integer den{std::string(text.substr(slash + 1))};
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::runtime_error& e) {
    throw std::invalid_argument("malformed rational literal '" +
                                std::string(text) + "': " + e.what());
  }
}

std::string fraction_string(const Rational& q) {
  const Integer den = denominator(q);
  if (den == 1) return numerator(q).str();
  return numerator(q).str() + "/" + den.str();
}

std::string decimal_string(const Rational& q, unsigned digits) {
  Integer num = numerator(q);
  const Integer den = denominator(q);
  const bool negative = num < 0;
  if (negative) num = -num;

  Integer scale = 1;
  for (unsigned i = 0; i <= digits; ++i) scale *= 10;
  // One extra digit for rounding.
  Integer scaled = num * scale / den;
  Integer rounded = (scaled + 5) / 10;

  std::string body = rounded.str();
  if (body.size() <= digits) {
    body.insert(0, digits + 1 - body.size(), '0');
  }
  std::string result;
  if (negative && rounded != 0) result += '-';
  result += body.substr(0, body.size() - digits);
  if (digits > 0) {
    result += '.';
    result += body.substr(body.size() - digits);
  }
  return result;
}

Rational pow2(long e) {
  Integer p = 1;
  p <<= static_cast<unsigned long>(e < 0 ? -e : e);
  return e < 0 ? Rational(1, p) : Rational(p);
}

Rational pow_rational(const Rational& q, std::uint64_t e) {
  Rational result = 1;
  Rational base = q;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

}  // namespace natquant

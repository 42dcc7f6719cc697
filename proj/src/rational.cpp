#include "stein_hn/rational.hpp"

#include <stdexcept>

#include <mpfr.h>

namespace stein_hn {

double to_double(const Rational& q) {
  mpfr_t value;
  mpfr_init2(value, 128);
  mpfr_set_q(value, q.get_mpq_t(), MPFR_RNDN);
  const double result = mpfr_get_d(value, MPFR_RNDN);
  mpfr_clear(value);
  return result;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("parse_rational: empty string");
  const auto slash = text.find('/');
  auto parse_integer = [](std::string_view digits) {
    std::string_view body = digits;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
    if (body.empty() || body.find_first_not_of("0123456789") != std::string_view::npos) {
      throw std::invalid_argument("parse_rational: malformed integer '" + std::string(digits) + "'");
    }
    return Integer(std::string(digits.front() == '+' ? digits.substr(1) : digits), 10);
  };
  Rational result;
  if (slash == std::string_view::npos) {
    result = Rational(parse_integer(text));
  } else {
    const Integer num = parse_integer(text.substr(0, slash));
    const Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
    result = Rational(num, den);
    result.canonicalize();
  }
  return result;
}

}  // namespace stein_hn

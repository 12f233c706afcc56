#include "nbts/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "nbts/error.hpp"

namespace nbts {

namespace {

bool is_integer_literal(std::string_view text) {
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) text.remove_prefix(1);
  if (text.empty()) return false;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  const auto den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!is_integer_literal(num) || (slash != std::string_view::npos && !is_integer_literal(den))) {
    throw Error(ErrorKind::ParseError, "not an exact rational: '" + std::string(text) + "'");
  }
  if (!den.empty() && (den.front() == '-' || den.front() == '+')) {
    throw Error(ErrorKind::ParseError, "signed denominator: '" + std::string(text) + "'");
  }
  mpz_class n(std::string(num.front() == '+' ? num.substr(1) : num), 10);
  mpz_class d = 1;
  if (!den.empty()) d = mpz_class(std::string(den), 10);
  if (d == 0) throw Error(ErrorKind::ParseError, "zero denominator: '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) { return value.get_str(); }

Rational best_rational(double value, long max_denominator) {
  if (!std::isfinite(value)) throw Error(ErrorKind::InvalidArgument, "non-finite value");
  if (max_denominator < 1) throw Error(ErrorKind::InvalidArgument, "max_denominator < 1");
  const Rational exact(value);
  if (exact.get_den() <= max_denominator) return exact;

  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  mpz_class n = exact.get_num(), d = exact.get_den();
  const mpz_class limit = max_denominator;
  while (true) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    const mpz_class q2 = q0 + a * q1;
    if (q2 > limit) break;
    const mpz_class p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const mpz_class rem = n - a * d;
    n = d;
    d = rem;
    if (d == 0) break;
  }
  mpz_class k;
  mpz_fdiv_q(k.get_mpz_t(), mpz_class(limit - q0).get_mpz_t(), q1.get_mpz_t());
  Rational lower(p0 + k * p1, q0 + k * q1);
  Rational upper(p1, q1);
  lower.canonicalize();
  upper.canonicalize();
  return abs(upper - exact) <= abs(lower - exact) ? upper : lower;
}

bool lex_less(const RationalVector& lhs, const RationalVector& rhs) {
  return std::lexicographical_compare(lhs.begin(), lhs.end(), rhs.begin(), rhs.end());
}

}  // namespace nbts

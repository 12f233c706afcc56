#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace nbts {

// Exact rational in canonical form (GMP keeps lowest terms, positive denominator).
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// Parses "n" or "n/d" (optional leading '-'). Decimal notation is rejected so
/// that no floating-point value can enter an exact computation.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& value);

/// Best rational approximation with denominator <= max_denominator
/// (continued-fraction convergents and semiconvergents).
Rational best_rational(double value, long max_denominator);

bool lex_less(const RationalVector& lhs, const RationalVector& rhs);

}  // namespace nbts

#pragma once

#include <gmpxx.h>

#include <string>

namespace fdbound {

// Exact rational arithmetic for capacities, bounds and flows. GMP supplies
// the bignum substrate; this wrapper pins the parse/format contract.
using Rational = mpq_class;

// Parses a nonnegative-or-negative exact rational from decimal ("1", "1.5",
// "0.25") or fraction ("3/2") text. Throws ParseError on anything else,
// including zero denominators.
Rational parse_rational(const std::string& text);

// Canonical text: integers as "p", everything else as lowest-terms "p/q".
// parse_rational(format_rational(r)) == r for all r.
std::string format_rational(const Rational& r);

// Nearest double, for the float LP side.
double to_double(const Rational& r);

} // namespace fdbound

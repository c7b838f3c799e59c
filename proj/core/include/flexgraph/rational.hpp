#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace flexgraph {

/// Exact rational number. All combinatorial code works in this type; there
/// are no tolerances anywhere outside the simulator.
using Rational = mpq_class;

/// Parses "p", "p/q" or a finite decimal such as "-1.25" exactly.
/// Throws Error{ParseError} on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise (lowest terms).
std::string format_rational(const Rational& value);

Rational sum(std::span<const Rational> values);

bool is_integer(const Rational& value);

/// Largest c > 0 such that every value / c is a nonnegative integer. Zero
/// entries are ignored; throws ZeroVector if every entry is zero and
/// NegativeRate if any entry is negative.
Rational rational_gcd(std::span<const Rational> values);

/// Converts to double; only the simulator and reports use this.
double to_double(const Rational& value);

}  // namespace flexgraph

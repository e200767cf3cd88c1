#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace stutter {

/// Exact rational; gmpxx keeps arithmetic results canonical.
using Rational = mpq_class;

/// Parses `p/q`, an integer, or a finite decimal such as `0.25`.
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Always `p/q`, including integers (`1/1`, `0/1`).
std::string format_rational(const Rational& r);

}  // namespace stutter

#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace drum {

/// Arbitrary-precision rational. All exact arithmetic in the library goes
/// through this type.
using Rational = mpq_class;

/// Parses "p", "p/q", or a finite decimal such as "-0.125" exactly.
/// Throws drum::Error(InvalidInput) on malformed text or zero denominator.
Rational parseRational(std::string_view text);

/// Canonical "p/q" text (or "p" for integers).
std::string toString(const Rational& value);

inline double toDouble(const Rational& value) { return value.get_d(); }

}  // namespace drum

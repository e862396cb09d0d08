#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace bilistab {

/// Arbitrary-precision rational, kept in lowest terms with positive
/// denominator (canonical GMP representation).
using BigRational = mpq_class;

/// Exact rational value of a finite IEEE 754 double (every finite double
/// is a dyadic rational p/2^k). Throws ContractViolation on NaN/Inf.
BigRational double_to_rational(double x);

/// Nearest double to an arbitrary rational (round to nearest, ties to even).
double to_nearest_double(const BigRational& q);

/// Parses a decimal literal ("-12.5", "0.1", "3e-2", "7") to the exact
/// rational it denotes, independent of binary floating point.
BigRational parse_decimal_rational(std::string_view text);

/// Formats q as "p/q" (or "p" when the denominator is 1).
std::string rational_to_string(const BigRational& q);

}  // namespace bilistab

#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace ocg {

/// Exact rational scalar. GMP keeps results in lowest terms as long as
/// every input is canonical, which parse_value guarantees.
using Value = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                            boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

/// Accepts "p", "p/q" and plain decimals such as "0.01" or "-2.5".
/// Throws ocg::Error(ErrorKind::InvalidInput) on anything else.
Value parse_value(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string format_value(const Value& v);

Integer floor_integer(const Value& v);
Integer ceil_integer(const Value& v);
double to_double(const Value& v);

/// Largest-known lower rational approximation r of sqrt(x) with
/// sqrt(x) - r <= rel_tol * sqrt(x); exact when x is a rational square.
Value sqrt_lower(const Value& x, const Value& rel_tol);

}  // namespace ocg

#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <optional>
#include <string>

namespace nilpencil {

using Int = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                          boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                          boost::multiprecision::et_off>;

/// Parses "p/q" or "p"; the result is always canonical (reduced, den > 0).
Rat parse_rat(const std::string& s);

/// Serializes as "p/q", or "p" when the denominator is 1.
std::string rat_str(const Rat& r);

double rat_to_double(const Rat& r);

/// Exact conversion; every finite double is a dyadic rational.
Rat rat_from_double(double x);

/// Nearest rational with denominator <= max_den within reltol of x
/// (continued-fraction expansion), or nullopt.
std::optional<Rat> rat_reconstruct(double x, double reltol = 1e-9,
                                   long max_den = 1000000000L);

/// Exact square root when r is the square of a rational.
std::optional<Rat> rat_sqrt_exact(const Rat& r);

int rat_sign(const Rat& r);

}  // namespace nilpencil

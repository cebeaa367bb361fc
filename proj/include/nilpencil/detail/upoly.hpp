#pragma once

// Dense univariate polynomials over Q, coefficients ascending.
// The zero polynomial is the empty vector.

#include <complex>
#include <utility>
#include <vector>

#include "nilpencil/rational.hpp"

namespace nilpencil::detail {

using UPoly = std::vector<Rat>;

void up_trim(UPoly& p);
int up_deg(const UPoly& p);  // -1 for zero
bool up_is_zero(const UPoly& p);
UPoly up_const(const Rat& c);

UPoly up_add(const UPoly& a, const UPoly& b);
UPoly up_sub(const UPoly& a, const UPoly& b);
UPoly up_mul(const UPoly& a, const UPoly& b);
UPoly up_scale(const UPoly& a, const Rat& c);

/// Quotient and remainder; b must be nonzero.
std::pair<UPoly, UPoly> up_divmod(const UPoly& a, const UPoly& b);

/// Exact quotient or nullopt if the remainder is nonzero.
bool up_divide_exact(const UPoly& a, const UPoly& b, UPoly& quot);

UPoly up_monic(const UPoly& a);
UPoly up_gcd(const UPoly& a, const UPoly& b);  // monic (or zero)
UPoly up_deriv(const UPoly& a);
Rat up_eval(const UPoly& a, const Rat& x);
double up_eval_d(const UPoly& a, double x);

/// Yun's squarefree decomposition: returns (factor, multiplicity) pairs with
/// squarefree, pairwise coprime factors; input must be nonzero.
std::vector<std::pair<UPoly, int>> up_squarefree(const UPoly& a);

/// All complex roots by companion-matrix eigenvalues with Newton polish.
/// Input must be squarefree for full accuracy.
std::vector<std::complex<double>> up_roots(const UPoly& a);

/// Interpolating polynomial through (xs[i], ys[i]), xs distinct.
UPoly up_interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys);

}  // namespace nilpencil::detail

#pragma once

// Pre-Einstein derivations (Tr(phi psi) = Tr(psi) for all derivations psi)
// and eigenvalue types.

#include <optional>
#include <utility>

#include "nilpencil/algebra.hpp"
#include "nilpencil/pencil.hpp"

namespace nilpencil {

struct PreEinsteinDerivation {
    RatMatrix phi;  // (q+p) x (q+p), diagonal in the given basis
    std::vector<std::pair<Rat, int>> eigenvalues;  // sorted (value, multiplicity)
    std::optional<Rat> sigma;                      // closed-form parameter
};

/// Solves Tr(phi psi_k) = Tr(psi_k) over the derivation basis with phi
/// restricted to diagonal derivations. The basis must be adapted (canonical
/// presentations are); otherwise NonDiagonalTorus is thrown.
PreEinsteinDerivation solve_pre_einstein(const TwoStepAlgebra& n);

/// Closed form for generic-case canonical pencils: (1+sigma) on the regular
/// part, (1+sigma +- sigma/(2k_j+1)) on each singular block pair, 2(1+sigma)
/// on the center, sigma = -4 / (q + 8 - sum_j 1/(2k_j+1)).
PreEinsteinDerivation case1_pre_einstein(const PencilInvariants& inv);

struct EigenvalueType {
    std::vector<long> lambdas;   // coprime positive integers, increasing
    std::vector<int> dims;       // matching multiplicities
};

/// Spectrum of the certified Einstein derivation, rescaled to coprime
/// positive integers. Throws NotCertified when the residual exceeds tol.
EigenvalueType eigenvalue_type(const SolitonFit& fit, double tol = 1e-6);

}  // namespace nilpencil

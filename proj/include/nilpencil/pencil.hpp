#pragma once

// Projective invariants of skew-symmetric matrix pencils x*J1 + y*J2:
// reduced elementary divisors, minimal indices, common kernel, case tag.

#include <utility>
#include <vector>

#include "nilpencil/rat_matrix.hpp"

namespace nilpencil {

struct SkewPencil {
    int q = 0;
    RatMatrix J1, J2;

    SkewPencil() = default;
    SkewPencil(RatMatrix a, RatMatrix b);  // checks skewness and sizes
};

enum class Mode { Exact, Numeric };

enum class CaseTag { Case1, Case2, Case3 };

/// Reduced elementary divisor (x + root*y)^power.
struct RealDivisor {
    Rat root;
    int power = 1;
};

/// Reduced elementary divisor ((x + mu*y)^2 + (nu*y)^2)^power, nu > 0.
struct ComplexDivisor {
    Rat mu, nu;
    int power = 1;
};

bool operator==(const RealDivisor& a, const RealDivisor& b);
bool operator==(const ComplexDivisor& a, const ComplexDivisor& b);

struct PencilInvariants {
    std::vector<RealDivisor> real_divisors;
    std::vector<ComplexDivisor> complex_divisors;
    std::vector<int> minimal_indices;  // each >= 1, ascending
    int common_kernel_dim = 0;
    /// The divisors above belong to transform_pencil(p, variable_change);
    /// the change is chosen so no divisor is a pure power of y.
    RatMatrix variable_change;
    CaseTag case_tag = CaseTag::Case2;
};

/// New pencil in variables (x', y') where (x, y)^T = vc * (x', y')^T,
/// i.e. J1' = vc_11 J1 + vc_21 J2, J2' = vc_12 J1 + vc_22 J2.
SkewPencil transform_pencil(const SkewPencil& p, const RatMatrix& vc);

/// P * (x J1 + y J2) * P^T for invertible P.
SkewPencil congruence(const SkewPencil& p, const RatMatrix& P);

/// Pushes divisor roots through a variable change by the Mobius action
/// a' = (vc_12 + a*vc_22) / (vc_11 + a*vc_21); throws InternalError if a
/// root is sent to infinity (a pure y-power, not representable here).
PencilInvariants transform_invariants(const PencilInvariants& inv, const RatMatrix& vc);

/// Case1: >= 3 distinct root values (a conjugate pair counts as 2);
/// Case2: no complex divisors and <= 2 distinct roots;
/// Case3: complex divisors only, a single conjugate pair.
CaseTag case_tag_of(const std::vector<RealDivisor>& real,
                    const std::vector<ComplexDivisor>& complex);

/// Complete projective invariant. Exact mode requires rational divisor data
/// (throws UnsupportedError otherwise); numeric mode falls back to floating
/// root-finding and rank decisions with tolerance tol.
PencilInvariants compute_invariants(const SkewPencil& p, Mode mode = Mode::Exact,
                                    double tol = 1e-9);

/// Degrees of a homogeneous basis of the function-field kernel; degree-0
/// elements are returned as the common-kernel dimension, not as indices.
std::pair<std::vector<int>, int> minimal_indices(const SkewPencil& p);

}  // namespace nilpencil

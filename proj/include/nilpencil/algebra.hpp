#pragma once

// Two-step nilpotent Lie algebras of type (p, q): structure constants
// [X_i, X_j] = sum_a (J_a)_ij Z_a, derivations, Ricci data, duality.

#include <Eigen/Dense>
#include <vector>

#include "nilpencil/pencil.hpp"
#include "nilpencil/rat_matrix.hpp"

namespace nilpencil {

struct TwoStepAlgebra {
    int q = 0, p = 0;
    std::vector<RatMatrix> J;  // p skew-symmetric q x q matrices, independent

    TwoStepAlgebra() = default;
    explicit TwoStepAlgebra(std::vector<RatMatrix> matrices);  // validates
};

TwoStepAlgebra from_pencil(const SkewPencil& pencil);
TwoStepAlgebra from_tuple(std::vector<RatMatrix> matrices);

/// Basis of Der(n) as (q+p) x (q+p) matrices [[A1, 0], [U, M]] with
/// J_a A1 + A1^t J_a = sum_b M_ab J_b; includes all p*q U-block generators.
std::vector<RatMatrix> derivation_basis(const TwoStepAlgebra& n);

/// Whether D satisfies the derivation identity for n exactly.
bool is_derivation(const TwoStepAlgebra& n, const RatMatrix& D);

/// Inner product on b (+) m, block-diagonal across the split. Diagonal
/// metrics store the entries exp(2 s_a); full metrics a symmetric
/// positive-definite matrix.
struct MetricData {
    std::vector<Rat> diag;  // q+p entries; empty means "use full"
    RatMatrix full;

    bool is_diagonal() const { return !diag.empty(); }
    static MetricData identity(int n);
    static MetricData diagonal(std::vector<Rat> d);
    static MetricData diagonal_from_s(const std::vector<double>& s);  // exp(2s)
};

struct RicciData {
    Eigen::MatrixXd ric_b;  // q x q, -1/2 sum J~_a J~_a^t
    Eigen::MatrixXd ric_m;  // p x p, 1/4 Tr J~_a J~_b^t
    bool exact = false;     // rational fields valid (diagonal metric with
    RatMatrix ric_b_exact;  // rational square roots)
    RatMatrix ric_m_exact;
};

/// Structure matrices in a g-orthonormal basis:
/// (J~_a)_ij = sqrt(g_{q+a}) / (sqrt(g_i) sqrt(g_j)) (J_a)_ij for diagonal g.
std::vector<Eigen::MatrixXd> orthonormal_bracket(const TwoStepAlgebra& n,
                                                 const MetricData& g);

RicciData ricci(const TwoStepAlgebra& n, const MetricData& g);

struct SolitonFit {
    double C = 0;           // ric = C id + Phi + defect, Phi a derivation
    Eigen::MatrixXd Phi;    // in the g-orthonormal basis
    double residual = 0;    // Frobenius norm of the defect
    bool exact = false;
    Rat C_exact;
    RatMatrix Phi_exact;
};

/// Best (C, Phi in Der) approximation of ric in the orthonormal basis;
/// residual 0 certifies a nilsoliton metric.
SolitonFit nilsoliton_residual(const TwoStepAlgebra& n, const MetricData& g);

/// Type (D - p, q) algebra on an exact basis of the orthogonal complement of
/// span(J_a) in the skew matrices under Q(K1, K2) = -Tr(K1 K2).
TwoStepAlgebra dualize(const TwoStepAlgebra& n);

}  // namespace nilpencil

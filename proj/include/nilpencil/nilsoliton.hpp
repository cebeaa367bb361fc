#pragma once

// Nilsoliton metric construction: nice-basis linear algebra for the
// subsingular case, SL(2) convex minimization plus block scalings for the
// generic case, degeneration witnesses, and the explicit type-(D-1, q)
// family.

#include <Eigen/Dense>
#include <optional>

#include "nilpencil/algebra.hpp"
#include "nilpencil/pencil.hpp"
#include "nilpencil/pre_einstein.hpp"

namespace nilpencil {

/// One row per bracket [X_i, X_j] = c Z_a (i < j, c != 0): +1 in columns
/// i and j, -1 in column q + a; rows ordered by (a, i, j). Throws NotNice
/// when some pair feeds two targets or some (source, target) pair has two
/// partners.
RatMatrix build_nice_Y(const TwoStepAlgebra& n);

struct NiceBasisSolution {
    RatMatrix Y;             // m x (q+p); empty for the closed form
    std::vector<Rat> alpha;  // Y Y^t alpha = [1]_m (empty if inconsistent)
    bool positive = false;   // a strictly positive solution exists
    bool unique = false;     // Y Y^t invertible
    std::vector<double> s;   // Y s = sqrt(alpha), min-norm; set when positive

    // subsingular closed-form bookkeeping
    std::optional<Rat> nu1, nu2, delta;
};

/// Decides existence of alpha > 0 with Y Y^t alpha = [1]; exact linear
/// solve when Y Y^t is invertible, exact linear programming otherwise.
/// When positive, also solves for the metric exponents s.
NiceBasisSolution solve_alpha(const RatMatrix& Y);

/// Closed form of alpha for subsingular canonical pencils, assembled from
/// the per-block quadratic profiles with the two mixing weights nu1, nu2.
/// Throws WrongCase unless inv is subsingular.
NiceBasisSolution alpha_closed_form_case2(const PencilInvariants& inv);

enum class SL2Outcome { Converged, NoMinimum, IterationLimit };

struct SL2State {
    Eigen::Matrix2d S;     // h^t h, symmetric positive definite, det 1
    double logF = 0;
    Eigen::Matrix2d grad;  // traceless symmetric; ~0 at a critical point
    SL2Outcome outcome = SL2Outcome::IterationLimit;
    int iterations = 0;
};

/// Minimizes log F(S) = sum_u log Tr(S v_i v_i^t) + 2 sum_w log Tr(S M_i M_i^t)
/// over {S > 0, det S = 1}, v_i = (1, a_i)^t, M_i = [[1, 0], [mu_i, nu_i]].
/// The function is geodesically convex; gradient descent with backtracking
/// either converges (|grad| <= tol) or diverges along a ray (reported as
/// NoMinimum once |log S| exceeds a norm bound with decreasing objective).
/// Throws WrongCase on subsingular invariants.
SL2State sl2_minimize(const PencilInvariants& inv, double tol = 1e-12,
                      int max_iter = 20000);

struct NilsolitonCertificate {
    TwoStepAlgebra algebra;  // basis in which the metric below is expressed
    MetricData metric;
    double C = 0;            // ric = C id + Phi in the orthonormal basis
    Eigen::MatrixXd Phi;
    double ricci_residual = 0;
    double derivation_residual = 0;
    EigenvalueType type;
};

/// Builds the nilsoliton metric of the canonical generic-case algebra from
/// a converged SL(2) state: block scalings x_i, y_i, xi/theta from the
/// closed-form fourth powers (normalized so 2 C sigma = 1), the polynomial
/// representation blocks P_k(h), and the pulled-back metric g^t g; certifies
/// by the nilsoliton residual. Throws NotConverged unless the state
/// converged, Unsupported when some divisor power exceeds 1.
NilsolitonCertificate assemble_case1_metric(const PencilInvariants& inv,
                                            const SL2State& state);

/// Nilsoliton certificate for a subsingular algebra: diagonal metric
/// exp(2 s) from the nice-basis solution on the canonical presentation.
/// Throws WrongCase unless subsingular, NotCertified when alpha is not
/// positive.
NilsolitonCertificate case2_metric(const PencilInvariants& inv);

struct DegenerationWitness {
    Rat xi;                   // the over-represented root value
    int multiplicity = 0;     // m = #{i : a_i = xi} >= u/2 + w
    SkewPencil limit;         // blockwise limit of the degenerating curve
    PencilInvariants limit_invariants;  // differ from the input's
    // exponents of t/4 in the curve's block scalings x_i(t), y_i(t);
    // sum(2 x_rate) + sum(4 y_rate) = 0 keeps the curve in SL
    std::vector<int> x_rate, y_rate;
};

/// The degenerating curve's limit pencil for a generic-case algebra whose
/// root repetition bound fails: the pencil collapses to one with only the
/// divisors x and y and a common kernel, so the limit is non-isomorphic.
/// Throws ConditionHolds when the repetition bound holds (no witness),
/// Unsupported when some divisor power exceeds 1.
DegenerationWitness degeneration_witness(const PencilInvariants& inv);

/// The type (q(q-1)/2 - 1, q) algebra built on the scaled orthogonal
/// complement of sk(I_d) (+) 0_l, together with its exactly-known soliton
/// data. Requires q >= 3, d >= 1, l = q - 2d >= 0 (else BadDimensions).
struct DualHeisenberg {
    TwoStepAlgebra algebra;
    NilsolitonCertificate certificate;
    Rat r1_sq, r2_sq, r3_sq;  // d(q-1), qd-d-1, qd-d-2
    Rat c;                    // -((5+2q^2-3q)d + 2 - 4q)/4 when l > 0
    std::vector<Rat> lambdas;      // closed-form derivation eigenvalues
    std::vector<int> lambda_dims;
};

DualHeisenberg construct_dual_heisenberg(int q, int d);

/// Free two-step algebra on f generators, direct sum an abelian ideal R^a:
/// q = f + a, brackets [X_i, X_j] = Z_(i,j) for i < j <= f.
TwoStepAlgebra free_two_step(int f, int abelian = 0);

}  // namespace nilpencil

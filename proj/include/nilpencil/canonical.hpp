#pragma once

// Canonical block-diagonal pencils built from invariant data, plus random
// projectively-equivalent presentations for round-trip testing.

#include <cstdint>

#include "nilpencil/pencil.hpp"

namespace nilpencil {

struct CanonicalSpec {
    std::vector<RealDivisor> real_divisors;
    std::vector<ComplexDivisor> complex_divisors;
    std::vector<int> minimal_indices;
    int padding = 0;  // abelian padding (common-kernel dimension)

    int dimension() const;  // q = 2*sum l + 4*sum n + sum(2k+1) + padding
};

/// n x n identity, superdiagonal nilpotent, and diag(1..n).
RatMatrix block_I(int n);
RatMatrix block_N(int n);
RatMatrix block_D(int n);
/// k x (k+1): identity with a zero column appended (L) or prepended (R).
RatMatrix block_L(int k);
RatMatrix block_R(int k);
/// 2n x 2n block diagonal of [[0,1],[-1,0]].
RatMatrix block_Ic(int n2);
/// For m x n A: the (m+n) x (m+n) skew matrix [[0, A],[-A^t, 0]].
RatMatrix block_sk(const RatMatrix& A);

/// J1 = (+) sk(I_l) (+) sk(I_2n) (+) sk(L_k),
/// J2 = (+) sk(a I + N) (+) sk(mu I + nu Ic + N^2) (+) sk(R_k),
/// followed by zero padding; blocks in the spec's sequence order.
SkewPencil synthesize(const CanonicalSpec& spec);

/// The x^l / y^l presentation of the subsingular case: group-1 powers give
/// sk(I_l)/sk(N_l) blocks, group-2 powers sk(N_l)/sk(I_l).
SkewPencil synthesize_subsingular(const std::vector<int>& group1,
                                  const std::vector<int>& group2,
                                  const std::vector<int>& minimal_indices,
                                  int padding = 0);

struct Equivalence {
    SkewPencil pencil;
    RatMatrix P;                // congruence factor
    RatMatrix variable_change;  // applied after the congruence
};

/// P (x J1 + y J2) P^t composed with a random invertible change of (x, y);
/// P is a product of 4q elementary shears with entries in {-3..3}\{0}.
Equivalence random_equivalence_detail(const SkewPencil& p, std::uint64_t seed);
SkewPencil random_equivalence(const SkewPencil& p, std::uint64_t seed);

}  // namespace nilpencil

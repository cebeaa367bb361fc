#pragma once

// Matrices of homogeneous binary forms, e.g. the pencil x*J1 + y*J2.

#include <vector>

#include "nilpencil/binary_form.hpp"
#include "nilpencil/rat_matrix.hpp"

namespace nilpencil {

struct FormMatrix {
    int rows = 0, cols = 0;
    std::vector<BinaryForm> entries;  // row-major

    FormMatrix() = default;
    FormMatrix(int r, int c) : rows(r), cols(c), entries(size_t(r) * c) {}
    FormMatrix(int r, int c, std::vector<BinaryForm> e);

    BinaryForm& at(int i, int j) { return entries[size_t(i) * cols + j]; }
    const BinaryForm& at(int i, int j) const { return entries[size_t(i) * cols + j]; }

    /// Common degree of the nonzero entries, or 0 for the zero matrix.
    int entry_degree() const;
};

/// x*J1 + y*J2 as a degree-1 form matrix.
FormMatrix pencil_matrix(const RatMatrix& j1, const RatMatrix& j2);

RatMatrix form_matrix_eval(const FormMatrix& m, const Rat& x0, const Rat& y0);

/// Rank over the field of rational functions.
int generic_rank(const FormMatrix& m);

/// Monic-normalized GCD of all r x r minors; zero if they all vanish.
/// Dimensions above 20 are rejected (minor growth is exponential).
BinaryForm minors_gcd(const FormMatrix& m, int r);

}  // namespace nilpencil

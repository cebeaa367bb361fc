#pragma once

// Dense matrices over Q with exact elimination.

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "nilpencil/rational.hpp"

namespace nilpencil {

struct RatMatrix {
    int rows = 0, cols = 0;
    std::vector<Rat> entries;  // row-major, rows * cols

    RatMatrix() = default;
    RatMatrix(int r, int c) : rows(r), cols(c), entries(size_t(r) * c, Rat(0)) {}
    RatMatrix(int r, int c, std::vector<Rat> e);

    static RatMatrix identity(int n);

    Rat& at(int i, int j) { return entries[size_t(i) * cols + j]; }
    const Rat& at(int i, int j) const { return entries[size_t(i) * cols + j]; }

    bool is_zero() const;
    RatMatrix transpose() const;
    Eigen::MatrixXd to_double() const;
};

bool operator==(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator*(const Rat& c, const RatMatrix& a);

/// [a | b]
RatMatrix hstack(const RatMatrix& a, const RatMatrix& b);
/// [a ; b]
RatMatrix vstack(const RatMatrix& a, const RatMatrix& b);
/// Block diagonal.
RatMatrix dsum(const RatMatrix& a, const RatMatrix& b);

int mat_rank(const RatMatrix& a);

/// Pivot columns of the reduced row echelon form (a maximal independent
/// column set, preferring earlier columns).
std::vector<int> mat_pivot_cols(const RatMatrix& a);

/// Columns span ker(a); empty matrix (cols = 0) for trivial kernel.
RatMatrix mat_nullspace(const RatMatrix& a);

/// One solution of a x = b, or nullopt if inconsistent.
std::optional<RatMatrix> mat_solve(const RatMatrix& a, const RatMatrix& b);

/// Inverse, or nullopt if singular.
std::optional<RatMatrix> mat_inverse(const RatMatrix& a);

/// Fraction-free Bareiss determinant (square input).
Rat mat_det(const RatMatrix& a);

}  // namespace nilpencil

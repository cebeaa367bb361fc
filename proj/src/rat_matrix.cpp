#include "nilpencil/rat_matrix.hpp"

#include <algorithm>

#include "nilpencil/errors.hpp"

namespace nilpencil {

RatMatrix::RatMatrix(int r, int c, std::vector<Rat> e)
    : rows(r), cols(c), entries(std::move(e)) {
    if (r < 0 || c < 0 || entries.size() != size_t(r) * c)
        throw BadDimensionsError("matrix entry count mismatch");
}

RatMatrix RatMatrix::identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool RatMatrix::is_zero() const {
    return std::all_of(entries.begin(), entries.end(), [](const Rat& x) { return x == 0; });
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix t(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
}

Eigen::MatrixXd RatMatrix::to_double() const {
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rat_to_double(at(i, j));
    return m;
}

bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.rows == b.rows && a.cols == b.cols && a.entries == b.entries;
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw BadDimensionsError("matrix add");
    RatMatrix r = a;
    for (size_t i = 0; i < r.entries.size(); ++i) r.entries[i] += b.entries[i];
    return r;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw BadDimensionsError("matrix sub");
    RatMatrix r = a;
    for (size_t i = 0; i < r.entries.size(); ++i) r.entries[i] -= b.entries[i];
    return r;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols != b.rows) throw BadDimensionsError("matrix mul");
    RatMatrix r(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            const Rat& aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols; ++j) r.at(i, j) += aik * b.at(k, j);
        }
    return r;
}

RatMatrix operator*(const Rat& c, const RatMatrix& a) {
    RatMatrix r = a;
    for (auto& x : r.entries) x *= c;
    return r;
}

RatMatrix hstack(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows != b.rows) throw BadDimensionsError("hstack");
    RatMatrix r(a.rows, a.cols + b.cols);
    for (int i = 0; i < a.rows; ++i) {
        for (int j = 0; j < a.cols; ++j) r.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols; ++j) r.at(i, a.cols + j) = b.at(i, j);
    }
    return r;
}

RatMatrix vstack(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols != b.cols) throw BadDimensionsError("vstack");
    RatMatrix r(a.rows + b.rows, a.cols);
    std::copy(a.entries.begin(), a.entries.end(), r.entries.begin());
    std::copy(b.entries.begin(), b.entries.end(), r.entries.begin() + a.entries.size());
    return r;
}

RatMatrix dsum(const RatMatrix& a, const RatMatrix& b) {
    RatMatrix r(a.rows + b.rows, a.cols + b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) r.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows; ++i)
        for (int j = 0; j < b.cols; ++j) r.at(a.rows + i, a.cols + j) = b.at(i, j);
    return r;
}

namespace {

// Gauss-Jordan to reduced row echelon form; returns pivot columns.
std::vector<int> rref(RatMatrix& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols && row < m.rows; ++col) {
        int piv = -1;
        for (int i = row; i < m.rows; ++i)
            if (m.at(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(row, j));
        Rat inv = Rat(1) / m.at(row, col);
        for (int j = col; j < m.cols; ++j) m.at(row, j) *= inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == row) continue;
            Rat f = m.at(i, col);
            if (f == 0) continue;
            for (int j = col; j < m.cols; ++j) m.at(i, j) -= f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

int mat_rank(const RatMatrix& a) {
    RatMatrix m = a;
    return static_cast<int>(rref(m).size());
}

std::vector<int> mat_pivot_cols(const RatMatrix& a) {
    RatMatrix m = a;
    return rref(m);
}

RatMatrix mat_nullspace(const RatMatrix& a) {
    RatMatrix m = a;
    std::vector<int> pivots = rref(m);
    std::vector<bool> is_pivot(a.cols, false);
    for (int p : pivots) is_pivot[p] = true;
    int nfree = a.cols - static_cast<int>(pivots.size());
    RatMatrix ker(a.cols, nfree);
    int k = 0;
    for (int col = 0; col < a.cols; ++col) {
        if (is_pivot[col]) continue;
        ker.at(col, k) = 1;
        for (size_t r = 0; r < pivots.size(); ++r) ker.at(pivots[r], k) = -m.at(int(r), col);
        ++k;
    }
    return ker;
}

std::optional<RatMatrix> mat_solve(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows != b.rows) throw BadDimensionsError("solve");
    RatMatrix aug = hstack(a, b);
    std::vector<int> pivots = rref(aug);
    for (int p : pivots)
        if (p >= a.cols) return std::nullopt;  // inconsistent
    RatMatrix x(a.cols, b.cols);
    for (size_t r = 0; r < pivots.size(); ++r)
        for (int j = 0; j < b.cols; ++j) x.at(pivots[r], j) = aug.at(int(r), a.cols + j);
    return x;
}

std::optional<RatMatrix> mat_inverse(const RatMatrix& a) {
    if (a.rows != a.cols) throw BadDimensionsError("inverse of non-square matrix");
    RatMatrix aug = hstack(a, RatMatrix::identity(a.rows));
    std::vector<int> pivots = rref(aug);
    if (static_cast<int>(pivots.size()) != a.rows) return std::nullopt;
    RatMatrix inv(a.rows, a.rows);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.rows; ++j) inv.at(i, j) = aug.at(i, a.cols + j);
    return inv;
}

Rat mat_det(const RatMatrix& a) {
    if (a.rows != a.cols) throw BadDimensionsError("determinant of non-square matrix");
    int n = a.rows;
    if (n == 0) return Rat(1);
    // scale to integers, then fraction-free Bareiss
    Int lcm = 1;
    for (const auto& e : a.entries) lcm = boost::multiprecision::lcm(lcm, denominator(e));
    std::vector<Int> m(a.entries.size());
    for (size_t i = 0; i < m.size(); ++i)
        m[i] = numerator(a.entries[i]) * (lcm / denominator(a.entries[i]));
    auto at = [&](int i, int j) -> Int& { return m[size_t(i) * n + j]; };
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (at(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (at(i, k) != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) return Rat(0);
            for (int j = 0; j < n; ++j) std::swap(at(k, j), at(piv, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
        prev = at(k, k);
    }
    Rat det(at(n - 1, n - 1) * sign);
    Rat scale = Rat(Int(1), lcm);
    for (int i = 0; i < n; ++i) det *= scale;
    return det;
}

}  // namespace nilpencil

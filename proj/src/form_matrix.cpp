#include "nilpencil/form_matrix.hpp"

#include <algorithm>

#include "nilpencil/detail/upoly.hpp"
#include "nilpencil/errors.hpp"

namespace nilpencil {

using detail::UPoly;

FormMatrix::FormMatrix(int r, int c, std::vector<BinaryForm> e)
    : rows(r), cols(c), entries(std::move(e)) {
    if (r < 0 || c < 0 || entries.size() != size_t(r) * c)
        throw BadDimensionsError("form matrix entry count mismatch");
    int deg = -1;
    for (const auto& f : entries) {
        if (f.is_zero()) continue;
        if (deg < 0) deg = f.degree;
        if (f.degree != deg)
            throw BadDimensionsError("form matrix entries of mixed degree");
    }
}

int FormMatrix::entry_degree() const {
    for (const auto& f : entries)
        if (!f.is_zero()) return f.degree;
    return 0;
}

FormMatrix pencil_matrix(const RatMatrix& j1, const RatMatrix& j2) {
    if (j1.rows != j2.rows || j1.cols != j2.cols)
        throw BadDimensionsError("pencil matrices of different size");
    FormMatrix m(j1.rows, j1.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) {
            if (j1.at(i, j) == 0 && j2.at(i, j) == 0) continue;
            m.at(i, j) = BinaryForm(1, {j1.at(i, j), j2.at(i, j)});
        }
    return m;
}

RatMatrix form_matrix_eval(const FormMatrix& m, const Rat& x0, const Rat& y0) {
    RatMatrix r(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (!m.at(i, j).is_zero()) r.at(i, j) = form_eval(m.at(i, j), x0, y0);
    return r;
}

namespace {

// Substitute y = 1; by homogeneity this preserves rank and (after degree
// bookkeeping) minors.
std::vector<UPoly> dehomogenize_entries(const FormMatrix& m) {
    std::vector<UPoly> out(m.entries.size());
    for (size_t k = 0; k < m.entries.size(); ++k) {
        const BinaryForm& f = m.entries[k];
        if (f.is_zero()) continue;
        UPoly p(f.degree + 1, Rat(0));
        for (int t = 0; t <= f.degree; ++t) p[f.degree - t] = f.coeffs[t];
        detail::up_trim(p);
        out[k] = std::move(p);
    }
    return out;
}

UPoly exact_quot(const UPoly& a, const UPoly& b) {
    UPoly q;
    if (!detail::up_divide_exact(a, b, q))
        throw InternalError("fraction-free elimination division not exact");
    return q;
}

// Bareiss determinant of the square polynomial matrix held in work (size n).
UPoly poly_det(std::vector<UPoly> work, int n) {
    if (n == 0) return {Rat(1)};
    auto at = [&](int i, int j) -> UPoly& { return work[size_t(i) * n + j]; };
    UPoly prev{Rat(1)};
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (detail::up_is_zero(at(k, k))) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (!detail::up_is_zero(at(i, k))) {
                    piv = i;
                    break;
                }
            if (piv < 0) return {};
            for (int j = 0; j < n; ++j) std::swap(at(k, j), at(piv, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                at(i, j) = exact_quot(
                    detail::up_sub(detail::up_mul(at(i, j), at(k, k)),
                                   detail::up_mul(at(i, k), at(k, j))),
                    prev);
        prev = at(k, k);
    }
    UPoly d = at(n - 1, n - 1);
    if (sign < 0) d = detail::up_scale(d, Rat(-1));
    return d;
}

BinaryForm rehomogenize(const UPoly& p, int total_deg) {
    if (detail::up_is_zero(p)) return BinaryForm::zero();
    std::vector<Rat> c(total_deg + 1, Rat(0));
    for (size_t k = 0; k < p.size(); ++k) c[total_deg - k] = p[k];
    return BinaryForm(total_deg, std::move(c));
}

}  // namespace

int generic_rank(const FormMatrix& m) {
    std::vector<UPoly> work = dehomogenize_entries(m);
    int rows = m.rows, cols = m.cols;
    auto at = [&](int i, int j) -> UPoly& { return work[size_t(i) * cols + j]; };
    // fraction-free elimination with full pivoting; rank = pivot count
    UPoly prev{Rat(1)};
    int rank = 0;
    int n = std::min(rows, cols);
    for (int k = 0; k < n; ++k) {
        int pi = -1, pj = -1;
        for (int i = k; i < rows && pi < 0; ++i)
            for (int j = k; j < cols; ++j)
                if (!detail::up_is_zero(at(i, j))) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi < 0) break;
        if (pi != k)
            for (int j = 0; j < cols; ++j) std::swap(at(k, j), at(pi, j));
        if (pj != k)
            for (int i = 0; i < rows; ++i) std::swap(at(i, k), at(i, pj));
        ++rank;
        for (int i = k + 1; i < rows; ++i)
            for (int j = k + 1; j < cols; ++j)
                at(i, j) = exact_quot(
                    detail::up_sub(detail::up_mul(at(i, j), at(k, k)),
                                   detail::up_mul(at(i, k), at(k, j))),
                    prev);
        prev = at(k, k);
    }
    return rank;
}

BinaryForm minors_gcd(const FormMatrix& m, int r) {
    if (r < 1 || r > std::min(m.rows, m.cols))
        throw BadDimensionsError("minor order out of range");
    if (m.rows > 20 || m.cols > 20)
        throw BadDimensionsError("minor enumeration capped at dimension 20");
    std::vector<UPoly> work = dehomogenize_entries(m);
    int d = m.entry_degree();

    std::vector<int> ri(r), ci(r);
    for (int i = 0; i < r; ++i) ri[i] = ci[i] = i;
    auto advance = [](std::vector<int>& idx, int n) {
        int k = static_cast<int>(idx.size());
        for (int i = k - 1; i >= 0; --i) {
            if (idx[i] < n - k + i) {
                ++idx[i];
                for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                return true;
            }
        }
        return false;
    };

    UPoly g;              // running gcd of dehomogenized minors
    int max_deg = -1;     // largest z-degree among nonzero minors
    bool any_nonzero = false;
    std::vector<UPoly> sub(size_t(r) * r);
    do {
        std::vector<int> cj(ci);
        do {
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j)
                    sub[size_t(i) * r + j] = work[size_t(ri[i]) * m.cols + cj[j]];
            UPoly det = poly_det(sub, r);
            if (detail::up_is_zero(det)) continue;
            any_nonzero = true;
            max_deg = std::max(max_deg, detail::up_deg(det));
            g = detail::up_gcd(g, det);
            // once the polynomial part is trivial only the y-power can shrink,
            // which max_deg tracking handles; stop early when both are settled
            if (detail::up_deg(g) == 0 && max_deg == r * d) goto done;
        } while (advance(cj, m.cols));
    } while (advance(ri, m.rows));
done:
    if (!any_nonzero) return BinaryForm::zero();
    // Each minor form is y^(r*d - deg) * hom(poly); the form GCD carries the
    // smallest such y-power.
    return form_normalize(rehomogenize(g, detail::up_deg(g) + (r * d - max_deg)));
}

}  // namespace nilpencil

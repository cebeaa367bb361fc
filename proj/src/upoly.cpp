#include "nilpencil/detail/upoly.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "nilpencil/errors.hpp"

namespace nilpencil::detail {

void up_trim(UPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int up_deg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

bool up_is_zero(const UPoly& p) { return p.empty(); }

UPoly up_const(const Rat& c) {
    if (c == 0) return {};
    return {c};
}

UPoly up_add(const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()), Rat(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    up_trim(r);
    return r;
}

UPoly up_sub(const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()), Rat(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    up_trim(r);
    return r;
}

UPoly up_mul(const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    up_trim(r);
    return r;
}

UPoly up_scale(const UPoly& a, const Rat& c) {
    if (c == 0) return {};
    UPoly r = a;
    for (auto& x : r) x *= c;
    return r;
}

std::pair<UPoly, UPoly> up_divmod(const UPoly& a, const UPoly& b) {
    if (b.empty()) throw InternalError("polynomial division by zero");
    UPoly rem = a;
    up_trim(rem);
    if (rem.size() < b.size()) return {{}, rem};
    UPoly quot(rem.size() - b.size() + 1, Rat(0));
    const Rat& lead = b.back();
    for (int i = static_cast<int>(quot.size()) - 1; i >= 0; --i) {
        if (rem.size() < b.size() + i) continue;
        if (rem.size() != b.size() + i) continue;
        Rat c = rem.back() / lead;
        quot[i] = c;
        for (size_t j = 0; j < b.size(); ++j) rem[i + j] -= c * b[j];
        up_trim(rem);
    }
    return {quot, rem};
}

bool up_divide_exact(const UPoly& a, const UPoly& b, UPoly& quot) {
    auto [q, r] = up_divmod(a, b);
    if (!r.empty()) return false;
    quot = std::move(q);
    return true;
}

UPoly up_monic(const UPoly& a) {
    if (a.empty()) return {};
    UPoly r = a;
    Rat inv = Rat(1) / r.back();
    for (auto& x : r) x *= inv;
    return r;
}

UPoly up_gcd(const UPoly& a, const UPoly& b) {
    UPoly x = a, y = b;
    up_trim(x);
    up_trim(y);
    while (!y.empty()) {
        auto [q, r] = up_divmod(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return up_monic(x);
}

UPoly up_deriv(const UPoly& a) {
    if (a.size() <= 1) return {};
    UPoly r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * Rat(static_cast<long>(i));
    up_trim(r);
    return r;
}

Rat up_eval(const UPoly& a, const Rat& x) {
    Rat r(0);
    for (auto it = a.rbegin(); it != a.rend(); ++it) r = r * x + *it;
    return r;
}

double up_eval_d(const UPoly& a, double x) {
    double r = 0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) r = r * x + rat_to_double(*it);
    return r;
}

std::vector<std::pair<UPoly, int>> up_squarefree(const UPoly& a) {
    if (a.empty()) throw InternalError("squarefree decomposition of zero");
    std::vector<std::pair<UPoly, int>> out;
    UPoly p = up_monic(a);
    if (p.size() == 1) return out;
    // Yun's algorithm
    UPoly dp = up_deriv(p);
    UPoly g = up_gcd(p, dp);
    UPoly w, y;
    up_divide_exact(p, g, w);
    up_divide_exact(dp, g, y);
    int i = 1;
    while (up_deg(w) > 0) {
        UPoly z = up_sub(y, up_deriv(w));
        UPoly f = up_gcd(w, z);
        if (up_deg(f) > 0) out.emplace_back(f, i);
        UPoly w2, y2;
        up_divide_exact(w, f, w2);
        up_divide_exact(z, f, y2);
        w = std::move(w2);
        y = std::move(y2);
        ++i;
    }
    return out;
}

std::vector<std::complex<double>> up_roots(const UPoly& a) {
    UPoly p = a;
    up_trim(p);
    int n = up_deg(p);
    if (n <= 0) return {};
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
    double lead = rat_to_double(p.back());
    for (int i = 0; i < n; ++i) {
        C(i, n - 1) = -rat_to_double(p[i]) / lead;
        if (i > 0) C(i, i - 1) = 1.0;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
    std::vector<std::complex<double>> roots;
    UPoly dp = up_deriv(p);
    for (int i = 0; i < n; ++i) {
        std::complex<double> z = es.eigenvalues()(i);
        // Newton polish (helps when coefficients are large)
        for (int it = 0; it < 8; ++it) {
            std::complex<double> pv(0), dv(0);
            for (auto cit = p.rbegin(); cit != p.rend(); ++cit)
                pv = pv * z + rat_to_double(*cit);
            for (auto cit = dp.rbegin(); cit != dp.rend(); ++cit)
                dv = dv * z + rat_to_double(*cit);
            if (std::abs(dv) < 1e-300) break;
            std::complex<double> step = pv / dv;
            z -= step;
            if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
        }
        roots.push_back(z);
    }
    return roots;
}

UPoly up_interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
    if (xs.size() != ys.size()) throw InternalError("interpolation size mismatch");
    // Newton form, expanded incrementally.
    size_t n = xs.size();
    std::vector<Rat> coef(ys);  // divided differences
    for (size_t j = 1; j < n; ++j)
        for (size_t i = n - 1; i >= j; --i) {
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j]);
            if (i == j) break;
        }
    UPoly result;    // accumulated polynomial
    UPoly basis{Rat(1)};  // product of (t - xs[k]) for k < i
    for (size_t i = 0; i < n; ++i) {
        result = up_add(result, up_scale(basis, coef[i]));
        basis = up_mul(basis, UPoly{-xs[i], Rat(1)});
    }
    return result;
}

}  // namespace nilpencil::detail

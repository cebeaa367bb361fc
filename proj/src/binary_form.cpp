#include "nilpencil/binary_form.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nilpencil/detail/upoly.hpp"
#include "nilpencil/errors.hpp"

namespace nilpencil {

using detail::UPoly;

BinaryForm::BinaryForm(int deg, std::vector<Rat> c) : degree(deg), coeffs(std::move(c)) {
    if (degree < 0 || coeffs.size() != static_cast<size_t>(degree) + 1)
        throw InternalError("binary form with inconsistent degree");
    if (is_zero() && degree != 0) {
        degree = 0;
        coeffs = {Rat(0)};
    }
}

BinaryForm BinaryForm::quadratic(const Rat& mu, const Rat& nu2) {
    return BinaryForm(2, {Rat(1), 2 * mu, mu * mu + nu2});
}

bool BinaryForm::is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const Rat& c) { return c == 0; });
}

int BinaryForm::leading_index() const {
    for (size_t t = 0; t < coeffs.size(); ++t)
        if (coeffs[t] != 0) return static_cast<int>(t);
    return -1;
}

std::string BinaryForm::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int t = 0; t <= degree; ++t) {
        const Rat& c = coeffs[t];
        if (c == 0) continue;
        Rat a = c < 0 ? Rat(-c) : c;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        int xp = degree - t, yp = t;
        bool hasvar = xp > 0 || yp > 0;
        if (a != 1 || !hasvar) os << rat_str(a);
        if (xp > 0) {
            os << "x";
            if (xp > 1) os << "^" << xp;
        }
        if (yp > 0) {
            os << "y";
            if (yp > 1) os << "^" << yp;
        }
    }
    return os.str();
}

bool operator==(const BinaryForm& a, const BinaryForm& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.degree == b.degree && a.coeffs == b.coeffs;
}

BinaryForm operator+(const BinaryForm& a, const BinaryForm& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.degree != b.degree) throw InternalError("adding forms of different degree");
    std::vector<Rat> c(a.coeffs);
    for (size_t i = 0; i < c.size(); ++i) c[i] += b.coeffs[i];
    return BinaryForm(a.degree, std::move(c));
}

BinaryForm operator-(const BinaryForm& a, const BinaryForm& b) {
    return a + (Rat(-1) * b);
}

BinaryForm operator*(const BinaryForm& a, const BinaryForm& b) {
    if (a.is_zero() || b.is_zero()) return BinaryForm::zero();
    int deg = a.degree + b.degree;
    std::vector<Rat> c(deg + 1, Rat(0));
    for (int s = 0; s <= a.degree; ++s)
        for (int t = 0; t <= b.degree; ++t) c[s + t] += a.coeffs[s] * b.coeffs[t];
    return BinaryForm(deg, std::move(c));
}

BinaryForm operator*(const Rat& c, const BinaryForm& a) {
    if (c == 0 || a.is_zero()) return BinaryForm::zero();
    std::vector<Rat> v(a.coeffs);
    for (auto& x : v) x *= c;
    return BinaryForm(a.degree, std::move(v));
}

BinaryForm form_pow(const BinaryForm& a, int e) {
    BinaryForm r = BinaryForm::constant(Rat(1));
    for (int i = 0; i < e; ++i) r = r * a;
    return r;
}

Rat form_eval(const BinaryForm& f, const Rat& x0, const Rat& y0) {
    // sum over t of c[t] x0^(d-t) y0^t
    Rat r(0);
    std::vector<Rat> ypow(f.degree + 1);
    ypow[0] = 1;
    for (int t = 1; t <= f.degree; ++t) ypow[t] = ypow[t - 1] * y0;
    Rat xp(1);
    for (int t = f.degree; t >= 0; --t) {
        r += f.coeffs[t] * xp * ypow[t];
        xp *= x0;
    }
    return r;
}

namespace {

// f = y^ypow * hom(p) where p(z) = f(z, 1) has exact degree d - ypow.
std::pair<UPoly, int> dehomogenize(const BinaryForm& f) {
    UPoly p(f.degree + 1, Rat(0));
    for (int t = 0; t <= f.degree; ++t) p[f.degree - t] = f.coeffs[t];
    detail::up_trim(p);
    int ypow = f.degree - detail::up_deg(p);
    return {std::move(p), ypow};
}

BinaryForm homogenize(const UPoly& p, int deg) {
    if (detail::up_is_zero(p)) return BinaryForm::zero();
    std::vector<Rat> c(deg + 1, Rat(0));
    for (size_t k = 0; k < p.size(); ++k) c[deg - k] = p[k];
    return BinaryForm(deg, std::move(c));
}

}  // namespace

BinaryForm form_normalize(const BinaryForm& f) {
    int li = f.leading_index();
    if (li < 0) return BinaryForm::zero();
    return (Rat(1) / f.coeffs[li]) * f;
}

std::optional<BinaryForm> form_divide_exact(const BinaryForm& f, const BinaryForm& g) {
    if (g.is_zero()) return std::nullopt;
    if (f.is_zero()) return BinaryForm::zero();
    if (f.degree < g.degree) return std::nullopt;
    auto [pf, yf] = dehomogenize(f);
    auto [pg, yg] = dehomogenize(g);
    if (yf < yg) return std::nullopt;
    UPoly q;
    if (!detail::up_divide_exact(pf, pg, q)) return std::nullopt;
    return homogenize(q, f.degree - g.degree);
}

BinaryForm gcd_forms(const BinaryForm& a, const BinaryForm& b) {
    if (a.is_zero()) return form_normalize(b);
    if (b.is_zero()) return form_normalize(a);
    auto [pa, ya] = dehomogenize(a);
    auto [pb, yb] = dehomogenize(b);
    UPoly g = detail::up_gcd(pa, pb);
    int yg = std::min(ya, yb);
    return form_normalize(homogenize(g, detail::up_deg(g) + yg));
}

namespace {

// Extracts all rational roots of monic squarefree s (exact verification);
// divides them out of s in place.
std::vector<Rat> take_rational_roots(UPoly& s, const std::vector<std::complex<double>>& roots,
                                     double tol) {
    std::vector<Rat> found;
    for (const auto& z : roots) {
        if (std::abs(z.imag()) > tol * (1.0 + std::abs(z))) continue;
        for (double rt : {1e-12, 1e-9, 1e-6}) {
            auto cand = rat_reconstruct(z.real(), rt);
            if (!cand) continue;
            if (detail::up_eval(s, *cand) != 0) continue;
            UPoly q;
            if (!detail::up_divide_exact(s, UPoly{-*cand, Rat(1)}, q)) continue;
            s = std::move(q);
            found.push_back(*cand);
            break;
        }
    }
    return found;
}

}  // namespace

Factorization factor_form(const BinaryForm& f, FactorMode mode, double tol) {
    if (f.is_zero()) throw SpecInvalidError("cannot factor the zero form");
    Factorization out;
    auto [p, ypow] = dehomogenize(f);
    if (ypow > 0) out.factors.push_back({BinaryForm::y(), ypow});
    out.scale = p.back();
    if (detail::up_deg(p) == 0) return out;
    UPoly m = detail::up_monic(p);

    for (auto& [s, mult] : detail::up_squarefree(m)) {
        auto roots = detail::up_roots(s);
        if (mode == FactorMode::Exact) {
            for (const Rat& a : take_rational_roots(s, roots, 1e-7))
                out.factors.push_back({BinaryForm::linear(-a), mult});
            // remaining factor must split into rational irreducible quadratics
            while (detail::up_deg(s) > 0) {
                if (detail::up_deg(s) == 1)
                    throw UnsupportedError("irrational real root: " + f.str());
                bool took = false;
                auto rem_roots = detail::up_roots(s);
                for (const auto& z : rem_roots) {
                    if (z.imag() <= 0) continue;
                    double b = -2.0 * z.real();
                    double c = std::norm(z);
                    for (double rt : {1e-12, 1e-9, 1e-6}) {
                        auto rb = rat_reconstruct(b, rt);
                        auto rc = rat_reconstruct(c, rt);
                        if (!rb || !rc) continue;
                        UPoly quad{*rc, *rb, Rat(1)}, q;
                        if (!detail::up_divide_exact(s, quad, q)) continue;
                        Rat mu = *rb / 2;
                        Rat nu2 = *rc - mu * mu;
                        if (nu2 <= 0) continue;
                        out.factors.push_back({BinaryForm::quadratic(mu, nu2), mult});
                        s = std::move(q);
                        took = true;
                        break;
                    }
                    if (took) break;
                }
                if (!took)
                    throw UnsupportedError("no rational factorization: " + f.str());
            }
        } else {
            // numeric: cluster conjugate pairs, accept floating roots as-is
            std::vector<std::complex<double>> pending(roots);
            while (!pending.empty()) {
                auto z = pending.back();
                pending.pop_back();
                if (std::abs(z.imag()) <= tol * (1.0 + std::abs(z))) {
                    out.factors.push_back({BinaryForm::linear(rat_from_double(-z.real())), mult});
                    continue;
                }
                auto conj = std::min_element(
                    pending.begin(), pending.end(), [&](const auto& a, const auto& b) {
                        return std::abs(a - std::conj(z)) < std::abs(b - std::conj(z));
                    });
                if (conj != pending.end()) pending.erase(conj);
                double mu = z.real(), nu = std::abs(z.imag());
                // factor has roots mu +- i nu, i.e. x^2 - 2 mu xy + |z|^2 y^2
                out.factors.push_back(
                    {BinaryForm::quadratic(rat_from_double(-mu), rat_from_double(nu * nu)), mult});
            }
        }
    }

    if (mode == FactorMode::Exact) {
        BinaryForm prod = BinaryForm::constant(out.scale);
        for (const auto& [fac, mult] : out.factors) prod = prod * form_pow(fac, mult);
        if (!(prod == f)) throw InternalError("factorization does not re-multiply");
    }
    return out;
}

}  // namespace nilpencil

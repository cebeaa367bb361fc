#include "nilpencil/nilsoliton.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

#include "nilpencil/canonical.hpp"
#include "nilpencil/classifier.hpp"
#include "nilpencil/errors.hpp"

namespace nilpencil {

namespace {

Rat rat2(long n, long d) { return Rat(Int(n), Int(d)); }

// --- exact linear programming (two-phase simplex, Bland's rule) ---

enum class LPStatus { Optimal, Unbounded, Infeasible };

struct LPResult {
    LPStatus status = LPStatus::Infeasible;
    Rat value;
    std::vector<Rat> x;
};

struct Tableau {
    // rows of [A | b], basis per row; reduced costs maintained separately
    std::vector<std::vector<Rat>> A;
    std::vector<Rat> b;
    std::vector<int> basis;
    int n = 0;

    void pivot(int r, int c) {
        Rat piv = A[r][c];
        for (int j = 0; j < n; ++j) A[r][j] /= piv;
        b[r] /= piv;
        for (size_t i = 0; i < A.size(); ++i) {
            if (static_cast<int>(i) == r || A[i][c] == 0) continue;
            Rat f = A[i][c];
            for (int j = 0; j < n; ++j) A[i][j] -= f * A[r][j];
            b[i] -= f * b[r];
        }
        basis[r] = c;
    }

    // maximize c^T x from the current feasible basis; allowed[j] gates entry
    LPStatus optimize(const std::vector<Rat>& cost, const std::vector<bool>& allowed) {
        for (;;) {
            // reduced costs r_j = c_j - c_B^T B^{-1} A_j via current rows
            int enter = -1;
            for (int j = 0; j < n && enter < 0; ++j) {
                if (!allowed[j]) continue;
                bool basic = false;
                for (int bi : basis)
                    if (bi == j) basic = true;
                if (basic) continue;
                Rat rj = cost[j];
                for (size_t i = 0; i < A.size(); ++i) rj -= cost[basis[i]] * A[i][j];
                if (rj > 0) enter = j;  // Bland: first improving index
            }
            if (enter < 0) return LPStatus::Optimal;
            int leave = -1;
            Rat best;
            for (size_t i = 0; i < A.size(); ++i) {
                if (A[i][enter] <= 0) continue;
                Rat ratio = b[i] / A[i][enter];
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis[i] < basis[leave]))
                    leave = static_cast<int>(i), best = ratio;
            }
            if (leave < 0) return LPStatus::Unbounded;
            pivot(leave, enter);
        }
    }
};

// maximize cost^T x subject to A x = b, x >= 0
LPResult simplex_max(const RatMatrix& A, const std::vector<Rat>& b,
                     const std::vector<Rat>& cost) {
    int m = A.rows, n = A.cols;
    Tableau t;
    t.n = n + m;  // original variables then artificials
    t.A.assign(m, std::vector<Rat>(t.n, Rat(0)));
    t.b.resize(m);
    t.basis.resize(m);
    for (int i = 0; i < m; ++i) {
        Rat sgn = b[i] < 0 ? Rat(-1) : Rat(1);
        for (int j = 0; j < n; ++j) t.A[i][j] = sgn * A.at(i, j);
        t.b[i] = sgn * b[i];
        t.A[i][n + i] = 1;
        t.basis[i] = n + i;
    }
    std::vector<bool> all(t.n, true);
    std::vector<Rat> phase1(t.n, Rat(0));
    for (int i = 0; i < m; ++i) phase1[n + i] = -1;
    t.optimize(phase1, all);
    Rat art_sum(0);
    for (int i = 0; i < m; ++i)
        if (t.basis[i] >= n) art_sum += t.b[i];
    if (art_sum != 0) return {LPStatus::Infeasible, Rat(0), {}};
    // drive leftover zero-value artificials out of the basis where possible
    for (int i = 0; i < m; ++i) {
        if (t.basis[i] < n) continue;
        int c = -1;
        for (int j = 0; j < n && c < 0; ++j)
            if (t.A[i][j] != 0) c = j;
        if (c >= 0) t.pivot(i, c);
    }
    std::vector<bool> orig(t.n, false);
    for (int j = 0; j < n; ++j) orig[j] = true;
    std::vector<Rat> full_cost(t.n, Rat(0));
    for (int j = 0; j < n; ++j) full_cost[j] = cost[j];
    LPStatus st = t.optimize(full_cost, orig);
    LPResult out;
    out.status = st;
    if (st == LPStatus::Unbounded) return out;
    out.x.assign(n, Rat(0));
    for (int i = 0; i < m; ++i)
        if (t.basis[i] < n) out.x[t.basis[i]] = t.b[i];
    out.value = Rat(0);
    for (int j = 0; j < n; ++j) out.value += cost[j] * out.x[j];
    return out;
}

// --- small helpers ---

long binomial(int n, int k) {
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Matrix of the change of variables by g^{-1} on homogeneous polynomials of
// degree k-1 in the basis x^{k-1}, x^{k-2} y, ..., y^{k-1}: row i holds the
// coefficients of (a x + b y)^{k-i} (c x + d y)^{i-1} for g^{-1} = (a b; c d).
Eigen::MatrixXd poly_rep(const Eigen::Matrix2d& g, int k) {
    Eigen::Matrix2d m = g.inverse();
    double a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(k, k);
    for (int i = 1; i <= k; ++i) {
        std::vector<double> p1(k - i + 1), p2(i);
        for (int s = 0; s <= k - i; ++s)
            p1[s] = binomial(k - i, s) * std::pow(a, k - i - s) * std::pow(b, s);
        for (int s = 0; s <= i - 1; ++s)
            p2[s] = binomial(i - 1, s) * std::pow(c, i - 1 - s) * std::pow(d, s);
        for (size_t s = 0; s < p1.size(); ++s)
            for (size_t u = 0; u < p2.size(); ++u)
                P(i - 1, static_cast<int>(s + u)) += p1[s] * p2[u];
    }
    return P;
}

RatMatrix rat_from_eigen(const Eigen::MatrixXd& M) {
    RatMatrix out(static_cast<int>(M.rows()), static_cast<int>(M.cols()));
    for (int i = 0; i < out.rows; ++i)
        for (int j = 0; j < out.cols; ++j) out.at(i, j) = rat_from_double(M(i, j));
    return out;
}

double derivation_defect(const std::vector<Eigen::MatrixXd>& J,
                         const Eigen::MatrixXd& Phi, int q, int p) {
    Eigen::MatrixXd A1 = Phi.topLeftCorner(q, q);
    Eigen::MatrixXd M = Phi.bottomRightCorner(p, p);
    double defect = 0;
    for (int a = 0; a < p; ++a) {
        Eigen::MatrixXd R = J[a] * A1 + A1.transpose() * J[a];
        for (int b = 0; b < p; ++b) R -= M(a, b) * J[b];
        defect += R.squaredNorm();
    }
    return std::sqrt(defect);
}

NilsolitonCertificate certify(const TwoStepAlgebra& n, const MetricData& g) {
    SolitonFit fit = nilsoliton_residual(n, g);
    NilsolitonCertificate cert;
    cert.algebra = n;
    cert.metric = g;
    cert.C = fit.C;
    cert.Phi = fit.Phi;
    cert.ricci_residual = fit.residual;
    cert.derivation_residual =
        derivation_defect(orthonormal_bracket(n, g), fit.Phi, n.q, n.p);
    cert.type = eigenvalue_type(fit);
    return cert;
}

std::vector<Rat> generic_roots(const PencilInvariants& inv) {
    if (inv.case_tag == CaseTag::Case2)
        throw WrongCaseError("applies to the generic case only");
    for (const auto& d : inv.real_divisors)
        if (d.power != 1)
            throw UnsupportedError("divisor powers above 1 are not handled here");
    for (const auto& d : inv.complex_divisors)
        if (d.power != 1)
            throw UnsupportedError("divisor powers above 1 are not handled here");
    std::vector<Rat> roots;
    for (const auto& d : inv.real_divisors) roots.push_back(d.root);
    return roots;
}

}  // namespace

RatMatrix build_nice_Y(const TwoStepAlgebra& n) {
    int q = n.q, p = n.p;
    std::vector<std::tuple<int, int, int>> rows;  // (a, i, j)
    for (int i = 0; i < q; ++i)
        for (int j = i + 1; j < q; ++j) {
            int target = -1;
            for (int a = 0; a < p; ++a)
                if (n.J[a].at(i, j) != 0) {
                    if (target >= 0)
                        throw NotNiceError("a bracket feeds two center directions");
                    target = a;
                }
            if (target >= 0) rows.emplace_back(target, i, j);
        }
    for (int a = 0; a < p; ++a)
        for (int i = 0; i < q; ++i) {
            int partners = 0;
            for (int j = 0; j < q; ++j)
                if (n.J[a].at(i, j) != 0) ++partners;
            if (partners > 1)
                throw NotNiceError("a basis vector pairs twice into one center direction");
        }
    std::sort(rows.begin(), rows.end());
    RatMatrix Y(static_cast<int>(rows.size()), q + p);
    for (size_t r = 0; r < rows.size(); ++r) {
        auto [a, i, j] = rows[r];
        Y.at(static_cast<int>(r), i) = 1;
        Y.at(static_cast<int>(r), j) = 1;
        Y.at(static_cast<int>(r), q + a) = -1;
    }
    return Y;
}

NiceBasisSolution solve_alpha(const RatMatrix& Y) {
    int m = Y.rows, cols = Y.cols;
    NiceBasisSolution out;
    out.Y = Y;
    RatMatrix A = Y * Y.transpose();
    RatMatrix ones(m, 1);
    for (int i = 0; i < m; ++i) ones.at(i, 0) = 1;
    if (mat_rank(A) == m) {
        auto sol = mat_solve(A, ones);
        out.unique = true;
        out.positive = true;
        for (int i = 0; i < m; ++i) {
            out.alpha.push_back(sol->at(i, 0));
            if (sol->at(i, 0) <= 0) out.positive = false;
        }
    } else {
        // maximize eps subject to A gamma + eps A 1 = 1, eps <= 1;
        // a maximizer with eps > 0 yields alpha = gamma + eps 1 > 0
        RatMatrix lp(m + 1, m + 2);
        std::vector<Rat> rhs(m + 1, Rat(1)), cost(m + 2, Rat(0));
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) lp.at(i, j) = A.at(i, j);
            Rat rowsum(0);
            for (int j = 0; j < m; ++j) rowsum += A.at(i, j);
            lp.at(i, m) = rowsum;
        }
        lp.at(m, m) = 1;
        lp.at(m, m + 1) = 1;  // slack for eps <= 1
        cost[m] = 1;
        LPResult res = simplex_max(lp, rhs, cost);
        if (res.status == LPStatus::Optimal && res.value > 0) {
            out.positive = true;
            for (int i = 0; i < m; ++i) out.alpha.push_back(res.x[i] + res.value);
        } else {
            auto sol = mat_solve(A, ones);  // report some solution if any
            if (sol)
                for (int i = 0; i < m; ++i) out.alpha.push_back(sol->at(i, 0));
        }
    }
    if (out.positive) {
        // orthonormalized structure constants must satisfy c~_r^2 = alpha_r
        // up to a common factor; with unit canonical constants this reads
        // (Y s)_r = -1/2 log alpha_r (the factor is a uniform shift of s,
        // absorbed since Y [1] = [1])
        Eigen::MatrixXd Yd = Eigen::MatrixXd::Zero(m, cols);
        Eigen::VectorXd r(m);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < cols; ++j) Yd(i, j) = rat_to_double(Y.at(i, j));
            r(i) = -0.5 * std::log(rat_to_double(out.alpha[i]));
        }
        Eigen::VectorXd s = Yd.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(r);
        out.s.assign(s.data(), s.data() + cols);
    }
    return out;
}

NiceBasisSolution alpha_closed_form_case2(const PencilInvariants& inv) {
    if (inv.case_tag != CaseTag::Case2)
        throw WrongCaseError("closed form applies to the subsingular case only");
    Verdict v = classify(inv);
    Rat L1(0), L2(0), N1(0), N2(0), K1(0), K2(0);
    for (int l : v.group1) {
        L1 += rat2(1L * l * l * l + 2 * l, 6);
        L2 += rat2(1L * l * l * l - l, 6);
    }
    for (int l : v.group2) {
        N1 += rat2(1L * l * l * l + 2 * l, 6);
        N2 += rat2(1L * l * l * l - l, 6);
    }
    for (int k : inv.minimal_indices) {
        K1 += rat2(1L * k * (k + 1) * (k * k + k + 1), 3L * (2 * k + 1));
        K2 += rat2(1L * k * (k + 1) * (2 * k * k + 2 * k - 1), 6L * (2 * k + 1));
    }
    Rat K = K1 + K2;
    Rat delta = (1 + L1 + N2 + K1) * (1 + L2 + N1 + K1) - (L2 + N2 + K2) * (L2 + N2 + K2);
    Rat nu1 = (1 + 2 * L2 + N1 + N2 + K) / delta;
    Rat nu2 = (1 + L1 + L2 + 2 * N2 + K) / delta;

    NiceBasisSolution out;
    out.unique = true;
    out.nu1 = nu1;
    out.nu2 = nu2;
    out.delta = delta;
    auto& a = out.alpha;
    // first the profiles paired with the Z1-brackets, then those with Z2
    for (int l : v.group1)
        for (int t = 1; t <= l; ++t)
            a.push_back((nu2 - nu1) * t * t + (nu1 - nu2) * (l + 1) * t +
                        (nu2 * (l + 1) - nu1 * l) / 2);
    for (int l : v.group2)
        for (int t = 1; t <= l - 1; ++t) a.push_back((nu2 - nu1) * (t * t - l * t));
    for (int k : inv.minimal_indices)
        for (int t = 1; t <= k; ++t)
            a.push_back((Rat(k + 1 - t) *
                         (t * (nu1 - nu2) * (2 * k + 1) + nu2 * (k + 1) - nu1 * k)) /
                        (2 * k + 1));
    for (int l : v.group1)
        for (int t = 1; t <= l - 1; ++t) a.push_back((nu1 - nu2) * (t * t - l * t));
    for (int l : v.group2)
        for (int t = 1; t <= l; ++t)
            a.push_back((nu1 - nu2) * t * t + (nu2 - nu1) * (l + 1) * t +
                        (nu1 * (l + 1) - nu2 * l) / 2);
    for (int k : inv.minimal_indices)
        for (int t = 1; t <= k; ++t)
            a.push_back((Rat(t) *
                         ((k + 1 - t) * (nu2 - nu1) * (2 * k + 1) + nu1 * (k + 1) - nu2 * k)) /
                        (2 * k + 1));
    out.positive = true;
    for (const auto& x : a)
        if (x <= 0) out.positive = false;
    return out;
}

SL2State sl2_minimize(const PencilInvariants& inv, double tol, int max_iter) {
    std::vector<Rat> roots = generic_roots(inv);
    std::vector<std::pair<Eigen::Matrix2d, double>> terms;  // (P, weight)
    for (const Rat& a : roots) {
        Eigen::Vector2d v(1.0, rat_to_double(a));
        terms.emplace_back(v * v.transpose(), 1.0);
    }
    for (const auto& d : inv.complex_divisors) {
        Eigen::Matrix2d M;
        M << 1, 0, rat_to_double(d.mu), rat_to_double(d.nu);
        terms.emplace_back(M * M.transpose(), 2.0);
    }

    auto logF = [&](const Eigen::Matrix2d& S) {
        double f = 0;
        for (const auto& [P, w] : terms) f += w * std::log((S * P).trace());
        return f;
    };
    auto sqrt_of = [](const Eigen::Matrix2d& S) {
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(S);
        return es.operatorSqrt();
    };
    auto grad_of = [&](const Eigen::Matrix2d& h) {
        Eigen::Matrix2d dh = Eigen::Matrix2d::Zero();
        for (const auto& [P, w] : terms) {
            Eigen::Matrix2d hP = h * P * h;
            dh += 2 * w * hP / hP.trace();
        }
        return Eigen::Matrix2d(dh - 0.5 * dh.trace() * Eigen::Matrix2d::Identity());
    };
    auto expm = [](const Eigen::Matrix2d& B) {
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(B);
        return Eigen::Matrix2d(es.eigenvectors() *
                               es.eigenvalues().array().exp().matrix().asDiagonal() *
                               es.eigenvectors().transpose());
    };

    SL2State st;
    st.S = Eigen::Matrix2d::Identity();
    double f = logF(st.S);
    double step = 1.0;
    for (st.iterations = 0; st.iterations < max_iter; ++st.iterations) {
        Eigen::Matrix2d h = sqrt_of(st.S);
        st.grad = grad_of(h);
        st.logF = f;
        // a trace term underflowing to zero during descent means the
        // objective is unbounded below along the current ray
        if (!std::isfinite(f) || !st.grad.allFinite()) {
            st.outcome = SL2Outcome::NoMinimum;
            return st;
        }
        double gn = st.grad.norm();
        if (gn <= tol) {
            st.outcome = SL2Outcome::Converged;
            return st;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(st.S);
        if (std::sqrt(2.0) * std::abs(std::log(es.eigenvalues()(1))) > 50) {
            st.outcome = SL2Outcome::NoMinimum;
            return st;
        }
        bool accepted = false;
        if (gn < 1e-3) {
            // Newton polish in the local chart S(b) = h exp(b1 E1 + b2 E2) h:
            // grad components are (G_11, G_12), Hessian sum w (I - t t^t)
            // with t from the normalized h P h (the mixed second derivative
            // of exp vanishes as E1 E2 + E2 E1 = 0)
            Eigen::Matrix2d H = Eigen::Matrix2d::Zero();
            for (const auto& [P, w] : terms) {
                Eigen::Matrix2d Q = h * P * h;
                Eigen::Vector2d t((Q(0, 0) - Q(1, 1)) / Q.trace(),
                                  (Q(0, 1) + Q(1, 0)) / Q.trace());
                H += w * (Eigen::Matrix2d::Identity() - t * t.transpose());
            }
            Eigen::Vector2d gv(st.grad(0, 0), st.grad(0, 1));
            Eigen::Vector2d b = H.fullPivLu().solve(-gv);
            if (b.allFinite() && b.norm() > 0) {
                if (b.norm() > 1) b /= b.norm();
                for (double sc = 1; sc > 1e-6; sc /= 2) {
                    Eigen::Matrix2d B;
                    B << sc * b(0), sc * b(1), sc * b(1), -sc * b(0);
                    Eigen::Matrix2d Snew = h * expm(B) * h;
                    Snew /= std::sqrt(Snew.determinant());
                    Snew = 0.5 * (Snew + Snew.transpose());
                    if (grad_of(sqrt_of(Snew)).norm() < gn) {
                        st.S = Snew;
                        f = logF(Snew);
                        accepted = true;
                        break;
                    }
                }
            }
        }
        // S(tau) = h exp(-2 tau G) h descends: d/dtau logF at 0 is -|G|^2
        for (double tau = step; !accepted && tau > 1e-18; tau /= 2) {
            Eigen::Matrix2d Snew = h * expm(-2 * tau * st.grad) * h;
            Snew /= std::sqrt(Snew.determinant());
            double fnew = logF(Snew);
            if (std::isinf(fnew) && fnew < 0) {
                st.S = 0.5 * (Snew + Snew.transpose());
                st.logF = fnew;
                st.outcome = SL2Outcome::NoMinimum;
                return st;
            }
            if (fnew <= f - 0.3 * tau * gn * gn) {
                st.S = 0.5 * (Snew + Snew.transpose());
                f = fnew;
                step = std::min(2 * tau, 1e6);
                accepted = true;
            }
        }
        if (!accepted) {
            // line-search stall: at a genuine minimum the gradient is tiny;
            // a large gradient on a badly conditioned iterate means the
            // descent ray escapes faster than double precision can follow
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es2(st.S);
            st.outcome = (gn > 1e-4 && es2.eigenvalues()(1) > 1e6)
                             ? SL2Outcome::NoMinimum
                             : SL2Outcome::Converged;
            return st;
        }
    }
    st.outcome = SL2Outcome::IterationLimit;
    return st;
}

NilsolitonCertificate assemble_case1_metric(const PencilInvariants& inv,
                                            const SL2State& state) {
    if (state.outcome != SL2Outcome::Converged)
        throw NotConvergedError("the SL(2) minimization did not converge");
    std::vector<Rat> roots = generic_roots(inv);
    if (inv.common_kernel_dim != 0)
        throw UnsupportedError("strip the abelian summand before building a metric");

    CanonicalSpec spec{inv.real_divisors, inv.complex_divisors, inv.minimal_indices, 0};
    TwoStepAlgebra n = from_pencil(synthesize(spec));
    int q = n.q;

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(state.S);
    Eigen::Matrix2d h = es.operatorSqrt();

    // scalings normalized so 2 C sigma = 1 (C is a free negative constant)
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(q + 2, q + 2);
    int pos = 0;
    for (const Rat& a : roots) {
        Eigen::Vector2d v(1.0, rat_to_double(a));
        double x = std::pow((h * v).squaredNorm(), 0.25);
        g(pos, pos) = g(pos + 1, pos + 1) = x;
        pos += 2;
    }
    for (const auto& d : inv.complex_divisors) {
        Eigen::Matrix2d M;
        M << 1, 0, rat_to_double(d.mu), rat_to_double(d.nu);
        double y = std::pow((h * M).squaredNorm(), 0.25);
        for (int t = 0; t < 4; ++t) g(pos + t, pos + t) = y;
        pos += 4;
    }
    for (int k : inv.minimal_indices) {
        // log-linear system for the xi/theta scalings of the singular block
        Eigen::MatrixXd E = Eigen::MatrixXd::Zero(2 * k, 2 * k + 1);
        Eigen::VectorXd rhs(2 * k);
        for (int s = 1; s <= k; ++s) {
            E(2 * s - 2, s - 1) = 1;
            E(2 * s - 2, k + s - 1) = 1;
            rhs(2 * s - 2) = 0.5 * std::log((2.0 * k + 1) / (2.0 * (k + 1 - s)));
            E(2 * s - 1, s - 1) = 1;
            E(2 * s - 1, k + s) = 1;
            rhs(2 * s - 1) = 0.5 * std::log((2.0 * k + 1) / (2.0 * s));
        }
        Eigen::VectorXd sol = E.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);
        Eigen::MatrixXd Pk = poly_rep(h, k);
        Eigen::MatrixXd Pk1 = poly_rep(h.inverse(), k + 1);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                g(pos + i, pos + j) = std::exp(sol(i)) * Pk(j, i);  // Xi P_k^t(h)
        for (int i = 0; i <= k; ++i)
            for (int j = 0; j <= k; ++j)
                g(pos + k + i, pos + k + j) = std::exp(sol(k + i)) * Pk1(i, j);
        pos += 2 * k + 1;
    }
    g.block(q, q, 2, 2) = h;

    MetricData metric;
    metric.full = rat_from_eigen(g.transpose() * g);
    return certify(n, metric);
}

NilsolitonCertificate case2_metric(const PencilInvariants& inv) {
    if (inv.case_tag != CaseTag::Case2)
        throw WrongCaseError("applies to the subsingular case only");
    Verdict v = classify(inv);
    TwoStepAlgebra n =
        from_pencil(synthesize_subsingular(v.group1, v.group2, inv.minimal_indices, 0));
    NiceBasisSolution sol = solve_alpha(build_nice_Y(n));
    if (!sol.positive)
        throw NotCertifiedError("no positive nice-basis solution: not an Einstein nilradical");
    return certify(n, MetricData::diagonal_from_s(sol.s));
}

DegenerationWitness degeneration_witness(const PencilInvariants& inv) {
    std::vector<Rat> roots = generic_roots(inv);
    int u = static_cast<int>(roots.size());
    int w = static_cast<int>(inv.complex_divisors.size());
    if (inv.common_kernel_dim != 0)
        throw UnsupportedError("strip the abelian summand before degenerating");

    std::map<Rat, int> count;
    for (const Rat& a : roots) ++count[a];
    Rat xi;
    int m = 0;
    for (const auto& [a, c] : count)
        if (c > m) m = c, xi = a;
    if (2 * m < u + 2 * w)
        throw ConditionHoldsError("the root repetition bound holds; no degeneration");

    std::stable_sort(roots.begin(), roots.end(),
                     [&](const Rat& a, const Rat& b) { return (a == xi) > (b == xi); });
    int q = 2 * u + 4 * w;
    for (int k : inv.minimal_indices) q += 2 * k + 1;
    RatMatrix J1(q, q), J2(q, q);
    auto place = [](RatMatrix& J, int off, const RatMatrix& B) {
        for (int i = 0; i < B.rows; ++i)
            for (int j = 0; j < B.cols; ++j) J.at(off + i, off + j) = B.at(i, j);
    };
    DegenerationWitness out;
    out.xi = xi;
    out.multiplicity = m;
    int pos = 0, ones = 2 * w + u - m;
    for (int i = 0; i < u; ++i) {
        if (roots[i] != xi) {
            RatMatrix B(1, 1);
            B.at(0, 0) = xi - roots[i];
            place(J1, pos, block_sk(B));
        }
        if (i < ones) {
            RatMatrix B(1, 1);
            B.at(0, 0) = 1;
            place(J2, pos, block_sk(B));
            out.x_rate.push_back(-1);
        } else {
            out.x_rate.push_back(i < m ? 0 : 1);
        }
        pos += 2;
    }
    for (const auto& d : inv.complex_divisors) {
        RatMatrix B = (xi - d.mu) * block_I(2) - d.nu * block_Ic(2);
        place(J1, pos, block_sk(B));
        out.y_rate.push_back(1);
        pos += 4;
    }
    for (int k : inv.minimal_indices) {
        place(J1, pos, block_sk(block_L(k)));
        place(J2, pos, block_sk(block_R(k)));
        pos += 2 * k + 1;
    }
    out.limit = SkewPencil(J1, J2);
    out.limit_invariants = compute_invariants(out.limit);

    auto same = [&] {
        const auto& L = out.limit_invariants;
        if (L.common_kernel_dim != inv.common_kernel_dim) return false;
        if (L.minimal_indices != inv.minimal_indices) return false;
        if (L.real_divisors.size() != inv.real_divisors.size()) return false;
        if (L.complex_divisors.size() != inv.complex_divisors.size()) return false;
        std::multiset<int> a, b;
        for (const auto& d : L.real_divisors) a.insert(d.power);
        for (const auto& d : inv.real_divisors) b.insert(d.power);
        return a == b;
    };
    if (same()) throw InternalError("degeneration produced an equivalent pencil");
    return out;
}

DualHeisenberg construct_dual_heisenberg(int q, int d) {
    int l = q - 2 * d;
    if (q < 3 || d < 1 || l < 0)
        throw BadDimensionsError("need q >= 3 and 1 <= d <= q/2");
    DualHeisenberg out;
    out.r1_sq = Rat(d) * (q - 1);
    out.r2_sq = Rat(q) * d - d - 1;
    out.r3_sq = Rat(q) * d - d - 2;
    out.c = l > 0 ? -(Rat((5 + 2 * q * q - 3 * q)) * d + 2 - 4 * q) / 4
                  : -Rat(2 * d - 1) * (4 * d * d - d - 2) / 4;

    // closed-form derivation eigenvalues and the equations they satisfy
    Rat l1, l2, l3, l4, l5;
    l1 = 1 + ((Rat(2L * d * d - d - 1) / (2 * d)) * out.r1_sq + Rat(l) / 2 * out.r2_sq) /
                 (2 * out.c);
    l3 = 1 - out.r1_sq / (4 * out.c);
    if (2 * l1 != l3) throw InternalError("dual-Heisenberg eigenvalue equation failed");
    out.lambdas = {l1};
    out.lambda_dims = {2 * d};
    if (l > 0) {
        l2 = 1 + (Rat(l - 1) / 2 * out.r3_sq + d * out.r2_sq) / (2 * out.c);
        l4 = 1 - out.r2_sq / (4 * out.c);
        l5 = 1 - out.r3_sq / (4 * out.c);
        if (l1 + l2 != l4 || (l > 1 && 2 * l2 != l5))
            throw InternalError("dual-Heisenberg eigenvalue equation failed");
        out.lambdas.push_back(l2);
        out.lambda_dims.push_back(l);
    }
    out.lambdas.push_back(l3);
    out.lambda_dims.push_back(d * (2 * d - 1) - 1);
    if (l > 0) {
        out.lambdas.push_back(l4);
        out.lambda_dims.push_back(2 * d * l);
        out.lambdas.push_back(l5);
        out.lambda_dims.push_back(l * (l - 1) / 2);
    }

    double r1 = std::sqrt(rat_to_double(out.r1_sq));
    double r2 = std::sqrt(rat_to_double(out.r2_sq));
    double r3 = std::sqrt(rat_to_double(out.r3_sq));
    double s2 = std::sqrt(2.0);
    std::vector<RatMatrix> J;
    auto elementary = [&](int i, int j, double scale) {
        Eigen::MatrixXd K = Eigen::MatrixXd::Zero(q, q);
        K(i, j) = scale;
        K(j, i) = -scale;
        J.push_back(rat_from_eigen(K));
    };
    // pieces of the trace-free part of the symplectic block
    for (int i = 0; i < 2 * d; ++i)
        for (int j = i + 1; j < 2 * d; ++j)
            if (j - i != d || i >= d) elementary(i, j, r1 / s2);
    for (int t = 1; t < d; ++t) {
        Eigen::MatrixXd K = Eigen::MatrixXd::Zero(q, q);
        double sc = r1 / std::sqrt(2.0 * t * (t + 1));
        for (int s = 0; s < t; ++s) {
            K(s, d + s) = sc;
            K(d + s, s) = -sc;
        }
        K(t, d + t) = -t * sc;
        K(d + t, t) = t * sc;
        J.push_back(rat_from_eigen(K));
    }
    for (int i = 0; i < 2 * d; ++i)
        for (int j = 2 * d; j < q; ++j) elementary(i, j, r2 / s2);
    for (int i = 2 * d; i < q; ++i)
        for (int j = i + 1; j < q; ++j) elementary(i, j, r3 / s2);

    out.algebra = from_tuple(std::move(J));
    out.certificate = certify(out.algebra, MetricData::identity(q + out.algebra.p));
    return out;
}

TwoStepAlgebra free_two_step(int f, int abelian) {
    int q = f + abelian;
    std::vector<RatMatrix> J;
    for (int i = 0; i < f; ++i)
        for (int j = i + 1; j < f; ++j) {
            RatMatrix K(q, q);
            K.at(i, j) = 1;
            K.at(j, i) = -1;
            J.push_back(std::move(K));
        }
    return from_tuple(std::move(J));
}

}  // namespace nilpencil

#include "nilpencil/algebra.hpp"

#include <cmath>

#include "nilpencil/errors.hpp"

namespace nilpencil {

TwoStepAlgebra::TwoStepAlgebra(std::vector<RatMatrix> matrices) : J(std::move(matrices)) {
    if (J.empty()) throw BadDimensionsError("need at least one structure matrix");
    q = J[0].rows;
    p = static_cast<int>(J.size());
    for (const auto& m : J) {
        if (m.rows != q || m.cols != q)
            throw BadDimensionsError("structure matrices must be square and equal-sized");
        for (int i = 0; i < q; ++i)
            for (int j = 0; j <= i; ++j)
                if (m.at(i, j) != -m.at(j, i))
                    throw BadDimensionsError("structure matrices must be skew-symmetric");
    }
    // span(J_1..J_p) must have dimension p
    RatMatrix flat(p, q * q);
    for (int a = 0; a < p; ++a)
        for (int k = 0; k < q * q; ++k) flat.at(a, k) = J[a].entries[k];
    if (mat_rank(flat) != p)
        throw DegenerateError("structure matrices are linearly dependent");
}

TwoStepAlgebra from_pencil(const SkewPencil& pencil) {
    return TwoStepAlgebra({pencil.J1, pencil.J2});
}

TwoStepAlgebra from_tuple(std::vector<RatMatrix> matrices) {
    return TwoStepAlgebra(std::move(matrices));
}

namespace {

// Coefficient matrix of the linear identity J_a A1 + A1^t J_a = sum_b M_ab J_b
// in the unknowns (A1 row-major, then M row-major).
RatMatrix derivation_constraints(const std::vector<RatMatrix>& J, int q, int p) {
    RatMatrix sys(p * q * q, q * q + p * p);
    for (int a = 0; a < p; ++a)
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j) {
                int row = (a * q + i) * q + j;
                for (int s = 0; s < q; ++s) {
                    if (J[a].at(i, s) != 0) sys.at(row, s * q + j) += J[a].at(i, s);
                    if (J[a].at(s, j) != 0) sys.at(row, s * q + i) += J[a].at(s, j);
                }
                for (int b = 0; b < p; ++b)
                    if (J[b].at(i, j) != 0) sys.at(row, q * q + a * p + b) -= J[b].at(i, j);
            }
    return sys;
}

}  // namespace

std::vector<RatMatrix> derivation_basis(const TwoStepAlgebra& n) {
    int q = n.q, p = n.p;
    std::vector<RatMatrix> basis;
    RatMatrix ker = mat_nullspace(derivation_constraints(n.J, q, p));
    for (int c = 0; c < ker.cols; ++c) {
        RatMatrix D(q + p, q + p);
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j) D.at(i, j) = ker.at(i * q + j, c);
        for (int a = 0; a < p; ++a)
            for (int b = 0; b < p; ++b) D.at(q + a, q + b) = ker.at(q * q + a * p + b, c);
        basis.push_back(std::move(D));
    }
    for (int a = 0; a < p; ++a)
        for (int i = 0; i < q; ++i) {
            RatMatrix D(q + p, q + p);
            D.at(q + a, i) = 1;
            basis.push_back(std::move(D));
        }
    return basis;
}

bool is_derivation(const TwoStepAlgebra& n, const RatMatrix& D) {
    int q = n.q, p = n.p;
    if (D.rows != q + p || D.cols != q + p) return false;
    for (int i = 0; i < q; ++i)
        for (int b = 0; b < p; ++b)
            if (D.at(i, q + b) != 0) return false;  // must preserve the center
    for (int a = 0; a < p; ++a)
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j) {
                Rat lhs(0);
                for (int s = 0; s < q; ++s)
                    lhs += n.J[a].at(i, s) * D.at(s, j) + D.at(s, i) * n.J[a].at(s, j);
                for (int b = 0; b < p; ++b) lhs -= D.at(q + a, q + b) * n.J[b].at(i, j);
                if (lhs != 0) return false;
            }
    return true;
}

MetricData MetricData::identity(int n) {
    MetricData g;
    g.diag.assign(n, Rat(1));
    return g;
}

MetricData MetricData::diagonal(std::vector<Rat> d) {
    MetricData g;
    g.diag = std::move(d);
    return g;
}

MetricData MetricData::diagonal_from_s(const std::vector<double>& s) {
    MetricData g;
    for (double v : s) g.diag.push_back(rat_from_double(std::exp(2.0 * v)));
    return g;
}

namespace {

void check_metric(const MetricData& g, int n) {
    if (g.is_diagonal()) {
        if (static_cast<int>(g.diag.size()) != n)
            throw MetricInvalidError("diagonal metric has wrong size");
        for (const auto& d : g.diag)
            if (d <= 0) throw MetricInvalidError("metric must be positive definite");
    } else {
        if (g.full.rows != n || g.full.cols != n)
            throw MetricInvalidError("metric matrix has wrong size");
        if (!(g.full == g.full.transpose()))
            throw MetricInvalidError("metric must be symmetric");
        Eigen::LLT<Eigen::MatrixXd> llt(g.full.to_double());
        if (llt.info() != Eigen::Success)
            throw MetricInvalidError("metric must be positive definite");
    }
}

// Exact orthonormal-frame brackets, available when every diagonal metric
// entry is the square of a rational.
bool exact_bracket(const TwoStepAlgebra& n, const MetricData& g, std::vector<RatMatrix>& out) {
    if (!g.is_diagonal()) return false;
    std::vector<Rat> root(g.diag.size());
    for (size_t i = 0; i < g.diag.size(); ++i) {
        auto r = rat_sqrt_exact(g.diag[i]);
        if (!r) return false;
        root[i] = *r;
    }
    out.clear();
    for (int a = 0; a < n.p; ++a) {
        RatMatrix m(n.q, n.q);
        for (int i = 0; i < n.q; ++i)
            for (int j = 0; j < n.q; ++j)
                if (n.J[a].at(i, j) != 0)
                    m.at(i, j) = n.J[a].at(i, j) * root[n.q + a] / (root[i] * root[j]);
        out.push_back(std::move(m));
    }
    return true;
}

}  // namespace

std::vector<Eigen::MatrixXd> orthonormal_bracket(const TwoStepAlgebra& n, const MetricData& g) {
    check_metric(g, n.q + n.p);
    std::vector<Eigen::MatrixXd> out;
    if (g.is_diagonal()) {
        std::vector<double> root(g.diag.size());
        for (size_t i = 0; i < g.diag.size(); ++i) root[i] = std::sqrt(rat_to_double(g.diag[i]));
        for (int a = 0; a < n.p; ++a) {
            Eigen::MatrixXd m = n.J[a].to_double();
            for (int i = 0; i < n.q; ++i)
                for (int j = 0; j < n.q; ++j) m(i, j) *= root[n.q + a] / (root[i] * root[j]);
            out.push_back(std::move(m));
        }
        return out;
    }
    // full SPD metric: orthonormalize each block by the Cholesky factor
    Eigen::MatrixXd G = g.full.to_double();
    for (int i = 0; i < n.q; ++i)
        for (int b = 0; b < n.p; ++b)
            if (G(i, n.q + b) != 0.0 || G(n.q + b, i) != 0.0)
                throw MetricInvalidError("metric must be block-diagonal across b and m");
    Eigen::MatrixXd G1 = G.topLeftCorner(n.q, n.q), G2 = G.bottomRightCorner(n.p, n.p);
    Eigen::MatrixXd L1 = Eigen::LLT<Eigen::MatrixXd>(G1).matrixL();
    Eigen::MatrixXd L2 = Eigen::LLT<Eigen::MatrixXd>(G2).matrixL();
    Eigen::MatrixXd g1 = L1.transpose().inverse();  // g1^t G1 g1 = I
    Eigen::MatrixXd g2inv = L2.transpose();         // inverse of g2 = L2^-t
    std::vector<Eigen::MatrixXd> tmp;
    for (int a = 0; a < n.p; ++a) tmp.push_back(g1.transpose() * n.J[a].to_double() * g1);
    for (int c = 0; c < n.p; ++c) {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n.q, n.q);
        for (int a = 0; a < n.p; ++a) m += g2inv(c, a) * tmp[a];
        out.push_back(std::move(m));
    }
    return out;
}

RicciData ricci(const TwoStepAlgebra& n, const MetricData& g) {
    RicciData r;
    std::vector<RatMatrix> Jx;
    if (exact_bracket(n, g, Jx)) {
        r.exact = true;
        r.ric_b_exact = RatMatrix(n.q, n.q);
        for (const auto& m : Jx) r.ric_b_exact = r.ric_b_exact + m * m.transpose();
        r.ric_b_exact = Rat(-1, 2) * r.ric_b_exact;
        r.ric_m_exact = RatMatrix(n.p, n.p);
        for (int a = 0; a < n.p; ++a)
            for (int b = 0; b < n.p; ++b) {
                Rat tr(0);
                for (int i = 0; i < n.q; ++i)
                    for (int j = 0; j < n.q; ++j) tr += Jx[a].at(i, j) * Jx[b].at(i, j);
                r.ric_m_exact.at(a, b) = tr / 4;
            }
        r.ric_b = r.ric_b_exact.to_double();
        r.ric_m = r.ric_m_exact.to_double();
        return r;
    }
    auto Jt = orthonormal_bracket(n, g);
    r.ric_b = Eigen::MatrixXd::Zero(n.q, n.q);
    for (const auto& m : Jt) r.ric_b -= 0.5 * m * m.transpose();
    r.ric_m = Eigen::MatrixXd::Zero(n.p, n.p);
    for (int a = 0; a < n.p; ++a)
        for (int b = 0; b < n.p; ++b)
            r.ric_m(a, b) = 0.25 * (Jt[a].array() * Jt[b].array()).sum();
    return r;
}

namespace {

// Numeric nullspace (columns) of a dense matrix via SVD.
Eigen::MatrixXd nullspace_numeric(const Eigen::MatrixXd& A, double tol = 1e-10) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    double cut = tol * std::max(1.0, s.size() ? s(0) : 0.0);
    int rank = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > cut) ++rank;
    return svd.matrixV().rightCols(A.cols() - rank);
}

}  // namespace

SolitonFit nilsoliton_residual(const TwoStepAlgebra& n, const MetricData& g) {
    int q = n.q, p = n.p, N = q + p;
    RicciData R = ricci(n, g);

    std::vector<RatMatrix> Jx;
    if (R.exact && exact_bracket(n, g, Jx) && static_cast<size_t>(N) <= 24) {
        // exact path: the orthonormal-frame algebra is rational
        TwoStepAlgebra nx(Jx);
        std::vector<RatMatrix> basis = derivation_basis(nx);
        // drop the U-block generators: ric is block-diagonal, so the optimal
        // Phi has no off-diagonal block
        std::vector<RatMatrix> diagbasis;
        for (const auto& D : basis) {
            bool blockdiag = true;
            for (int a = 0; a < p && blockdiag; ++a)
                for (int i = 0; i < q; ++i)
                    if (D.at(q + a, i) != 0) {
                        blockdiag = false;
                        break;
                    }
            if (blockdiag) diagbasis.push_back(D);
        }
        int K = 1 + static_cast<int>(diagbasis.size());
        RatMatrix A(N * N, K), rvec(N * N, 1);
        for (int i = 0; i < N; ++i) A.at(i * N + i, 0) = 1;
        for (size_t k = 0; k < diagbasis.size(); ++k)
            for (int e = 0; e < N * N; ++e) A.at(e, 1 + static_cast<int>(k)) = diagbasis[k].entries[e];
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j) rvec.at(i * N + j, 0) = R.ric_b_exact.at(i, j);
        for (int a = 0; a < p; ++a)
            for (int b = 0; b < p; ++b) rvec.at((q + a) * N + (q + b), 0) = R.ric_m_exact.at(a, b);
        RatMatrix At = A.transpose();
        auto z = mat_solve(At * A, At * rvec);
        if (!z) throw InternalError("normal equations inconsistent");
        SolitonFit fit;
        fit.exact = true;
        fit.C_exact = z->at(0, 0);
        fit.Phi_exact = RatMatrix(N, N);
        for (size_t k = 0; k < diagbasis.size(); ++k)
            fit.Phi_exact = fit.Phi_exact + z->at(1 + static_cast<int>(k), 0) * diagbasis[k];
        RatMatrix defect = rvec - A * (*z);
        Rat norm2(0);
        for (const auto& e : defect.entries) norm2 += e * e;
        fit.C = rat_to_double(fit.C_exact);
        fit.Phi = fit.Phi_exact.to_double();
        fit.residual = std::sqrt(rat_to_double(norm2));
        return fit;
    }

    // float path
    auto Jt = orthonormal_bracket(n, g);
    Eigen::MatrixXd constraints = Eigen::MatrixXd::Zero(p * q * q, q * q + p * p);
    for (int a = 0; a < p; ++a)
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j) {
                int row = (a * q + i) * q + j;
                for (int s = 0; s < q; ++s) {
                    constraints(row, s * q + j) += Jt[a](i, s);
                    constraints(row, s * q + i) += Jt[a](s, j);
                }
                for (int b = 0; b < p; ++b) constraints(row, q * q + a * p + b) -= Jt[b](i, j);
            }
    Eigen::MatrixXd ker = nullspace_numeric(constraints);
    int K = 1 + static_cast<int>(ker.cols());
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N * N, K);
    Eigen::VectorXd rvec = Eigen::VectorXd::Zero(N * N);
    for (int i = 0; i < N; ++i) A(i * N + i, 0) = 1;
    for (int k = 0; k < ker.cols(); ++k) {
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j) A(i * N + j, 1 + k) = ker(i * q + j, k);
        for (int a = 0; a < p; ++a)
            for (int b = 0; b < p; ++b) A((q + a) * N + (q + b), 1 + k) = ker(q * q + a * p + b, k);
    }
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) rvec(i * N + j) = R.ric_b(i, j);
    for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b) rvec((q + a) * N + (q + b)) = R.ric_m(a, b);
    Eigen::VectorXd z = A.colPivHouseholderQr().solve(rvec);
    SolitonFit fit;
    fit.C = z(0);
    fit.Phi = Eigen::MatrixXd::Zero(N, N);
    Eigen::VectorXd phivec = A * z;
    for (int i = 0; i < N; ++i) {
        phivec(i * N + i) -= z(0);
        for (int j = 0; j < N; ++j) fit.Phi(i, j) = phivec(i * N + j);
    }
    fit.residual = (rvec - A * z).norm();
    return fit;
}

TwoStepAlgebra dualize(const TwoStepAlgebra& n) {
    int q = n.q, p = n.p;
    int D = q * (q - 1) / 2;
    if (p >= D) throw FullTypeError("full type (D, q) has no dual");
    RatMatrix constraints(p, D);
    for (int a = 0; a < p; ++a) {
        int c = 0;
        for (int i = 0; i < q; ++i)
            for (int j = i + 1; j < q; ++j) constraints.at(a, c++) = n.J[a].at(i, j);
    }
    RatMatrix ker = mat_nullspace(constraints);
    std::vector<RatMatrix> out;
    for (int k = 0; k < ker.cols; ++k) {
        RatMatrix m(q, q);
        int c = 0;
        for (int i = 0; i < q; ++i)
            for (int j = i + 1; j < q; ++j) {
                m.at(i, j) = ker.at(c, k);
                m.at(j, i) = -ker.at(c, k);
                ++c;
            }
        out.push_back(std::move(m));
    }
    return TwoStepAlgebra(std::move(out));
}

}  // namespace nilpencil

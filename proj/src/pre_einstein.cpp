#include "nilpencil/pre_einstein.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "nilpencil/errors.hpp"

namespace nilpencil {

namespace {

std::vector<std::pair<Rat, int>> spectrum_of_diagonal(const RatMatrix& phi) {
    std::map<Rat, int> mult;
    for (int i = 0; i < phi.rows; ++i) ++mult[phi.at(i, i)];
    return {mult.begin(), mult.end()};
}

}  // namespace

PreEinsteinDerivation solve_pre_einstein(const TwoStepAlgebra& n) {
    int q = n.q, p = n.p, N = q + p;
    std::vector<RatMatrix> basis = derivation_basis(n);

    // unknowns: the N diagonal entries t_a of phi. Diagonal derivations need
    // t_i + t_j = t_{q+a} whenever (J_a)_ij != 0; the defining property adds
    // sum_a t_a (psi_k)_aa = Tr psi_k per basis element.
    std::vector<std::vector<Rat>> rows;
    std::vector<Rat> rhs;
    for (int a = 0; a < p; ++a)
        for (int i = 0; i < q; ++i)
            for (int j = i + 1; j < q; ++j)
                if (n.J[a].at(i, j) != 0) {
                    std::vector<Rat> row(N, Rat(0));
                    row[i] += 1;
                    row[j] += 1;
                    row[q + a] -= 1;
                    rows.push_back(std::move(row));
                    rhs.push_back(Rat(0));
                }
    for (const auto& psi : basis) {
        std::vector<Rat> row(N, Rat(0));
        Rat tr(0);
        for (int a = 0; a < N; ++a) {
            row[a] = psi.at(a, a);
            tr += psi.at(a, a);
        }
        rows.push_back(std::move(row));
        rhs.push_back(tr);
    }
    RatMatrix A(static_cast<int>(rows.size()), N), b(static_cast<int>(rows.size()), 1);
    for (size_t r = 0; r < rows.size(); ++r) {
        for (int c = 0; c < N; ++c) A.at(static_cast<int>(r), c) = rows[r][c];
        b.at(static_cast<int>(r), 0) = rhs[r];
    }
    auto t = mat_solve(A, b);
    if (!t)
        throw NonDiagonalTorusError(
            "no diagonal pre-Einstein derivation in this basis; present the "
            "algebra in canonical form first");
    PreEinsteinDerivation out;
    out.phi = RatMatrix(N, N);
    for (int a = 0; a < N; ++a) out.phi.at(a, a) = t->at(a, 0);
    // defensive recheck of the defining property against the full basis
    for (const auto& psi : basis) {
        Rat lhs(0), tr(0);
        for (int a = 0; a < N; ++a)
            for (int c = 0; c < N; ++c) lhs += out.phi.at(a, c) * psi.at(c, a);
        for (int a = 0; a < N; ++a) tr += psi.at(a, a);
        if (lhs != tr) throw InternalError("pre-Einstein trace property violated");
    }
    out.eigenvalues = spectrum_of_diagonal(out.phi);
    return out;
}

PreEinsteinDerivation case1_pre_einstein(const PencilInvariants& inv) {
    if (inv.case_tag == CaseTag::Case2)
        throw WrongCaseError("closed form applies to the generic case only");
    int qR = 0;
    for (const auto& d : inv.real_divisors) qR += 2 * d.power;
    for (const auto& d : inv.complex_divisors) qR += 4 * d.power;
    int q = qR;
    Rat inv_sum(0);
    for (int k : inv.minimal_indices) {
        q += 2 * k + 1;
        inv_sum += Rat(1, 2 * k + 1);
    }
    Rat sigma = Rat(-4) / (Rat(q + 8) - inv_sum);
    PreEinsteinDerivation out;
    out.sigma = sigma;
    int N = q + 2;
    out.phi = RatMatrix(N, N);
    int pos = 0;
    for (; pos < qR; ++pos) out.phi.at(pos, pos) = 1 + sigma;
    for (int k : inv.minimal_indices) {
        Rat dj = sigma / (2 * k + 1);
        for (int i = 0; i < k; ++i, ++pos) out.phi.at(pos, pos) = 1 + sigma + dj;
        for (int i = 0; i < k + 1; ++i, ++pos) out.phi.at(pos, pos) = 1 + sigma - dj;
    }
    out.phi.at(q, q) = 2 * (1 + sigma);
    out.phi.at(q + 1, q + 1) = 2 * (1 + sigma);
    out.eigenvalues = spectrum_of_diagonal(out.phi);
    return out;
}

EigenvalueType eigenvalue_type(const SolitonFit& fit, double tol) {
    if (fit.residual > tol)
        throw NotCertifiedError("residual too large for an eigenvalue type");
    std::vector<Rat> values;
    std::vector<int> mults;
    if (fit.exact) {
        // diagonal entries are the spectrum for the diagonal certificates
        for (int i = 0; i < fit.Phi_exact.rows; ++i)
            for (int j = 0; j < fit.Phi_exact.cols; ++j)
                if (i != j && fit.Phi_exact.at(i, j) != 0)
                    throw NotCertifiedError("non-diagonal exact derivation");
        std::map<Rat, int> mult;
        for (int i = 0; i < fit.Phi_exact.rows; ++i) ++mult[fit.Phi_exact.at(i, i)];
        for (auto& [v, m] : mult) {
            values.push_back(v);
            mults.push_back(m);
        }
    } else {
        Eigen::EigenSolver<Eigen::MatrixXd> es(fit.Phi, false);
        std::vector<double> evs;
        for (int i = 0; i < es.eigenvalues().size(); ++i) {
            if (std::abs(es.eigenvalues()(i).imag()) > 1e-6)
                throw NotCertifiedError("non-real derivation spectrum");
            evs.push_back(es.eigenvalues()(i).real());
        }
        std::sort(evs.begin(), evs.end());
        // cluster within a relative tolerance, then rationalize
        double scale = std::max(1.0, std::abs(evs.back()));
        size_t i = 0;
        while (i < evs.size()) {
            size_t j = i;
            double sum = 0;
            while (j < evs.size() && evs[j] - evs[i] < 1e-6 * scale) sum += evs[j++];
            double mean = sum / double(j - i);
            auto r = rat_reconstruct(mean, 1e-5, 1000000);
            if (!r) throw NotCertifiedError("irrational-looking derivation spectrum");
            values.push_back(*r);
            mults.push_back(static_cast<int>(j - i));
            i = j;
        }
    }
    // rescale to coprime positive integers
    Int den(1), num_gcd(0);
    for (const auto& v : values) {
        if (v <= 0) throw NotCertifiedError("non-positive derivation eigenvalue");
        den = boost::multiprecision::lcm(den, denominator(v));
    }
    std::vector<Int> ints;
    for (const auto& v : values) {
        Int n = numerator(v) * (den / denominator(v));
        ints.push_back(n);
        num_gcd = boost::multiprecision::gcd(num_gcd, n);
    }
    EigenvalueType out;
    for (size_t k = 0; k < ints.size(); ++k) {
        out.lambdas.push_back(static_cast<long>(ints[k] / num_gcd));
        out.dims.push_back(mults[k]);
    }
    return out;
}

}  // namespace nilpencil

#include "nilpencil/pencil.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <map>
#include <random>

#include "nilpencil/binary_form.hpp"
#include "nilpencil/detail/upoly.hpp"
#include "nilpencil/errors.hpp"
#include "nilpencil/form_matrix.hpp"

namespace nilpencil {

using detail::UPoly;

SkewPencil::SkewPencil(RatMatrix a, RatMatrix b) : q(a.rows), J1(std::move(a)), J2(std::move(b)) {
    if (J1.rows != J1.cols || J2.rows != J2.cols || J1.rows != J2.rows)
        throw BadDimensionsError("pencil matrices must be square and equal-sized");
    for (int i = 0; i < q; ++i)
        for (int j = 0; j <= i; ++j)
            if (J1.at(i, j) != -J1.at(j, i) || J2.at(i, j) != -J2.at(j, i))
                throw BadDimensionsError("pencil matrices must be skew-symmetric");
}

bool operator==(const RealDivisor& a, const RealDivisor& b) {
    return a.root == b.root && a.power == b.power;
}

bool operator==(const ComplexDivisor& a, const ComplexDivisor& b) {
    return a.mu == b.mu && a.nu == b.nu && a.power == b.power;
}

SkewPencil transform_pencil(const SkewPencil& p, const RatMatrix& vc) {
    if (vc.rows != 2 || vc.cols != 2) throw BadDimensionsError("variable change must be 2x2");
    if (vc.at(0, 0) * vc.at(1, 1) - vc.at(0, 1) * vc.at(1, 0) == 0)
        throw BadDimensionsError("variable change must be invertible");
    return SkewPencil(vc.at(0, 0) * p.J1 + vc.at(1, 0) * p.J2,
                      vc.at(0, 1) * p.J1 + vc.at(1, 1) * p.J2);
}

SkewPencil congruence(const SkewPencil& p, const RatMatrix& P) {
    RatMatrix Pt = P.transpose();
    return SkewPencil(P * p.J1 * Pt, P * p.J2 * Pt);
}

CaseTag case_tag_of(const std::vector<RealDivisor>& real,
                    const std::vector<ComplexDivisor>& complex) {
    std::vector<Rat> roots;
    for (const auto& d : real) roots.push_back(d.root);
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    std::vector<std::pair<Rat, Rat>> pairs;
    for (const auto& d : complex) pairs.emplace_back(d.mu, d.nu);
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    size_t distinct = roots.size() + 2 * pairs.size();
    if (pairs.empty() && roots.size() <= 2) return CaseTag::Case2;
    if (!pairs.empty() && roots.empty() && pairs.size() == 1) return CaseTag::Case3;
    if (distinct >= 3) return CaseTag::Case1;
    throw InternalError("unclassifiable divisor configuration");
}

namespace {

void sort_invariants(PencilInvariants& inv) {
    std::sort(inv.real_divisors.begin(), inv.real_divisors.end(),
              [](const RealDivisor& a, const RealDivisor& b) {
                  return a.root < b.root || (a.root == b.root && a.power < b.power);
              });
    std::sort(inv.complex_divisors.begin(), inv.complex_divisors.end(),
              [](const ComplexDivisor& a, const ComplexDivisor& b) {
                  return std::tie(a.mu, a.nu, a.power) < std::tie(b.mu, b.nu, b.power);
              });
    std::sort(inv.minimal_indices.begin(), inv.minimal_indices.end());
}

}  // namespace

PencilInvariants transform_invariants(const PencilInvariants& inv, const RatMatrix& vc) {
    if (vc.rows != 2 || vc.cols != 2 ||
        vc.at(0, 0) * vc.at(1, 1) - vc.at(0, 1) * vc.at(1, 0) == 0)
        throw BadDimensionsError("variable change must be 2x2 invertible");
    PencilInvariants out = inv;
    for (auto& d : out.real_divisors) {
        Rat den = vc.at(0, 0) + d.root * vc.at(1, 0);
        if (den == 0) throw InternalError("divisor root sent to infinity");
        d.root = (vc.at(0, 1) + d.root * vc.at(1, 1)) / den;
    }
    for (auto& d : out.complex_divisors) {
        // Mobius action on mu + i*nu in rational complex arithmetic
        Rat nre = vc.at(0, 1) + d.mu * vc.at(1, 1), nim = d.nu * vc.at(1, 1);
        Rat dre = vc.at(0, 0) + d.mu * vc.at(1, 0), dim = d.nu * vc.at(1, 0);
        Rat den = dre * dre + dim * dim;
        if (den == 0) throw InternalError("complex divisor root sent to infinity");
        Rat re = (nre * dre + nim * dim) / den;
        Rat im = (nim * dre - nre * dim) / den;
        d.mu = re;
        d.nu = im < 0 ? Rat(-im) : im;
        if (d.nu == 0) throw InternalError("complex divisor degenerated to real");
    }
    sort_invariants(out);
    return out;
}

std::pair<std::vector<int>, int> minimal_indices(const SkewPencil& p) {
    int q = p.q;
    // s_d = dim of homogeneous degree-d polynomial kernel vectors; column
    // blocks v_0..v_d, row blocks the coefficient equations
    auto s_of = [&](int d) {
        RatMatrix S((d + 2) * q, (d + 1) * q);
        for (int e = 0; e <= d; ++e)
            for (int i = 0; i < q; ++i)
                for (int j = 0; j < q; ++j) {
                    if (p.J1.at(i, j) != 0) S.at(e * q + i, e * q + j) = p.J1.at(i, j);
                    if (p.J2.at(i, j) != 0) S.at((e + 1) * q + i, e * q + j) = p.J2.at(i, j);
                }
        return (d + 1) * q - mat_rank(S);
    };
    int rho = generic_rank(pencil_matrix(p.J1, p.J2));
    int total = q - rho;  // kernel dimension over the function field
    int c = s_of(0);
    std::vector<int> indices;
    int prev_delta = c, prev_s = c;
    for (int d = 1; d <= q && c + static_cast<int>(indices.size()) < total; ++d) {
        int s = s_of(d);
        int delta = s - prev_s;
        int new_at_d = delta - prev_delta;
        for (int t = 0; t < new_at_d; ++t) indices.push_back(d);
        prev_s = s;
        prev_delta = delta;
    }
    if (c + static_cast<int>(indices.size()) != total)
        throw InternalError("minimal index recovery incomplete");
    return {indices, c};
}

namespace {

// --- rank backends -------------------------------------------------------

int rank_numeric(const Eigen::MatrixXd& m, double tol) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& s = svd.singularValues();
    double cut = tol * std::max(1.0, s.size() ? s(0) : 0.0);
    int r = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > cut) ++r;
    return r;
}

int rank_numeric_c(const Eigen::MatrixXcd& m, double tol) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& s = svd.singularValues();
    double cut = tol * std::max(1.0, s.size() ? s(0) : 0.0);
    int r = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > cut) ++r;
    return r;
}

// Block-Toeplitz matrix [[E,0,..],[F,E,..],[0,F,E..],...] with j diagonal
// blocks; its kernel encodes the length-j root chains.
template <typename M>
M toeplitz_block(const M& E, const M& F, int j) {
    int n = E.rows;
    M T(j * n, j * n);
    for (int b = 0; b < j; ++b)
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                if (E.at(i, k) != 0) T.at(b * n + i, b * n + k) = E.at(i, k);
                if (b + 1 < j && F.at(i, k) != 0) T.at((b + 1) * n + i, b * n + k) = F.at(i, k);
            }
    return T;
}

Eigen::MatrixXcd toeplitz_block_c(const Eigen::MatrixXcd& E, const Eigen::MatrixXcd& F, int j) {
    int n = static_cast<int>(E.rows());
    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(j * n, j * n);
    for (int b = 0; b < j; ++b) {
        T.block(b * n, b * n, n, n) = E;
        if (b + 1 < j) T.block((b + 1) * n, b * n, n, n) = F;
    }
    return T;
}

// [[X, -Y],[Y, X]]; its rational rank is twice the rank of X + iY.
RatMatrix realify(const RatMatrix& X, const RatMatrix& Y) {
    int n = X.rows;
    RatMatrix R(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            R.at(i, j) = X.at(i, j);
            R.at(i, n + j) = -Y.at(i, j);
            R.at(n + i, j) = Y.at(i, j);
            R.at(n + i, n + j) = X.at(i, j);
        }
    return R;
}

// Unreduced elementary-divisor powers at one root, recovered from the rank
// deficiencies d_j = sum_i min(j, l_i) + j*kappa of the Toeplitz blocks.
// rank_of(j) must return rank(T_j); n is the pencil size.
template <typename RankFn>
std::vector<int> powers_from_deficiencies(int n, int kappa, RankFn rank_of) {
    std::vector<int> count_ge;  // count_ge[j-1] = #divisors with power >= j
    int prev_d = 0;
    for (int j = 1; j <= n; ++j) {
        int d = j * n - rank_of(j);
        int inc = d - prev_d - kappa;
        if (inc < 0) throw InternalError("negative divisor count at root");
        if (inc == 0) break;
        count_ge.push_back(inc);
        prev_d = d;
    }
    std::vector<int> powers;
    for (size_t j = 0; j < count_ge.size(); ++j) {
        int exact = count_ge[j] - (j + 1 < count_ge.size() ? count_ge[j + 1] : 0);
        for (int t = 0; t < exact; ++t) powers.push_back(static_cast<int>(j) + 1);
    }
    return powers;
}

// Halves a multiset of powers, insisting each value occurs evenly.
std::vector<int> halve_powers(const std::vector<int>& powers) {
    std::map<int, int> counts;
    for (int l : powers) ++counts[l];
    std::vector<int> out;
    for (auto& [l, c] : counts) {
        if (c % 2 != 0)
            throw InternalError("elementary divisor repeats an odd number of times");
        for (int t = 0; t < c / 2; ++t) out.push_back(l);
    }
    return out;
}

// A nonzero maximal minor of z*A + B as a polynomial in z, found by pivoting
// at a sample point and evaluating/interpolating exact determinants.
UPoly sample_minor(const RatMatrix& A, const RatMatrix& B, int rho, std::mt19937_64& rng) {
    int q = A.rows;
    for (int attempt = 0; attempt < 32; ++attempt) {
        Rat z0(static_cast<long>(rng() % 4001) - 2000);
        RatMatrix M0 = z0 * A + B;
        // random row/column shuffle so different attempts pick different minors
        std::vector<int> rperm(q), cperm(q);
        for (int i = 0; i < q; ++i) rperm[i] = cperm[i] = i;
        std::shuffle(rperm.begin(), rperm.end(), rng);
        std::shuffle(cperm.begin(), cperm.end(), rng);
        RatMatrix Ms(q, q);
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j) Ms.at(i, j) = M0.at(rperm[i], cperm[j]);
        std::vector<int> cols = mat_pivot_cols(Ms);
        if (static_cast<int>(cols.size()) != rho) continue;  // unlucky z0
        RatMatrix sub(q, rho);
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < rho; ++j) sub.at(i, j) = Ms.at(i, cols[j]);
        std::vector<int> rows = mat_pivot_cols(sub.transpose());
        if (static_cast<int>(rows.size()) != rho) continue;
        // evaluate the minor at rho+1 points and interpolate (degree <= rho)
        std::vector<Rat> xs, ys;
        RatMatrix sq(rho, rho);
        for (int k = 0; k <= rho; ++k) {
            Rat zk(static_cast<long>(k));
            for (int i = 0; i < rho; ++i)
                for (int j = 0; j < rho; ++j) {
                    int ri = rperm[rows[i]], cj = cperm[cols[j]];
                    sq.at(i, j) = zk * A.at(ri, cj) + B.at(ri, cj);
                }
            xs.push_back(zk);
            ys.push_back(mat_det(sq));
        }
        UPoly p = detail::up_interpolate(xs, ys);
        if (!detail::up_is_zero(p)) return p;
    }
    throw InternalError("no nonzero maximal minor found");
}

BinaryForm homogenize_poly(const UPoly& p) {
    int d = detail::up_deg(p);
    std::vector<Rat> c(d + 1, Rat(0));
    for (size_t k = 0; k < p.size(); ++k) c[d - k] = p[k];
    return BinaryForm(d, std::move(c));
}

}  // namespace

PencilInvariants compute_invariants(const SkewPencil& p, Mode mode, double tol) {
    // linear independence of J1, J2 over Q
    {
        bool dep = p.J1.is_zero() || p.J2.is_zero();
        if (!dep) {
            Rat c;
            bool have = false;
            dep = true;
            for (size_t k = 0; k < p.J1.entries.size() && dep; ++k) {
                const Rat &a = p.J1.entries[k], &b = p.J2.entries[k];
                if (a == 0) {
                    if (b != 0) dep = false;
                    continue;
                }
                if (!have) {
                    c = b / a;
                    have = true;
                } else if (b != c * a) {
                    dep = false;
                }
            }
        }
        if (dep) throw DegenerateError("J1, J2 are linearly dependent");
    }

    PencilInvariants inv;
    auto [ks, ckd] = minimal_indices(p);
    inv.minimal_indices = std::move(ks);
    inv.common_kernel_dim = ckd;

    // split off the common kernel by congruence with [complement | kernel]
    RatMatrix A0 = p.J1, B0 = p.J2;
    int q = p.q;
    if (ckd > 0) {
        RatMatrix K = mat_nullspace(vstack(p.J1, p.J2));
        RatMatrix basis = K;
        std::vector<int> complement;
        for (int i = 0; i < q && basis.cols < q; ++i) {
            RatMatrix e(q, 1);
            e.at(i, 0) = 1;
            RatMatrix cand = hstack(basis, e);
            if (mat_rank(cand) == cand.cols) {
                basis = cand;
                complement.push_back(i);
            }
        }
        int qr = q - ckd;
        RatMatrix P(q, q);
        for (int j = 0; j < qr; ++j) P.at(complement[j], j) = 1;
        for (int j = 0; j < ckd; ++j)
            for (int i = 0; i < q; ++i) P.at(i, qr + j) = K.at(i, j);
        RatMatrix Pt = P.transpose();
        RatMatrix J1f = Pt * p.J1 * P, J2f = Pt * p.J2 * P;
        A0 = RatMatrix(qr, qr);
        B0 = RatMatrix(qr, qr);
        for (int i = 0; i < qr; ++i)
            for (int j = 0; j < qr; ++j) {
                A0.at(i, j) = J1f.at(i, j);
                B0.at(i, j) = J2f.at(i, j);
            }
        q = qr;
    }

    // variable change (x,y) <- (x + t*y, y) so that J1 + t*J2 attains the
    // normal rank; kills pure y-power divisors
    int rho = generic_rank(pencil_matrix(A0, B0));
    RatMatrix A(q, q), M(2, 2);
    bool found = false;
    for (int step = 0; step <= 2 * q + 2 && !found; ++step) {
        long t = (step % 2 == 0) ? step / 2 : -(step + 1) / 2;
        RatMatrix cand = A0 + Rat(t) * B0;
        if (mat_rank(cand) == rho) {
            A = cand;
            M = RatMatrix(2, 2, {Rat(1), Rat(0), Rat(t), Rat(1)});
            found = true;
        }
    }
    if (!found) throw InternalError("no variable change attains the normal rank");
    inv.variable_change = M;
    const RatMatrix& B = B0;
    int kappa = q - rho;  // function-field kernel dim of the reduced pencil

    if (rho > 0) {
        // candidate roots: factor the gcd of a few random maximal minors of
        // z*A + B; every minor is a multiple of the invariant product, so the
        // candidate set is a superset of the true roots (extras die in the
        // rank tests below)
        std::mt19937_64 rng(0x6e70656eULL);
        UPoly g = sample_minor(A, B, rho, rng);
        int stable = 0;
        for (int extra = 0; extra < 6 && detail::up_deg(g) > 0 && stable < 2; ++extra) {
            UPoly g2 = detail::up_gcd(g, sample_minor(A, B, rho, rng));
            stable = (detail::up_deg(g2) == detail::up_deg(g)) ? stable + 1 : 0;
            g = std::move(g2);
        }

        if (detail::up_deg(g) > 0) {
            Factorization fac;
            for (int round = 0;; ++round) {
                try {
                    fac = factor_form(
                        homogenize_poly(g),
                        mode == Mode::Exact ? FactorMode::Exact : FactorMode::Numeric,
                        tol);
                    break;
                } catch (const UnsupportedError&) {
                    // a spurious common factor of the sampled minors can be
                    // irrational even when the true invariant factors are
                    // rational; more samples shrink the gcd. Rethrow once
                    // the degree stabilizes: the factor is genuine then.
                    UPoly g2 = g;
                    for (int extra = 0; extra < 4; ++extra)
                        g2 = detail::up_gcd(g2, sample_minor(A, B, rho, rng));
                    if (round >= 6 || detail::up_deg(g2) == detail::up_deg(g)) throw;
                    g = std::move(g2);
                    if (detail::up_deg(g) == 0) break;
                }
            }
            for (const auto& [f, mult] : fac.factors) {
                if (f.degree == 1 && f.coeffs[0] != 0) {
                    // factor x + a*y: candidate real root a
                    Rat a = f.coeffs[1] / f.coeffs[0];
                    std::vector<int> powers;
                    if (mode == Mode::Exact) {
                        RatMatrix E = B - a * A;
                        powers = powers_from_deficiencies(q, kappa, [&](int j) {
                            return mat_rank(toeplitz_block(E, A, j));
                        });
                    } else {
                        Eigen::MatrixXd E = B.to_double() - rat_to_double(a) * A.to_double();
                        Eigen::MatrixXd F = A.to_double();
                        powers = powers_from_deficiencies(q, kappa, [&](int j) {
                            int n = q;
                            Eigen::MatrixXd T = Eigen::MatrixXd::Zero(j * n, j * n);
                            for (int b = 0; b < j; ++b) {
                                T.block(b * n, b * n, n, n) = E;
                                if (b + 1 < j) T.block((b + 1) * n, b * n, n, n) = F;
                            }
                            return rank_numeric(T, tol);
                        });
                    }
                    for (int l : halve_powers(powers))
                        inv.real_divisors.push_back({a, l});
                } else if (f.degree == 2) {
                    // factor x^2 + 2*mu*x*y + (mu^2+nu^2)*y^2
                    Rat mu = f.coeffs[1] / 2;
                    Rat nu2 = f.coeffs[2] - mu * mu;
                    auto nu = rat_sqrt_exact(nu2);
                    if (!nu) {
                        if (mode == Mode::Exact)
                            throw UnsupportedError("irrational imaginary part of divisor root");
                        nu = rat_from_double(std::sqrt(rat_to_double(nu2)));
                    }
                    std::vector<int> powers;
                    if (mode == Mode::Exact) {
                        // rank over Q(i) via realification (rational rank is 2x)
                        RatMatrix E = realify(B - mu * A, Rat(-*nu) * A);
                        RatMatrix F = realify(A, RatMatrix(q, q));
                        powers = powers_from_deficiencies(q, kappa, [&](int j) {
                            int r2 = mat_rank(toeplitz_block(E, F, j));
                            if (r2 % 2 != 0) throw InternalError("odd realified rank");
                            return r2 / 2;
                        });
                    } else {
                        std::complex<double> root(rat_to_double(mu), rat_to_double(*nu));
                        Eigen::MatrixXcd Ad = A.to_double(), Bd = B.to_double();
                        Eigen::MatrixXcd E = Bd - root * Ad;
                        powers = powers_from_deficiencies(q, kappa, [&](int j) {
                            return rank_numeric_c(toeplitz_block_c(E, Ad, j), tol);
                        });
                    }
                    for (int n : halve_powers(powers))
                        inv.complex_divisors.push_back({mu, *nu, n});
                }
                (void)mult;  // multiplicities come from the rank tests instead
            }
        }
    }

    int dim = inv.common_kernel_dim;
    for (const auto& d : inv.real_divisors) dim += 2 * d.power;
    for (const auto& d : inv.complex_divisors) dim += 4 * d.power;
    for (int k : inv.minimal_indices) dim += 2 * k + 1;
    if (dim != p.q) throw InternalError("divisor dimensions do not add up");

    inv.case_tag = case_tag_of(inv.real_divisors, inv.complex_divisors);
    sort_invariants(inv);
    return inv;
}

}  // namespace nilpencil

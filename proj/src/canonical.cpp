#include "nilpencil/canonical.hpp"

#include <random>

#include "nilpencil/errors.hpp"

namespace nilpencil {

int CanonicalSpec::dimension() const {
    int q = padding;
    for (const auto& d : real_divisors) q += 2 * d.power;
    for (const auto& d : complex_divisors) q += 4 * d.power;
    for (int k : minimal_indices) q += 2 * k + 1;
    return q;
}

RatMatrix block_I(int n) { return RatMatrix::identity(n); }

RatMatrix block_N(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i + 1 < n; ++i) m.at(i, i + 1) = 1;
    return m;
}

RatMatrix block_D(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = i + 1;
    return m;
}

RatMatrix block_L(int k) {
    RatMatrix m(k, k + 1);
    for (int i = 0; i < k; ++i) m.at(i, i) = 1;
    return m;
}

RatMatrix block_R(int k) {
    RatMatrix m(k, k + 1);
    for (int i = 0; i < k; ++i) m.at(i, i + 1) = 1;
    return m;
}

RatMatrix block_Ic(int n2) {
    if (n2 % 2 != 0) throw BadDimensionsError("Ic block must have even size");
    RatMatrix m(n2, n2);
    for (int i = 0; i < n2; i += 2) {
        m.at(i, i + 1) = 1;
        m.at(i + 1, i) = -1;
    }
    return m;
}

RatMatrix block_sk(const RatMatrix& A) {
    int m = A.rows, n = A.cols;
    RatMatrix s(m + n, m + n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            s.at(i, m + j) = A.at(i, j);
            s.at(m + j, i) = -A.at(i, j);
        }
    return s;
}

namespace {

void check_spec(const CanonicalSpec& spec) {
    if (spec.real_divisors.empty() && spec.complex_divisors.empty() &&
        spec.minimal_indices.empty())
        throw SpecInvalidError("need at least one divisor or minimal index");
    for (const auto& d : spec.real_divisors)
        if (d.power < 1) throw SpecInvalidError("divisor power must be positive");
    for (const auto& d : spec.complex_divisors) {
        if (d.power < 1) throw SpecInvalidError("divisor power must be positive");
        if (d.nu <= 0) throw SpecInvalidError("nu must be positive");
    }
    for (int k : spec.minimal_indices)
        if (k < 1) throw SpecInvalidError("minimal indices must be >= 1");
    if (spec.padding < 0) throw SpecInvalidError("padding must be nonnegative");
}

SkewPencil finish(RatMatrix j1, RatMatrix j2, int padding) {
    if (padding > 0) {
        RatMatrix z(padding, padding);
        j1 = dsum(j1, z);
        j2 = dsum(j2, z);
    }
    SkewPencil p(std::move(j1), std::move(j2));
    // independence over Q; e.g. a lone (a, 1) divisor gives J2 = a*J1
    bool dep = p.J1.is_zero() || p.J2.is_zero();
    if (!dep) {
        Rat c;
        bool have = false;
        dep = true;
        for (size_t k = 0; k < p.J1.entries.size() && dep; ++k) {
            const Rat &a = p.J1.entries[k], &b = p.J2.entries[k];
            if (a == 0) {
                if (b != 0) dep = false;
            } else if (!have) {
                c = b / a;
                have = true;
            } else if (b != c * a) {
                dep = false;
            }
        }
    }
    if (dep) throw SpecInvalidError("spec produces linearly dependent J1, J2");
    return p;
}

}  // namespace

SkewPencil synthesize(const CanonicalSpec& spec) {
    check_spec(spec);
    RatMatrix j1(0, 0), j2(0, 0);
    for (const auto& d : spec.real_divisors) {
        int l = d.power;
        j1 = dsum(j1, block_sk(block_I(l)));
        j2 = dsum(j2, block_sk(d.root * block_I(l) + block_N(l)));
    }
    for (const auto& d : spec.complex_divisors) {
        int n2 = 2 * d.power;
        RatMatrix N = block_N(n2);
        j1 = dsum(j1, block_sk(block_I(n2)));
        j2 = dsum(j2, block_sk(d.mu * block_I(n2) + d.nu * block_Ic(n2) + N * N));
    }
    for (int k : spec.minimal_indices) {
        j1 = dsum(j1, block_sk(block_L(k)));
        j2 = dsum(j2, block_sk(block_R(k)));
    }
    return finish(std::move(j1), std::move(j2), spec.padding);
}

SkewPencil synthesize_subsingular(const std::vector<int>& group1,
                                  const std::vector<int>& group2,
                                  const std::vector<int>& minimal_indices, int padding) {
    RatMatrix j1(0, 0), j2(0, 0);
    for (int l : group1) {
        if (l < 1) throw SpecInvalidError("divisor power must be positive");
        j1 = dsum(j1, block_sk(block_I(l)));
        j2 = dsum(j2, block_sk(block_N(l)));
    }
    for (int l : group2) {
        if (l < 1) throw SpecInvalidError("divisor power must be positive");
        j1 = dsum(j1, block_sk(block_N(l)));
        j2 = dsum(j2, block_sk(block_I(l)));
    }
    for (int k : minimal_indices) {
        if (k < 1) throw SpecInvalidError("minimal indices must be >= 1");
        j1 = dsum(j1, block_sk(block_L(k)));
        j2 = dsum(j2, block_sk(block_R(k)));
    }
    if (j1.rows == 0 && padding == 0)
        throw SpecInvalidError("need at least one divisor or minimal index");
    return finish(std::move(j1), std::move(j2), padding);
}

Equivalence random_equivalence_detail(const SkewPencil& p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    int q = p.q;
    std::uniform_int_distribution<int> pos(0, q - 1);
    std::uniform_int_distribution<int> val(1, 3);
    std::uniform_int_distribution<int> sign(0, 1);
    RatMatrix P = RatMatrix::identity(q);
    for (int f = 0; f < 4 * q; ++f) {
        int i = pos(rng), j = pos(rng);
        if (i == j) continue;
        long v = val(rng) * (sign(rng) ? 1 : -1);
        // left-multiply P by the shear I + v*E_ij
        for (int col = 0; col < q; ++col) P.at(i, col) += Rat(v) * P.at(j, col);
    }
    RatMatrix W(2, 2);
    std::uniform_int_distribution<int> wv(-2, 2);
    do {
        for (auto& e : W.entries) e = wv(rng);
    } while (W.at(0, 0) * W.at(1, 1) - W.at(0, 1) * W.at(1, 0) == 0);
    Equivalence eq{transform_pencil(congruence(p, P), W), std::move(P), std::move(W)};
    return eq;
}

SkewPencil random_equivalence(const SkewPencil& p, std::uint64_t seed) {
    return random_equivalence_detail(p, seed).pencil;
}

}  // namespace nilpencil

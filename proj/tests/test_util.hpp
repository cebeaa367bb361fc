#pragma once

// Shared helpers for the test binaries: deterministic random generators for
// invariant data and pencils, and multiset comparison of invariants.

#include <algorithm>
#include <random>
#include <vector>

#include "nilpencil/canonical.hpp"
#include "nilpencil/pencil.hpp"

namespace nilpencil::testutil {

inline PencilInvariants invariants_from_spec(const CanonicalSpec& spec) {
    PencilInvariants inv;
    inv.real_divisors = spec.real_divisors;
    inv.complex_divisors = spec.complex_divisors;
    inv.minimal_indices = spec.minimal_indices;
    inv.common_kernel_dim = spec.padding;
    inv.variable_change = RatMatrix::identity(2);
    inv.case_tag = case_tag_of(spec.real_divisors, spec.complex_divisors);
    return inv;
}

/// Multiset equality of the invariant content (variable change excluded:
/// it is a normalization artifact, not an invariant).
inline bool same_invariants(const PencilInvariants& a, const PencilInvariants& b) {
    if (a.common_kernel_dim != b.common_kernel_dim) return false;
    auto ka = a.minimal_indices, kb = b.minimal_indices;
    std::sort(ka.begin(), ka.end());
    std::sort(kb.begin(), kb.end());
    if (ka != kb) return false;
    auto rkey = [](const RealDivisor& d) { return std::pair(d.root, d.power); };
    auto ra = a.real_divisors, rb = b.real_divisors;
    auto rcmp = [&](const RealDivisor& x, const RealDivisor& y) {
        return rkey(x) < rkey(y);
    };
    std::sort(ra.begin(), ra.end(), rcmp);
    std::sort(rb.begin(), rb.end(), rcmp);
    if (ra.size() != rb.size()) return false;
    for (size_t i = 0; i < ra.size(); ++i)
        if (!(ra[i] == rb[i])) return false;
    auto ckey = [](const ComplexDivisor& d) { return std::tuple(d.mu, d.nu, d.power); };
    auto ca = a.complex_divisors, cb = b.complex_divisors;
    auto ccmp = [&](const ComplexDivisor& x, const ComplexDivisor& y) {
        return ckey(x) < ckey(y);
    };
    std::sort(ca.begin(), ca.end(), ccmp);
    std::sort(cb.begin(), cb.end(), ccmp);
    if (ca.size() != cb.size()) return false;
    for (size_t i = 0; i < ca.size(); ++i)
        if (!(ca[i] == cb[i])) return false;
    return true;
}

/// Random spec with q <= max_q; guarantees J1, J2 independent in the
/// synthesized pencil (at least one block that separates them).
inline CanonicalSpec random_spec(std::mt19937_64& rng, int max_q) {
    std::uniform_int_distribution<int> small(-4, 4), den(1, 3), pw(1, 2);
    for (;;) {
        CanonicalSpec spec;
        int budget = max_q;
        std::uniform_int_distribution<int> coin(0, 3);
        while (budget >= 2) {
            int kind = coin(rng);
            if (kind == 0) {  // real divisor
                int p = pw(rng);
                if (2 * p > budget) continue;
                spec.real_divisors.push_back({Rat(small(rng), den(rng)), p});
                budget -= 2 * p;
            } else if (kind == 1 && budget >= 4) {  // complex divisor
                int p = pw(rng);
                if (4 * p > budget) continue;
                spec.complex_divisors.push_back(
                    {Rat(small(rng), den(rng)), Rat(std::abs(small(rng)) + 1, den(rng)), p});
                budget -= 4 * p;
            } else if (kind == 2 && budget >= 3) {  // minimal index
                int k = 1 + (pw(rng) - 1);
                if (2 * k + 1 > budget) continue;
                spec.minimal_indices.push_back(k);
                budget -= 2 * k + 1;
            } else {  // stop or pad
                if (coin(rng) == 0) break;
                spec.padding += 1;
                budget -= 1;
            }
        }
        spec.padding += budget < 0 ? 0 : 0;
        if (spec.dimension() < 2) continue;
        // independence: some block must make J2 not a multiple of J1
        bool independent = !spec.minimal_indices.empty() || !spec.complex_divisors.empty();
        for (const auto& d : spec.real_divisors)
            if (d.power > 1) independent = true;
        if (!independent) {
            std::vector<Rat> roots;
            for (const auto& d : spec.real_divisors) roots.push_back(d.root);
            std::sort(roots.begin(), roots.end());
            roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
            independent = roots.size() >= 2;
        }
        if (!independent) continue;
        return spec;
    }
}

}  // namespace nilpencil::testutil

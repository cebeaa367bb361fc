// Acceptance checks, one printed pass/fail line per criterion.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "nilpencil/algebra.hpp"
#include "nilpencil/canonical.hpp"
#include "nilpencil/classifier.hpp"
#include "nilpencil/errors.hpp"
#include "nilpencil/nilsoliton.hpp"
#include "nilpencil/pre_einstein.hpp"
#include "test_util.hpp"

using namespace nilpencil;
using namespace nilpencil::testutil;

namespace {

int g_failures = 0;

void report(int number, const char* name, bool ok, const std::string& detail) {
    std::printf("criterion %d (%s): %s%s%s\n", number, name, ok ? "PASS" : "FAIL",
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++g_failures;
}

void run(int number, const char* name, const std::function<std::string()>& body) {
    try {
        std::string detail = body();
        bool ok = detail.rfind("FAIL", 0) != 0;
        report(number, name, ok, ok ? detail : detail.substr(5));
    } catch (const std::exception& e) {
        report(number, name, false, std::string("exception: ") + e.what());
    }
}

/// All multisets of positive integers (non-increasing) with the given sum.
std::vector<std::vector<int>> partitions(int s) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rem, int maxpart) {
        if (rem == 0) {
            out.push_back(cur);
            return;
        }
        for (int v = std::min(rem, maxpart); v >= 1; --v) {
            cur.push_back(v);
            rec(rem - v, v);
            cur.pop_back();
        }
    };
    rec(s, s);
    return out;
}

bool all_one(const std::vector<int>& v) {
    for (int x : v)
        if (x != 1) return false;
    return true;
}

PencilInvariants subsingular_invariants(const std::vector<int>& g1,
                                        const std::vector<int>& g2,
                                        const std::vector<int>& ks) {
    PencilInvariants inv;
    for (int l : g1) inv.real_divisors.push_back({Rat(0), l});
    for (int l : g2) inv.real_divisors.push_back({Rat(1), l});
    inv.minimal_indices = ks;
    inv.variable_change = RatMatrix::identity(2);
    inv.case_tag = CaseTag::Case2;
    return inv;
}

std::string criterion_roundtrip() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20260823);
    for (int t = 0; t < 200; ++t) {
        CanonicalSpec spec = random_spec(rng, 14);
        SkewPencil p = synthesize(spec);
        Equivalence eq = random_equivalence_detail(p, rng());
        PencilInvariants inv = compute_invariants(eq.pencil);
        RatMatrix total = eq.variable_change * inv.variable_change;
        PencilInvariants back = transform_invariants(inv, *mat_inverse(total));
        if (!same_invariants(back, invariants_from_spec(spec)))
            return "FAIL trial " + std::to_string(t) + " did not round-trip";
    }
    auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
    if (secs.count() > 60.0)
        return "FAIL 200 round-trips took " + std::to_string(secs.count()) + " s";
    char buf[64];
    std::snprintf(buf, sizeof buf, "200 round-trips in %.1f s", secs.count());
    return buf;
}

std::string criteria_subsingular_oracle(bool closed_form_check) {
    int total = 0;
    for (int s1 = 0; s1 <= 10; ++s1)
        for (int s2 = 0; s1 + s2 <= 10; ++s2)
            for (int s3 = 0; s1 + s2 + s3 <= 10; ++s3) {
                if (s1 + s2 + s3 == 0) continue;
                for (const auto& g1 : partitions(s1))
                    for (const auto& g2 : partitions(s2))
                        for (const auto& ks : partitions(s3)) {
                            // both pencil generators must be nonzero
                            if (g2.empty() && ks.empty() && all_one(g1)) continue;
                            if (g1.empty() && ks.empty() && all_one(g2)) continue;
                            PencilInvariants inv = subsingular_invariants(g1, g2, ks);
                            Verdict lab = classify(inv);
                            TwoStepAlgebra n = from_pencil(synthesize_subsingular(
                                lab.group1, lab.group2, ks, 0));
                            NiceBasisSolution solved = solve_alpha(build_nice_Y(n));
                            ++total;
                            if (!closed_form_check) {
                                if (solved.positive != lab.is_einstein)
                                    return "FAIL verdict disagrees with alpha "
                                           "positivity at spec " +
                                           std::to_string(total);
                            } else {
                                NiceBasisSolution closed = alpha_closed_form_case2(inv);
                                if (closed.alpha != solved.alpha)
                                    return "FAIL closed form differs at spec " +
                                           std::to_string(total);
                                if (!closed.nu1 || *closed.nu1 <= 0 || *closed.nu2 <= 0)
                                    return "FAIL mixing weights not positive at spec " +
                                           std::to_string(total);
                            }
                        }
            }
    return std::to_string(total) + " specs, no disagreement";
}

std::string criterion_free_abelian_duals() {
    for (int f = 2; f <= 6; ++f)
        for (int a = 1; a <= 6; ++a) {
            TwoStepAlgebra dual = dualize(free_two_step(f, a));
            NiceBasisSolution sol = solve_alpha(build_nice_Y(dual));
            Rat delta = Rat(1) / (2 * a * a + a + f - 1);
            int n_pos = 0, n_neg = 0;
            for (const Rat& x : sol.alpha) {
                if (x == Rat(a) * delta) ++n_pos;
                else if (x == Rat(a + 1 - f) * delta) ++n_neg;
                else
                    return "FAIL unexpected component at f=" + std::to_string(f) +
                           " a=" + std::to_string(a);
            }
            if (n_pos != f * a || n_neg != a * (a - 1) / 2)
                return "FAIL component counts at f=" + std::to_string(f) +
                       " a=" + std::to_string(a);
            // at a = 1 the second family is empty, so the dual is an
            // Einstein nilradical there as well (boundary of a >= f)
            bool expected = (a >= f) || (a == 1);
            if (sol.positive != expected)
                return "FAIL positivity at f=" + std::to_string(f) +
                       " a=" + std::to_string(a);
        }
    return "f in 2..6, a in 1..6, exact components and boundary";
}

std::string criterion_dual_heisenberg() {
    int count = 0;
    for (int q = 3; q <= 8; ++q)
        for (int d = 1; 2 * d <= q; ++d) {
            DualHeisenberg dh = construct_dual_heisenberg(q, d);
            if (dh.certificate.ricci_residual > 1e-10 ||
                dh.certificate.derivation_residual > 1e-10)
                return "FAIL residual at q=" + std::to_string(q) +
                       " d=" + std::to_string(d);
            if (dh.r1_sq != Rat(d * (q - 1)) || dh.r2_sq != Rat(q * d - d - 1) ||
                dh.r3_sq != Rat(q * d - d - 2))
                return "FAIL squared norms at q=" + std::to_string(q) +
                       " d=" + std::to_string(d);
            ++count;
        }
    return std::to_string(count) + " (q, d) pairs certified";
}

CanonicalSpec random_generic_spec(std::mt19937_64& rng, bool powers_one) {
    std::uniform_int_distribution<int> nu(2, 5), nw(0, 1), nk(0, 2), small(-6, 6),
        den(1, 3), pw(1, 2);
    for (;;) {
        CanonicalSpec spec;
        std::set<Rat> used;
        int u = nu(rng), w = nw(rng), v = nk(rng);
        for (int i = 0; i < u; ++i) {
            Rat r(small(rng), den(rng));
            if (used.count(r)) continue;
            used.insert(r);
            spec.real_divisors.push_back({r, powers_one ? 1 : pw(rng)});
        }
        for (int i = 0; i < w; ++i)
            spec.complex_divisors.push_back(
                {Rat(small(rng), den(rng)), Rat(std::abs(small(rng)) + 1, den(rng)),
                 powers_one ? 1 : pw(rng)});
        for (int i = 0; i < v; ++i) spec.minimal_indices.push_back(1 + nw(rng));
        if (case_tag_of(spec.real_divisors, spec.complex_divisors) != CaseTag::Case1)
            continue;
        return spec;
    }
}

std::string criterion_pre_einstein_agreement() {
    std::mt19937_64 rng(424242);
    for (int t = 0; t < 20; ++t) {
        CanonicalSpec spec = random_generic_spec(rng, /*powers_one=*/false);
        PencilInvariants inv = invariants_from_spec(spec);
        PreEinsteinDerivation closed = case1_pre_einstein(inv);
        PreEinsteinDerivation solved =
            solve_pre_einstein(from_pencil(synthesize(spec)));
        if (solved.eigenvalues != closed.eigenvalues)
            return "FAIL spectra differ at trial " + std::to_string(t);
    }
    return "20 random generic specs, exact agreement";
}

std::string criterion_sl2_pipeline() {
    std::mt19937_64 rng(777);
    int done = 0, benchmarked = 0;
    while (done < 50) {
        CanonicalSpec spec = random_generic_spec(rng, /*powers_one=*/true);
        PencilInvariants inv = invariants_from_spec(spec);
        Verdict v = classify(inv);
        if (!v.is_einstein) continue;
        SL2State st = sl2_minimize(inv);
        if (st.outcome != SL2Outcome::Converged || st.grad.norm() > 1e-10)
            return "FAIL minimizer did not reach the tolerance at trial " +
                   std::to_string(done);
        NilsolitonCertificate cert = assemble_case1_metric(inv, st);
        if (cert.ricci_residual > 1e-8 || cert.derivation_residual > 1e-8)
            return "FAIL residual " + std::to_string(cert.ricci_residual) +
                   " at trial " + std::to_string(done);
        if (spec.minimal_indices.empty()) {
            int q = spec.dimension();
            if (cert.type.lambdas != std::vector<long>{1, 2} ||
                cert.type.dims != std::vector<int>{q, 2})
                return "FAIL eigenvalue type at trial " + std::to_string(done);
        }
        ++done;
    }
    // analytic benchmark
    CanonicalSpec bench{{{Rat(0), 1}, {Rat(1), 1}, {Rat(-1), 1}}, {}, {}, 0};
    SL2State st = sl2_minimize(invariants_from_spec(bench));
    double s = 1.0 / std::sqrt(3.0);
    if (std::abs(st.S(0, 0) - s) > 1e-8 || std::abs(st.S(1, 1) - 1.0 / s) > 1e-8 ||
        std::abs(st.S(0, 1)) > 1e-8)
        return "FAIL analytic benchmark minimizer";
    ++benchmarked;
    return "50 certificates plus the analytic benchmark";
}

std::string criterion_witness() {
    std::mt19937_64 rng(909090);
    std::uniform_int_distribution<int> nm(3, 5), small(-6, 6);
    for (int t = 0; t < 10; ++t) {
        // m copies of one root plus two distinct others: generic, and the
        // repetition bound m < u/2 + w (u = m + 2, w = 0) fails for m >= 2
        CanonicalSpec spec;
        int m = nm(rng), r = 2;
        Rat xi(small(rng));
        for (int i = 0; i < m; ++i) spec.real_divisors.push_back({xi, 1});
        std::set<Rat> used{xi};
        while (r > 0) {
            Rat other(small(rng));
            if (used.count(other)) continue;
            used.insert(other);
            spec.real_divisors.push_back({other, 1});
            --r;
        }
        PencilInvariants inv = invariants_from_spec(spec);
        DegenerationWitness w = degeneration_witness(inv);
        if (same_invariants(w.limit_invariants, inv))
            return "FAIL limit invariants equal the input at trial " +
                   std::to_string(t);
        SL2State st = sl2_minimize(inv);
        if (st.outcome != SL2Outcome::NoMinimum)
            return "FAIL expected ray divergence at trial " + std::to_string(t);
    }
    return "10 witnesses, all limits non-isomorphic";
}

std::string criterion_heisenberg() {
    RatMatrix J(2, 2);
    J.at(0, 1) = Rat(1);
    J.at(1, 0) = Rat(-1);
    SolitonFit fit = nilsoliton_residual(from_tuple({J}), MetricData::identity(3));
    if (!fit.exact || fit.residual != 0.0) return "FAIL residual not exactly zero";
    if (fit.C_exact != Rat(-3, 2)) return "FAIL Einstein constant";
    RatMatrix expected(3, 3);
    expected.at(0, 0) = Rat(1);
    expected.at(1, 1) = Rat(1);
    expected.at(2, 2) = Rat(2);
    if (!(fit.Phi_exact == expected)) return "FAIL derivation";
    return "C = -3/2, derivation diag(1,1,2), residual 0";
}

}  // namespace

int main() {
    run(1, "invariant round-trip", criterion_roundtrip);
    run(2, "classifier vs alpha positivity",
        [] { return criteria_subsingular_oracle(false); });
    run(3, "closed-form alpha cross-check",
        [] { return criteria_subsingular_oracle(true); });
    run(4, "free-plus-abelian duals", criterion_free_abelian_duals);
    run(5, "maximal-type family", criterion_dual_heisenberg);
    run(6, "pre-Einstein agreement", criterion_pre_einstein_agreement);
    run(7, "convex minimization pipeline", criterion_sl2_pipeline);
    run(8, "degeneration witnesses", criterion_witness);
    run(9, "Heisenberg sanity", criterion_heisenberg);
    return g_failures;
}

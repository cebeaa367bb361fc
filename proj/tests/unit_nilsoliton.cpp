#include <doctest.h>

#include <cmath>

#include "nilpencil/classifier.hpp"
#include "nilpencil/errors.hpp"
#include "nilpencil/nilsoliton.hpp"
#include "test_util.hpp"

using namespace nilpencil;
using namespace nilpencil::testutil;

namespace {

PencilInvariants inv_of(std::vector<RealDivisor> rd, std::vector<int> ks,
                        std::vector<ComplexDivisor> cd = {}) {
    CanonicalSpec spec{std::move(rd), std::move(cd), std::move(ks), 0};
    return invariants_from_spec(spec);
}

}  // namespace

TEST_CASE("bracket incidence matrix and alpha for the elementary singular algebra") {
    TwoStepAlgebra n = from_pencil(synthesize(CanonicalSpec{{}, {}, {1}, 0}));
    RatMatrix Y = build_nice_Y(n);
    CHECK(Y.rows == 2);
    CHECK(Y.cols == 5);
    NiceBasisSolution sol = solve_alpha(Y);
    CHECK(sol.positive);
    CHECK(sol.alpha == std::vector<Rat>{Rat(1, 4), Rat(1, 4)});
}

TEST_CASE("closed form and linear solve agree on a mixed subsingular family") {
    for (auto [g1, g2, ks] : {std::tuple<std::vector<int>, std::vector<int>,
                                         std::vector<int>>{{2, 1}, {1}, {1}},
                              {{1, 1}, {}, {2}},
                              {{3}, {2, 1}, {}}}) {
        PencilInvariants inv =
            compute_invariants(synthesize_subsingular(g1, g2, ks, 0));
        Verdict lab = classify(inv);
        TwoStepAlgebra n = from_pencil(
            synthesize_subsingular(lab.group1, lab.group2, inv.minimal_indices, 0));
        NiceBasisSolution solved = solve_alpha(build_nice_Y(n));
        NiceBasisSolution closed = alpha_closed_form_case2(inv);
        CHECK(solved.alpha == closed.alpha);
        CHECK(solved.positive == closed.positive);
        CHECK(solved.positive == lab.is_einstein);
        REQUIRE(closed.nu1.has_value());
        CHECK(*closed.nu1 > 0);
        CHECK(*closed.nu2 > 0);
    }
}

TEST_CASE("convex minimization: analytic benchmark for roots {0,1,-1}") {
    SL2State st = sl2_minimize(inv_of({{Rat(0), 1}, {Rat(1), 1}, {Rat(-1), 1}}, {}));
    REQUIRE(st.outcome == SL2Outcome::Converged);
    CHECK(st.grad.norm() <= 1e-10);
    double s = 1.0 / std::sqrt(3.0);
    CHECK(std::abs(st.S(0, 0) - s) < 1e-8);
    CHECK(std::abs(st.S(1, 1) - 1.0 / s) < 1e-8);
    CHECK(std::abs(st.S(0, 1)) < 1e-8);
}

TEST_CASE("metric assembly certifies across block mixes") {
    // the complex-block scaling once broke when the minimizer was
    // non-diagonal; keep a mixed real+complex regression here
    for (const PencilInvariants& inv :
         {inv_of({{Rat(0), 1}, {Rat(1), 1}, {Rat(-1), 1}}, {}),
          inv_of({{Rat(0), 1}, {Rat(1), 1}, {Rat(-1), 1}}, {1}),
          inv_of({{Rat(0), 1}}, {}, {{Rat(-1, 4), Rat(3, 4), 1}}),
          inv_of({}, {2}, {{Rat(1), Rat(1), 1}})}) {
        SL2State st = sl2_minimize(inv);
        REQUIRE(st.outcome == SL2Outcome::Converged);
        NilsolitonCertificate cert = assemble_case1_metric(inv, st);
        CHECK(cert.ricci_residual <= 1e-10);
        CHECK(cert.derivation_residual <= 1e-10);
    }
}

TEST_CASE("subsingular metric certifies from the positive solution") {
    PencilInvariants inv = compute_invariants(synthesize_subsingular({1, 1}, {1}, {1}, 0));
    NilsolitonCertificate cert = case2_metric(inv);
    CHECK(cert.ricci_residual <= 1e-10);
    CHECK(cert.derivation_residual <= 1e-10);
}

TEST_CASE("no minimum along a ray when the repetition bound fails") {
    PencilInvariants inv = inv_of(
        {{Rat(0), 1}, {Rat(0), 1}, {Rat(0), 1}, {Rat(1), 1}, {Rat(2), 1}}, {});
    SL2State st = sl2_minimize(inv);
    CHECK(st.outcome == SL2Outcome::NoMinimum);
}

TEST_CASE("degeneration witness: non-isomorphic limit, balanced rates") {
    PencilInvariants inv = inv_of(
        {{Rat(0), 1}, {Rat(0), 1}, {Rat(0), 1}, {Rat(1), 1}, {Rat(2), 1}}, {});
    DegenerationWitness w = degeneration_witness(inv);
    CHECK(w.xi == Rat(0));
    CHECK(w.multiplicity == 3);
    CHECK(!same_invariants(w.limit_invariants, inv));
    int balance = 0;
    for (int r : w.x_rate) balance += 2 * r;
    for (int r : w.y_rate) balance += 4 * r;
    CHECK(balance == 0);
    // no witness when the bound holds
    CHECK_THROWS_AS(
        degeneration_witness(inv_of({{Rat(0), 1}, {Rat(1), 1}, {Rat(2), 1}}, {})),
        ConditionHoldsError);
}

TEST_CASE("maximal-type dual of the Heisenberg algebra: exact soliton data") {
    DualHeisenberg dh = construct_dual_heisenberg(3, 1);
    CHECK(dh.r1_sq == Rat(2));   // d(q-1)
    CHECK(dh.r2_sq == Rat(1));   // qd-d-1
    CHECK(dh.r3_sq == Rat(0));   // qd-d-2 (no third block at l=1... value still reported)
    CHECK(dh.c == Rat(-1));
    // all five closed-form eigenvalues are reported, with their block sizes
    CHECK(dh.lambdas == std::vector<Rat>{Rat(3, 4), Rat(1, 2), Rat(3, 2),
                                         Rat(5, 4), Rat(1)});
    CHECK(dh.lambda_dims == std::vector<int>{2, 1, 0, 2, 0});
    CHECK(dh.certificate.ricci_residual <= 1e-10);
    CHECK(dh.certificate.derivation_residual <= 1e-10);
}

TEST_CASE("free algebra plus abelian ideal: dual positivity boundary") {
    for (int f = 2; f <= 3; ++f)
        for (int a = 1; a <= 3; ++a) {
            TwoStepAlgebra dual = dualize(free_two_step(f, a));
            NiceBasisSolution sol = solve_alpha(build_nice_Y(dual));
            Rat delta = Rat(1) / (2 * a * a + a + f - 1);
            int n_pos = 0, n_neg = 0, n_other = 0;
            for (const Rat& x : sol.alpha) {
                if (x == Rat(a) * delta) ++n_pos;
                else if (x == Rat(a + 1 - f) * delta) ++n_neg;
                else ++n_other;
            }
            CHECK(n_other == 0);
            CHECK(n_pos == f * a);
            CHECK(n_pos + n_neg == f * a + a * (a - 1) / 2);
            CHECK(sol.positive == (a >= f || a == 1));
        }
}

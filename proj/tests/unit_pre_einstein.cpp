#include <doctest.h>

#include "nilpencil/algebra.hpp"
#include "nilpencil/canonical.hpp"
#include "nilpencil/pre_einstein.hpp"
#include "test_util.hpp"

using namespace nilpencil;
using namespace nilpencil::testutil;

TEST_CASE("closed-form parameter for roots {0,1,2} with one singular block") {
    CanonicalSpec spec{{{Rat(0), 1}, {Rat(1), 1}, {Rat(2), 1}}, {}, {1}, 0};
    PreEinsteinDerivation d = case1_pre_einstein(invariants_from_spec(spec));
    REQUIRE(d.sigma.has_value());
    CHECK(*d.sigma == Rat(-6, 25));  // -4 / (9 + 8 - 1/3)
    // eigenvalues: 1+sigma on 6 regular coords, 1+sigma +- sigma/3 on the
    // singular pair, 2(1+sigma) on the center
    std::vector<std::pair<Rat, int>> expected = {
        {Rat(17, 25), 1}, {Rat(19, 25), 6}, {Rat(21, 25), 2}, {Rat(38, 25), 2}};
    CHECK(d.eigenvalues == expected);
}

TEST_CASE("trace solver equals the closed form on canonical presentations") {
    CanonicalSpec spec{{{Rat(0), 1}, {Rat(1), 1}, {Rat(2), 1}}, {}, {1}, 0};
    PreEinsteinDerivation closed = case1_pre_einstein(invariants_from_spec(spec));
    PreEinsteinDerivation solved = solve_pre_einstein(from_pencil(synthesize(spec)));
    CHECK(solved.eigenvalues == closed.eigenvalues);
}

TEST_CASE("pre-Einstein trace property holds over the full derivation basis") {
    CanonicalSpec spec{{{Rat(0), 1}, {Rat(-1), 1}}, {{Rat(1), Rat(2), 1}}, {}, 0};
    TwoStepAlgebra n = from_pencil(synthesize(spec));
    PreEinsteinDerivation d = solve_pre_einstein(n);
    for (const auto& psi : derivation_basis(n)) {
        Rat lhs(0), rhs(0);
        RatMatrix prod = d.phi * psi;
        for (int i = 0; i < prod.rows; ++i) lhs += prod.at(i, i);
        for (int i = 0; i < psi.rows; ++i) rhs += psi.at(i, i);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("eigenvalue type rescales to coprime positive integers") {
    RatMatrix J(2, 2);
    J.at(0, 1) = Rat(1);
    J.at(1, 0) = Rat(-1);
    TwoStepAlgebra n = from_tuple({J});
    SolitonFit fit = nilsoliton_residual(n, MetricData::identity(3));
    EigenvalueType t = eigenvalue_type(fit);
    CHECK(t.lambdas == std::vector<long>{1, 2});
    CHECK(t.dims == std::vector<int>{2, 1});
}

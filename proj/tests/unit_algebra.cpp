#include <doctest.h>

#include <random>

#include "nilpencil/algebra.hpp"
#include "nilpencil/canonical.hpp"
#include "nilpencil/pencil.hpp"
#include "test_util.hpp"

using namespace nilpencil;
using namespace nilpencil::testutil;

namespace {

TwoStepAlgebra heisenberg3() {
    RatMatrix J(2, 2);
    J.at(0, 1) = Rat(1);
    J.at(1, 0) = Rat(-1);
    return from_tuple({J});
}

}  // namespace

TEST_CASE("derivation basis members satisfy the derivation identity") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 8; ++t) {
        TwoStepAlgebra n = from_pencil(synthesize(random_spec(rng, 8)));
        auto basis = derivation_basis(n);
        CHECK(!basis.empty());
        for (const auto& D : basis) CHECK(is_derivation(n, D));
        // the U-block generators alone contribute p*q dimensions
        CHECK(static_cast<int>(basis.size()) >= n.p * n.q);
    }
}

TEST_CASE("three-dimensional Heisenberg algebra: exact Ricci and soliton fit") {
    TwoStepAlgebra n = heisenberg3();
    SolitonFit fit = nilsoliton_residual(n, MetricData::identity(3));
    CHECK(fit.residual == 0.0);
    REQUIRE(fit.exact);
    CHECK(fit.C_exact == Rat(-3, 2));
    RatMatrix expected(3, 3);
    expected.at(0, 0) = Rat(1);
    expected.at(1, 1) = Rat(1);
    expected.at(2, 2) = Rat(2);
    CHECK(fit.Phi_exact == expected);
}

TEST_CASE("ricci blocks: scalar scaling moves the Einstein constant only") {
    TwoStepAlgebra n = heisenberg3();
    MetricData g4 = MetricData::diagonal({Rat(4), Rat(4), Rat(4)});
    SolitonFit fit = nilsoliton_residual(n, g4);
    CHECK(fit.residual == 0.0);
    REQUIRE(fit.exact);
    CHECK(fit.C_exact == Rat(-3, 8));  // C scales by 1/4
}

TEST_CASE("dualize: trace-orthogonal complement of the right dimension") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 5; ++t) {
        TwoStepAlgebra n = from_pencil(synthesize(random_spec(rng, 7)));
        TwoStepAlgebra d = dualize(n);
        int D = n.q * (n.q - 1) / 2;
        CHECK(d.q == n.q);
        CHECK(d.p == D - n.p);
        for (const auto& A : d.J)
            for (const auto& B : n.J) {
                Rat tr(0);
                for (int i = 0; i < n.q; ++i)
                    for (int j = 0; j < n.q; ++j) tr += A.at(i, j) * B.at(j, i);
                CHECK(tr == Rat(0));
            }
    }
}

TEST_CASE("orthonormal bracket rescales structure constants consistently") {
    TwoStepAlgebra n = heisenberg3();
    MetricData g = MetricData::diagonal({Rat(4), Rat(9), Rat(25)});
    auto Jt = orthonormal_bracket(n, g);
    REQUIRE(Jt.size() == 1);
    // (J~)_01 = sqrt(25) / (2 * 3)
    CHECK(Jt[0](0, 1) == doctest::Approx(5.0 / 6.0));
}

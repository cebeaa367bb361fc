#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "nilpencil/classifier.hpp"
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

TEST_CASE("three distinct simple roots are an Einstein nilradical") {
    Verdict v = classify(inv_of({{Rat(0), 1}, {Rat(1), 1}, {Rat(2), 1}}, {}));
    CHECK(v.is_einstein);
    CHECK(v.verdict_case == VerdictCase::Generic);
    CHECK(v.failed == FailedCondition::None);
}

TEST_CASE("purely singular pencils are Einstein nilradicals") {
    Verdict v = classify(inv_of({}, {1, 2, 3}));
    CHECK(v.is_einstein);
    CHECK(v.verdict_case == VerdictCase::Subsingular);
    CHECK(v.S1 == Rat(0));
}

TEST_CASE("double root with one singular block: S1 = 2, S2 = 5") {
    Verdict v = classify(inv_of({{Rat(3), 2}}, {1}));
    CHECK(v.verdict_case == VerdictCase::Subsingular);
    CHECK(v.S1 == Rat(2));
    CHECK(v.S2 == Rat(5));
    CHECK(v.is_einstein);  // 2*1 < 2*5/2 = 5 and floor((4+1)/2) = 2 < 5
}

TEST_CASE("over-represented root fails the repetition bound") {
    Verdict v = classify(inv_of(
        {{Rat(0), 1}, {Rat(0), 1}, {Rat(0), 1}, {Rat(1), 1}, {Rat(2), 1}}, {}));
    CHECK(!v.is_einstein);
    CHECK(v.verdict_case == VerdictCase::Generic);
    CHECK(v.failed == FailedCondition::A_ii);
    REQUIRE(v.witness_root.has_value());
    CHECK(*v.witness_root == Rat(0));
}

TEST_CASE("two distinct roots are subsingular even with repeats") {
    Verdict v = classify(inv_of(
        {{Rat(0), 1}, {Rat(0), 1}, {Rat(0), 1}, {Rat(1), 1}}, {}));
    CHECK(v.verdict_case == VerdictCase::Subsingular);
}

TEST_CASE("higher divisor power in the generic case is never Einstein") {
    Verdict v = classify(inv_of({{Rat(0), 2}, {Rat(1), 1}, {Rat(2), 1}}, {}));
    CHECK(!v.is_einstein);
    CHECK(v.failed == FailedCondition::A_i);
}

TEST_CASE("complex divisors with power 1 only: Einstein iff all powers are 1") {
    Verdict v1 = classify(inv_of({}, {}, {{Rat(0), Rat(1), 1}, {Rat(2), Rat(3), 1}}));
    CHECK(v1.is_einstein);
    Verdict v2 = classify(inv_of({}, {}, {{Rat(0), Rat(1), 2}, {Rat(2), Rat(3), 1}}));
    CHECK(!v2.is_einstein);
}

TEST_CASE("group labeling is lexicographic in (max power, count)") {
    // group with the power-3 divisor must be group 1 regardless of root order
    Verdict v = classify(inv_of({{Rat(5), 3}, {Rat(0), 1}, {Rat(0), 1}}, {}));
    CHECK(v.verdict_case == VerdictCase::Subsingular);
    REQUIRE(v.root1.has_value());
    CHECK(*v.root1 == Rat(5));
    CHECK(v.group1 == std::vector<int>{3});
    CHECK(v.group2 == std::vector<int>{1, 1});
}

TEST_CASE("verdict is invariant under root relabeling") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> small(-6, 6), den(1, 4);
    for (int t = 0; t < 20; ++t) {
        CanonicalSpec spec = random_spec(rng, 10);
        PencilInvariants inv = invariants_from_spec(spec);
        Verdict base = classify(inv);
        // substitute distinct root values while keeping coincidences
        std::map<Rat, Rat> image;
        std::set<Rat> used;
        PencilInvariants moved = inv;
        bool ok = true;
        for (auto& d : moved.real_divisors) {
            if (!image.count(d.root)) {
                Rat v;
                int guard = 0;
                do {
                    v = Rat(small(rng), den(rng));
                } while (used.count(v) && ++guard < 100);
                if (used.count(v)) { ok = false; break; }
                image[d.root] = v;
                used.insert(v);
            }
            d.root = image[d.root];
        }
        if (!ok) continue;
        CHECK(classify(moved).is_einstein == base.is_einstein);
        CHECK(classify(moved).failed == base.failed);
    }
}

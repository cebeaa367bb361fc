#include <doctest.h>

#include "nilpencil/classifier.hpp"
#include "nilpencil/errors.hpp"
#include "nilpencil/json_io.hpp"
#include "test_util.hpp"

using namespace nilpencil;
using namespace nilpencil::testutil;

TEST_CASE("rationals and matrices round-trip as strings") {
    Rat r(-22, 7);
    CHECK(rat_from_json(to_json(r)) == r);
    CHECK(rat_from_json(json(5)) == Rat(5));
    RatMatrix m(2, 3);
    m.at(0, 1) = Rat(1, 3);
    m.at(1, 2) = Rat(-7);
    CHECK(matrix_from_json(to_json(m)) == m);
}

TEST_CASE("pencils, specs, and invariants round-trip through JSON text") {
    CanonicalSpec spec{{{Rat(0), 1}, {Rat(1, 2), 2}}, {{Rat(1), Rat(3), 1}}, {1}, 1};
    SkewPencil p = synthesize(spec);
    SkewPencil p2 = pencil_from_json(json::parse(to_json(p).dump()));
    CHECK(p2.J1 == p.J1);
    CHECK(p2.J2 == p.J2);
    CanonicalSpec s2 = spec_from_json(json::parse(to_json(spec).dump()));
    CHECK(to_json(s2) == to_json(spec));
    PencilInvariants inv = compute_invariants(p);
    PencilInvariants inv2 = invariants_from_json(json::parse(to_json(inv).dump()));
    CHECK(to_json(inv2) == to_json(inv));
    CHECK(same_invariants(inv, inv2));
}

TEST_CASE("verdicts serialize the decision trail") {
    json v = to_json(classify(invariants_from_spec(
        CanonicalSpec{{{Rat(3), 2}}, {}, {1}, 0})));
    CHECK(v["case"] == "Subsingular");
    CHECK(v["S1"] == "2");
    CHECK(v["S2"] == "5");
    CHECK(v["is_einstein"] == true);
}

TEST_CASE("malformed content is rejected, not misread") {
    CHECK_THROWS_AS(rat_from_json(json::parse("1.5")), SpecInvalidError);
    CHECK_THROWS_AS(rat_from_json(json("1/0")), SpecInvalidError);
    CHECK_THROWS_AS(matrix_from_json(json::parse("[[\"1\"],[\"1\",\"2\"]]")),
                    SpecInvalidError);
    CHECK_THROWS_AS(pencil_from_json(json::parse("{\"J1\": [[\"0\"]]}")),
                    SpecInvalidError);
    CHECK_THROWS_AS(metric_from_json(json::parse("{\"diag\": [\"-1\"]}")),
                    SpecInvalidError);
}

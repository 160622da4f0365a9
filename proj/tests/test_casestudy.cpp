#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "polyaut/casestudy.hpp"
#include "polyaut/parse.hpp"

using namespace polyaut;

TEST_CASE("pipeline pieces at a small degree bound") {
    PoloniMoserReport rep = run_poloni_moser(2);
    CHECK(rep.ideal_equality);
    CHECK(rep.unique_fixpoint_ok);
    CHECK(rep.unipotent);
    CHECK(rep.nonidentity_differential);
    CHECK(rep.invariants_match_expected);
    CHECK(rep.conclusion == "success");
    CHECK(rep.jacobian.at(1, 0) ==
          parse_scalar("-x^3/2", FieldSpec::rational_functions("x")));
    CHECK(rep.phi_jacobian_det.is_constant());
    // invariants up to degree 2 are exactly 1, x, x^2
    CHECK(rep.invariant_bases.at(2).size() == 3);
}

TEST_CASE("fixpoint ideal matches the cleared-denominator generators") {
    PolyMap psi = poloni_moser_psi();
    const PolyRing& rx = psi.ring();
    Ideal fix = fixpoint_ideal(psi);
    MultiPoly q = parse_poly("x^2*y - z^2 - x*z^3", rx);
    MultiPoly xq = q.scale(Scalar::param(rx.field()));
    MultiPoly second = parse_poly("4*z^4 - 4*x*y*z", rx) + q * q;
    CHECK(ideal_equal(fix, Ideal(rx, {xq, second})));
    // the elimination chain of the source: y and z both lie in the radical
    CHECK(radical_member(parse_poly("y", rx), fix));
    CHECK(radical_member(parse_poly("z", rx), fix));
}

TEST_CASE("report is deterministic") {
    PoloniMoserReport a = run_poloni_moser(2);
    PoloniMoserReport b = run_poloni_moser(2);
    CHECK(a.conclusion == b.conclusion);
    REQUIRE(a.invariant_bases.size() == b.invariant_bases.size());
    for (const auto& [d, basis] : a.invariant_bases) {
        const auto& other = b.invariant_bases.at(d);
        REQUIRE(basis.size() == other.size());
        for (std::size_t i = 0; i < basis.size(); ++i)
            CHECK(basis[i].to_string() == other[i].to_string());
    }
}

TEST_CASE("the three-variable map fixes x") {
    PolyMap phi = poloni_moser_phi();
    CHECK(phi.coords()[0] == parse_poly("x", phi.ring()));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "polyaut/torus.hpp"
#include "test_util.hpp"

using namespace polyaut;

namespace {

PolyRing plane() { return PolyRing(FieldSpec::rationals(), {"x", "y"}); }

PolyMap map_of(const PolyRing& r, const std::vector<std::string>& coords) {
    std::vector<MultiPoly> cs;
    for (const auto& s : coords) cs.push_back(parse_poly(s, r));
    return PolyMap(r, std::move(cs));
}

} // namespace

TEST_CASE("weight split of x^2 + xy + y under (2x, y/2)") {
    PolyRing r = plane();
    PolyMap f = map_of(r, {"2*x", "y/2"});
    Scalar two = Scalar::from_long(r.field(), 2);
    WeightDecomposition wd = weight_split(f, two, parse_poly("x^2+x*y+y", r), -1, 2);
    REQUIRE(wd.weights == std::vector<long>{-1, 0, 2});
    CHECK(wd.components[0] == parse_poly("y", r));
    CHECK(wd.components[1] == parse_poly("x*y", r));
    CHECK(wd.components[2] == parse_poly("x^2", r));

    // single-node case: invariant element
    WeightDecomposition inv = weight_split(f, two, parse_poly("x*y", r), 0, 0);
    CHECK(inv.weights == std::vector<long>{0});

    // x has weight 1, outside [0, 0]
    CHECK_THROWS_AS(weight_split(f, two, parse_poly("x", r), 0, 0), AlgebraError);
    // roots of unity collide the Vandermonde nodes
    CHECK_THROWS_AS(weight_split(f, Scalar::from_long(r.field(), -1),
                                 parse_poly("x", r), 0, 1),
                    AlgebraError);
}

TEST_CASE("weight components re-sum and satisfy the eigenproperty") {
    std::mt19937 rng(606);
    PolyRing r = plane();
    PolyMap f = map_of(r, {"2*x", "y/2"});
    Scalar two = Scalar::from_long(r.field(), 2);
    for (int i = 0; i < 15; ++i) {
        MultiPoly p = testutil::random_poly(rng, r, 3, 5);
        long d = std::max<long>(1, p.total_degree());
        WeightDecomposition wd = weight_split(f, two, p, -d, d);
        MultiPoly sum = MultiPoly::zero(r);
        for (std::size_t k = 0; k < wd.weights.size(); ++k) {
            sum = sum + wd.components[k];
            CHECK(f.pullback(wd.components[k]) ==
                  wd.components[k].scale(two.pow(wd.weights[k])));
        }
        CHECK(sum == p);
    }
}

TEST_CASE("G_m flow reconstruction") {
    PolyRing r = plane();
    Scalar two = Scalar::from_long(r.field(), 2);

    ParametricMap psi = build_gm_flow(map_of(r, {"2*x", "y/2"}), two);
    CHECK(psi.denom_power() == 1);
    // cleared coordinates: v * (v x) and v * (y / v)
    CHECK(psi.coords()[0] == parse_poly("v^2*x", psi.ext_ring()));
    CHECK(psi.coords()[1] == parse_poly("y", psi.ext_ring()));
    CHECK(psi.specialize(two) == map_of(r, {"2*x", "y/2"}));
    CHECK(psi.specialize(Scalar::one(r.field())).is_identity());
    CHECK(multiplicative_flow_law_holds(psi));

    ParametricMap psi2 = build_gm_flow(map_of(r, {"4*x", "2*y"}), two);
    CHECK(psi2.denom_power() == 0);
    CHECK(psi2.coords()[0] == parse_poly("v^2*x", psi2.ext_ring()));
    CHECK(psi2.coords()[1] == parse_poly("v*y", psi2.ext_ring()));
    CHECK(psi2.specialize(two) == map_of(r, {"4*x", "2*y"}));
    CHECK(multiplicative_flow_law_holds(psi2));

    CHECK_THROWS_AS(build_gm_flow(map_of(r, {"x", "y+x^2"}), two), AlgebraError);
}

TEST_CASE("formal commutation with flows") {
    PolyRing r = plane();
    Scalar two = Scalar::from_long(r.field(), 2);
    ParametricMap psi = build_gm_flow(map_of(r, {"2*x", "y/2"}), two);
    CHECK(commutes_with_flow(map_of(r, {"2*x", "y/2"}), psi));
    CHECK(commutes_with_flow(map_of(r, {"-x", "-y"}), psi));
    CHECK(!commutes_with_flow(map_of(r, {"y", "x"}), psi));

    Derivation d(r, {parse_poly("0", r), parse_poly("x^2", r)});
    ParametricMap add = exp_flow(d);
    CHECK(commutes_with_flow(map_of(r, {"x", "y+x^2"}), add));
    CHECK(!commutes_with_flow(map_of(r, {"y", "x"}), add));
}

TEST_CASE("finite part decomposition of (-x, y + x^2)") {
    PolyRing r = plane();
    Derivation d(r, {parse_poly("0", r), parse_poly("x^2", r)});
    ParametricMap psi = exp_flow(d);
    PolyMap f = map_of(r, {"-x", "y+x^2"});

    GroupElementSpec h{GroupElementSpec::Kind::Additive, Scalar::from_long(r.field(), 2)};
    FinitePartResult res = finite_part_decompose(f, psi, 2, h);
    CHECK(res.delta == map_of(r, {"-x", "y"}));
    CHECK(res.b == Scalar::one(r.field()));
    CHECK(res.delta_order == 2);
    // F = Delta o psi_b
    CHECK(compose(res.delta, psi.specialize(res.b)) == f);
    CHECK(commutes_with_flow(res.delta, psi));

    // trivial case: F is the time-1 flow itself
    PolyMap t1 = psi.specialize(Scalar::one(r.field()));
    GroupElementSpec h1{GroupElementSpec::Kind::Additive, Scalar::one(r.field())};
    FinitePartResult triv = finite_part_decompose(t1, psi, 1, h1);
    CHECK(triv.delta.is_identity());
    CHECK(triv.b == Scalar::one(r.field()));

    // F^2 = psi_2, not psi_3
    GroupElementSpec h3{GroupElementSpec::Kind::Additive, Scalar::from_long(r.field(), 3)};
    CHECK_THROWS_AS(finite_part_decompose(f, psi, 2, h3), AlgebraError);
}

TEST_CASE("multiplicative decomposition with root extraction") {
    PolyRing r = plane();
    Scalar two = Scalar::from_long(r.field(), 2);
    // F = (-2x, -y/2): F^2 = (4x, y/4) = psi_4 for psi_v = (vx, y/v)
    PolyMap f = map_of(r, {"-2*x", "-y/2"});
    ParametricMap psi = build_gm_flow(map_of(r, {"2*x", "y/2"}), two);
    GroupElementSpec h{GroupElementSpec::Kind::Multiplicative, Scalar::from_long(r.field(), 4)};
    FinitePartResult res = finite_part_decompose(f, psi, 2, h);
    CHECK(res.b == two);
    CHECK(res.delta == map_of(r, {"-x", "-y"}));
    CHECK(res.delta_order == 2);
    CHECK(compose(res.delta, psi.specialize(res.b)) == f);

    // wrong h: F^2 = psi_4, not psi_8
    GroupElementSpec h8{GroupElementSpec::Kind::Multiplicative, Scalar::from_long(r.field(), 8)};
    CHECK_THROWS_AS(finite_part_decompose(f, psi, 2, h8), AlgebraError);
}

TEST_CASE("missing roots are reported, the field is never extended") {
    // over Q(zeta_4): F = psi_(1+zeta) satisfies F^2 = psi_(2 zeta), but
    // 1+zeta is not rational-times-torsion, so the bounded root search
    // reports NoRootInField rather than inventing an extension
    PolyRing rc(FieldSpec::cyclotomic(4), {"x", "y"});
    Scalar z = Scalar::zeta(rc.field());
    Scalar one_plus_z = Scalar::one(rc.field()) + z;
    PolyMap base(rc, {parse_poly("2*x", rc), parse_poly("y/2", rc)});
    ParametricMap psi = build_gm_flow(base, Scalar::from_long(rc.field(), 2));
    PolyMap f = psi.specialize(one_plus_z);
    Scalar h_val = one_plus_z * one_plus_z; // 2 zeta
    GroupElementSpec h{GroupElementSpec::Kind::Multiplicative, h_val};
    try {
        finite_part_decompose(f, psi, 2, h);
        FAIL("expected NoRootInField");
    } catch (const AlgebraError& e) {
        CHECK(e.code() == Err::NoRootInField);
    }
}

TEST_CASE("finite-order maps admit no nontrivial grading") {
    // consistency with the group dichotomy: (-x, -y) has finite order, so a
    // weight split against a non-torsion scalar must refuse nonzero weights
    PolyRing r = plane();
    PolyMap f = map_of(r, {"-x", "-y"});
    Scalar two = Scalar::from_long(r.field(), 2);
    CHECK_THROWS_AS(weight_split(f, two, parse_poly("x", r), -2, 2), AlgebraError);
    CHECK_THROWS_AS(build_gm_flow(f, two), AlgebraError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "polyaut/casestudy.hpp"
#include "polyaut/classify.hpp"
#include "test_util.hpp"

using namespace polyaut;

namespace {

PolyRing plane() { return PolyRing(FieldSpec::rationals(), {"x", "y"}); }

PolyMap map_of(const PolyRing& r, const std::vector<std::string>& coords) {
    std::vector<MultiPoly> cs;
    for (const auto& s : coords) cs.push_back(parse_poly(s, r));
    return PolyMap(r, std::move(cs));
}

std::vector<std::string> basis_strings(const std::vector<MultiPoly>& b) {
    std::vector<std::string> out;
    for (const auto& f : b) out.push_back(f.to_string());
    return out;
}

} // namespace

TEST_CASE("invariant basis by degree-bounded linear solve") {
    PolyRing r = plane();
    CHECK(basis_strings(invariant_basis(map_of(r, {"2*x", "y/2"}), 2)) ==
          std::vector<std::string>{"1", "x*y"});
    CHECK(basis_strings(invariant_basis(map_of(r, {"x", "y+x^2"}), 2)) ==
          std::vector<std::string>{"1", "x", "x^2"});
    CHECK(basis_strings(invariant_basis(map_of(r, {"2*x", "y+1"}), 2)) ==
          std::vector<std::string>{"1"});
}

TEST_CASE("invariant basis is monotone in the degree bound") {
    PolyRing r = plane();
    for (const auto& coords :
         {std::vector<std::string>{"2*x", "y/2"}, std::vector<std::string>{"x", "y+x^2"}}) {
        PolyMap f = map_of(r, coords);
        auto b3 = basis_strings(invariant_basis(f, 3));
        auto b4 = basis_strings(invariant_basis(f, 4));
        for (const auto& s : b3)
            CHECK(std::find(b4.begin(), b4.end(), s) != b4.end());
    }
}

TEST_CASE("every reported invariant is exactly invariant") {
    std::mt19937 rng(2718);
    PolyRing r = plane();
    for (int i = 0; i < 5; ++i) {
        PolyMap h = testutil::random_word_map(rng, r, 2);
        PolyMap f = compose(h, compose(map_of(r, {"2*x", "y/2"}), invert(h)));
        for (const auto& w : invariant_basis(f, 4)) CHECK(f.pullback(w) == w);
    }
}

TEST_CASE("diagonal invariant monomial lattice") {
    FieldSpec q = FieldSpec::rationals();
    Scalar two = Scalar::from_long(q, 2);
    Scalar one = Scalar::one(q);
    Scalar minus_one = Scalar::from_long(q, -1);

    auto l1 = diag_invariant_monomials(1, -1, two, one, 3);
    // p = q lattice both signs
    CHECK(l1 == std::vector<std::pair<long, long>>{{-3, -3}, {-2, -2}, {-1, -1},
                                                   {1, 1}, {2, 2}, {3, 3}});
    auto l2 = diag_invariant_monomials(2, -1, two, one, 2);
    CHECK(l2 == std::vector<std::pair<long, long>>{{-1, -2}, {1, 2}});
    auto l3 = diag_invariant_monomials(1, 0, two, minus_one, 2);
    CHECK(l3 == std::vector<std::pair<long, long>>{{0, -2}, {0, 2}});

    CHECK_THROWS_AS(diag_invariant_monomials(0, 0, two, one, 2), AlgebraError);
    CHECK_THROWS_AS(diag_invariant_monomials(1, 0, minus_one, one, 2), AlgebraError);
    CHECK_THROWS_AS(diag_invariant_monomials(1, 0, two, two, 2), AlgebraError);
}

TEST_CASE("normal form recognition") {
    PolyRing r = plane();
    FieldSpec q = r.field();

    auto f1 = recognize_normal_form(map_of(r, {"2*x", "y/2"}));
    REQUIRE(f1);
    const auto& p1 = std::get<NormalFormPhi1>(*f1);
    CHECK(p1.n == 1);
    CHECK(p1.m == -1);
    CHECK(p1.a == Scalar::from_long(q, 2));
    CHECK(p1.b == Scalar::one(q));

    auto f2 = recognize_normal_form(map_of(r, {"x", "y+x^2"}));
    REQUIRE(f2);
    const auto& p2 = std::get<NormalFormPhi2>(*f2);
    CHECK(p2.a.is_one());
    CHECK(p2.b.is_one());
    CHECK(p2.p == parse_poly("x^2", r));

    CHECK(!recognize_normal_form(map_of(r, {"x+y^2", "y"})));
    // (4x, 2y) needs the root-extraction branch: a = 2, (n, m) = (2, 1)
    auto f3 = recognize_normal_form(map_of(r, {"4*x", "2*y"}));
    REQUIRE(f3);
    const auto& p3 = std::get<NormalFormPhi1>(*f3);
    CHECK(p3.n == 2);
    CHECK(p3.m == 1);
    CHECK(p3.a == Scalar::from_long(q, 2));
}

TEST_CASE("rational fixpoint extraction") {
    PolyRing r = plane();
    auto p = find_rational_fixpoint(map_of(r, {"-x", "-y"}));
    REQUIRE(p);
    CHECK((*p)[0].is_zero());
    CHECK((*p)[1].is_zero());

    auto shifted = find_rational_fixpoint(map_of(r, {"-x+2", "-y+4"}));
    REQUIRE(shifted);
    CHECK((*shifted)[0] == Scalar::one(r.field()));
    CHECK((*shifted)[1] == Scalar::from_long(r.field(), 2));

    CHECK(!find_rational_fixpoint(PolyMap::identity(r)));
    CHECK(!find_rational_fixpoint(map_of(r, {"-x", "y+x^2"}))); // a fixed line
}

TEST_CASE("classifier verdicts on the reference table") {
    PolyRing r = plane();

    ClassificationReport diag = classify_plane(map_of(r, {"2*x", "y/2"}));
    CHECK(diag.verdict == ClassificationReport::Verdict::NEquals);
    CHECK(diag.n == 1);
    REQUIRE(diag.matched_form);
    CHECK(std::holds_alternative<NormalFormPhi1>(*diag.matched_form));
    REQUIRE(!diag.witnesses.empty());
    CHECK(diag.witnesses[0].num == parse_poly("x*y", r));
    CHECK(witness_invariant(diag.witnesses[0], map_of(r, {"2*x", "y/2"})));

    ClassificationReport tri = classify_plane(map_of(r, {"x", "y+x^2"}));
    CHECK(tri.n == 1);
    REQUIRE(tri.matched_form);
    CHECK(std::holds_alternative<NormalFormPhi2>(*tri.matched_form));
    REQUIRE(!tri.witnesses.empty());
    CHECK(tri.witnesses[0].num == parse_poly("x", r));

    ClassificationReport fin = classify_plane(map_of(r, {"-x", "-y"}));
    CHECK(fin.n == 2);
    CHECK(fin.evidence.order_found == 2);

    ClassificationReport psi = classify_plane(poloni_moser_psi());
    CHECK(psi.verdict == ClassificationReport::Verdict::NEquals);
    CHECK(psi.n == 0);
    CHECK(psi.evidence.fixpoint_unique);
    CHECK(psi.evidence.differential_unipotent);
}

TEST_CASE("rational invariants witness the diagonal forms without polynomial invariants") {
    PolyRing r = plane();
    // (2x, 2y): invariant rational monomial x/y, no polynomial invariant
    ClassificationReport rep = classify_plane(map_of(r, {"2*x", "2*y"}));
    CHECK(rep.n == 1);
    REQUIRE(!rep.witnesses.empty());
    CHECK(witness_invariant(rep.witnesses[0], map_of(r, {"2*x", "2*y"})));
    CHECK(!rep.witnesses[0].den.is_constant()); // genuinely rational
}

TEST_CASE("classifier never fires the fixpoint route on the identity") {
    PolyRing r = plane();
    ClassificationReport rep = classify_plane(PolyMap::identity(r));
    // the identity has order 1: route 1 fires with n = 2
    CHECK(rep.n == 2);
    CHECK(rep.evidence.order_found == 1);
}

TEST_CASE("classify verdict is conjugation invariant with transported witnesses") {
    std::mt19937 rng(161803);
    PolyRing r = plane();
    std::vector<PolyMap> examples = {map_of(r, {"2*x", "y/2"}), map_of(r, {"x", "y+x^2"}),
                                     map_of(r, {"-x", "-y"})};
    for (int i = 0; i < 4; ++i) {
        PolyMap h = testutil::random_word_map(rng, r, 2);
        PolyMap hinv = invert(h);
        for (const auto& f : examples) {
            ClassificationReport base = classify_plane(f);
            PolyMap conj = compose(h, compose(f, hinv));
            ClassificationReport moved = classify_plane(conj);
            CHECK(base.n == moved.n);
            // transported witness stays invariant
            for (const auto& w : base.witnesses) {
                RationalWitness t{hinv.pullback(w.num), hinv.pullback(w.den)};
                CHECK(witness_invariant(t, conj));
            }
        }
    }
}

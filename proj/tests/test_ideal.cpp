#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "polyaut/budget.hpp"
#include "polyaut/ideal.hpp"
#include "test_util.hpp"

using namespace polyaut;

namespace {

PolyRing plane() { return PolyRing(FieldSpec::rationals(), {"x", "y"}); }

Ideal ideal_of(const PolyRing& r, const std::vector<std::string>& gens) {
    std::vector<MultiPoly> gs;
    for (const auto& s : gens) gs.push_back(parse_poly(s, r));
    return Ideal(r, std::move(gs));
}

PolyMap map_of(const PolyRing& r, const std::vector<std::string>& coords) {
    std::vector<MultiPoly> cs;
    for (const auto& s : coords) cs.push_back(parse_poly(s, r));
    return PolyMap(r, std::move(cs));
}

std::vector<std::string> basis_strings(const GroebnerBasis& gb) {
    std::vector<std::string> out;
    for (const auto& g : gb.basis()) out.push_back(g.to_string());
    return out;
}

// Buchberger criterion as an oracle: all S-polynomials and all original
// generators must reduce to zero modulo the basis.
void check_gb_oracle(const Ideal& I, const GroebnerBasis& gb) {
    for (const auto& g : I.gens) CHECK(reduce(g, gb).is_zero());
    const auto& b = gb.basis();
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i + 1; j < b.size(); ++j) {
            const auto& [mi, ci] = b[i].leading_term();
            const auto& [mj, cj] = b[j].leading_term();
            Mono l = mono_lcm(mi, mj);
            MultiPoly s = b[i].mul_term(mono_div(l, mi), ci.inv()) -
                          b[j].mul_term(mono_div(l, mj), cj.inv());
            CHECK(reduce(s, gb).is_zero());
        }
}

} // namespace

TEST_CASE("buchberger on the textbook pairs") {
    PolyRing r = plane();
    GroebnerBasis g1 = buchberger(ideal_of(r, {"x-y", "y-x"}), MonOrder::Lex);
    CHECK(basis_strings(g1) == std::vector<std::string>{"x-y"});

    GroebnerBasis g2 = buchberger(ideal_of(r, {"x*y-1", "y^2-1"}), MonOrder::Lex);
    CHECK(basis_strings(g2) == std::vector<std::string>{"x-y", "y^2-1"});

    GroebnerBasis g3 = buchberger(ideal_of(r, {"x"}), MonOrder::Lex);
    CHECK(basis_strings(g3) == std::vector<std::string>{"x"});
}

TEST_CASE("reduce computes normal forms") {
    PolyRing r = plane();
    GroebnerBasis gb = buchberger(ideal_of(r, {"x*y-1", "y^2-1"}), MonOrder::Lex);
    CHECK(reduce(parse_poly("y^3-y", r), gb).is_zero());
    CHECK(reduce(MultiPoly::one(r), gb) == MultiPoly::one(gb.ring()));
    MultiPoly g = parse_poly("x^2*y - x + y", r);
    GroebnerBasis gg = buchberger(Ideal(r, {g}), MonOrder::Lex);
    CHECK(reduce(g, gg).is_zero());
}

TEST_CASE("reduce is idempotent") {
    std::mt19937 rng(17);
    PolyRing r3(FieldSpec::rationals(), {"x", "y", "z"});
    for (int i = 0; i < 10; ++i) {
        std::vector<MultiPoly> gens;
        for (int k = 0; k < 2; ++k) gens.push_back(testutil::random_poly(rng, r3, 3, 3));
        Ideal I(r3, std::move(gens));
        if (I.gens.empty()) continue;
        GroebnerBasis gb = buchberger(I, MonOrder::Lex);
        MultiPoly f = testutil::random_poly(rng, r3, 4, 5);
        MultiPoly r1 = reduce(f, gb);
        CHECK(reduce(r1, gb) == r1);
    }
}

TEST_CASE("gb oracle on random ideals, deterministic across runs") {
    std::mt19937 rng(90210);
    PolyRing r3(FieldSpec::rationals(), {"x", "y", "z"});
    for (int i = 0; i < 8; ++i) {
        std::vector<MultiPoly> gens;
        std::uniform_int_distribution<int> ngens(1, 3);
        int k = ngens(rng);
        for (int t = 0; t < k; ++t) gens.push_back(testutil::random_poly(rng, r3, 3, 3));
        Ideal I(r3, gens);
        if (I.gens.empty()) continue;
        GroebnerBasis gb = buchberger(I, MonOrder::Lex);
        check_gb_oracle(I, gb);
        GroebnerBasis gb2 = buchberger(I, MonOrder::Lex);
        CHECK(basis_strings(gb) == basis_strings(gb2));
        // degrevlex runs too
        check_gb_oracle(I, buchberger(I, MonOrder::DegRevLex));
    }
}

TEST_CASE("fixpoint ideals") {
    PolyRing r = plane();
    Ideal swap = fixpoint_ideal(map_of(r, {"y", "x"}));
    CHECK(swap.gens.size() == 2);
    CHECK(swap.gens[0] == parse_poly("y-x", r));
    CHECK(swap.gens[1] == parse_poly("x-y", r));

    Ideal line = fixpoint_ideal(map_of(r, {"-x", "y+x^2"}));
    CHECK(ideal_equal(line, ideal_of(r, {"x"})));

    Ideal idfix = fixpoint_ideal(PolyMap::identity(r));
    CHECK(idfix.gens.empty());
}

TEST_CASE("radical membership via Rabinowitsch") {
    PolyRing r = plane();
    PolyRing r3(FieldSpec::rationals(), {"x", "y", "z"});
    CHECK(radical_member(parse_poly("z", r3), ideal_of(r3, {"z^2"})));
    CHECK(!radical_member(parse_poly("y", r), ideal_of(r, {"x*y"})));
    CHECK(radical_member(parse_poly("x*y", r), ideal_of(r, {"x^2*y^3"})));
    CHECK(radical_member(MultiPoly::zero(r), ideal_of(r, {"x"})));
    // monotone in the ideal: adding generators never flips true -> false
    std::mt19937 rng(3);
    for (int i = 0; i < 8; ++i) {
        MultiPoly f = testutil::random_poly(rng, r, 2, 3);
        Ideal small = ideal_of(r, {"x*y - 1"});
        Ideal big = ideal_of(r, {"x*y - 1", "x^2"});
        if (radical_member(f, small)) CHECK(radical_member(f, big));
    }
}

TEST_CASE("unique fixpoint certification") {
    PolyRing r = plane();
    std::vector<Scalar> origin = {Scalar::zero(r.field()), Scalar::zero(r.field())};
    // whole line x = 0 fixed
    CHECK(!unique_fixpoint(map_of(r, {"-x", "y+x^2"}), origin));
    // identity: everything fixed
    CHECK(!unique_fixpoint(PolyMap::identity(r), origin));
    // (-x, -y) fixes only the origin
    CHECK(unique_fixpoint(map_of(r, {"-x", "-y"}), origin));
    // wrong point
    std::vector<Scalar> q = {Scalar::one(r.field()), Scalar::zero(r.field())};
    CHECK(!unique_fixpoint(map_of(r, {"-x", "-y"}), q));
}

TEST_CASE("unique fixpoint is conjugation invariant") {
    std::mt19937 rng(525);
    PolyRing r = plane();
    PolyMap f = map_of(r, {"-x", "-y"});
    std::vector<Scalar> origin = {Scalar::zero(r.field()), Scalar::zero(r.field())};
    for (int i = 0; i < 5; ++i) {
        PolyMap h = testutil::random_word_map(rng, r, 3);
        PolyMap conj = compose(h, compose(f, invert(h)));
        CHECK(unique_fixpoint(conj, h.apply_point(origin)));
    }
}

TEST_CASE("pair budget aborts runaway runs") {
    PolyRing r3(FieldSpec::rationals(), {"x", "y", "z"});
    Budget tiny = current_budget();
    tiny.max_pairs = 1;
    BudgetScope scope(tiny);
    Ideal I = ideal_of(r3, {"x^2*y - z^2", "y^2*z - x", "z^3 - x*y"});
    CHECK_THROWS_AS(buchberger(I, MonOrder::Lex), AlgebraError);
}

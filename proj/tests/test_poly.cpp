#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "polyaut/budget.hpp"
#include "test_util.hpp"

using namespace polyaut;

namespace {

// independent quadratic-time multiplication oracle
MultiPoly naive_mul(const MultiPoly& a, const MultiPoly& b) {
    std::map<Mono, Scalar> acc;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            Mono m = mono_mul(ma, mb);
            auto it = acc.find(m);
            if (it == acc.end())
                acc.emplace(std::move(m), ca * cb);
            else
                it->second = it->second + ca * cb;
        }
    std::vector<MultiPoly::Term> terms(acc.begin(), acc.end());
    return MultiPoly::from_terms(a.ring(), std::move(terms));
}

// independent substitution oracle: expand monomials by repeated products
MultiPoly naive_subst(const MultiPoly& f, const std::vector<MultiPoly>& images) {
    MultiPoly acc = MultiPoly::zero(images[0].ring());
    for (const auto& [m, c] : f.terms()) {
        MultiPoly t = MultiPoly::constant(images[0].ring(),
                                          c.field() == images[0].ring().field()
                                              ? c
                                              : Scalar::zero(images[0].ring().field()));
        for (std::size_t v = 0; v < m.size(); ++v)
            for (Exp e = 0; e < m[v]; ++e) t = naive_mul(t, images[v]);
        acc = acc + t;
    }
    return acc;
}

} // namespace

TEST_CASE("arithmetic examples") {
    PolyRing r(FieldSpec::rationals(), {"x", "y"});
    CHECK(parse_poly("(x+y)*(x-y)", r) == parse_poly("x^2-y^2", r));
    MultiPoly f = parse_poly("3*x^2*y - y + 1/2", r);
    CHECK(MultiPoly::zero(r) + f == f);
    CHECK(f - f == MultiPoly::zero(r));

    // oracle-expanded square of Q over Q[x,y,z]
    PolyRing r3(FieldSpec::rationals(), {"x", "y", "z"});
    MultiPoly q = parse_poly("x^2*y - z^2 - x*z^3", r3);
    MultiPoly expected =
        parse_poly("x^4*y^2 - 2*x^2*y*z^2 - 2*x^3*y*z^3 + z^4 + 2*x*z^5 + x^2*z^6", r3);
    CHECK(naive_mul(q, q) == expected);
    CHECK(q * q == expected);
}

TEST_CASE("product total degree adds (integral domain)") {
    std::mt19937 rng(42);
    PolyRing r(FieldSpec::rationals(), {"x", "y"});
    for (int i = 0; i < 30; ++i) {
        MultiPoly a = testutil::random_poly(rng, r, 4, 5);
        MultiPoly b = testutil::random_poly(rng, r, 4, 5);
        if (a.is_zero() || b.is_zero()) continue;
        CHECK((a * b).total_degree() == a.total_degree() + b.total_degree());
        CHECK(a * b == naive_mul(a, b));
    }
}

TEST_CASE("ring mismatch rejected") {
    PolyRing r1(FieldSpec::rationals(), {"x", "y"});
    PolyRing r2(FieldSpec::rationals(), {"x", "z"});
    CHECK_THROWS_AS(parse_poly("x", r1) + parse_poly("x", r2), AlgebraError);
}

TEST_CASE("substitution examples") {
    PolyRing r(FieldSpec::rationals(), {"x", "y"});
    MultiPoly f = parse_poly("x*y", r);
    // invariance witness for (2x, y/2)
    CHECK(substitute(f, {parse_poly("2*x", r), parse_poly("y/2", r)}) == f);
    CHECK(substitute(parse_poly("y", r), {parse_poly("x", r), parse_poly("y+x^2", r)}) ==
          parse_poly("y+x^2", r));
    CHECK_THROWS_AS(substitute(f, {parse_poly("x", r)}), AlgebraError);

    PolyRing r3(FieldSpec::rationals(), {"x", "y", "z"});
    MultiPoly q = parse_poly("x^2*y - z^2 - x*z^3", r3);
    std::vector<MultiPoly> phi = {
        parse_poly("x", r3),
        parse_poly("y", r3) * parse_poly("1-x*z", r3) + (q * q).scale(Scalar::from_rat(r3.field(), make_rat(1, 4))) +
            parse_poly("z^4", r3),
        parse_poly("z", r3) - (q * parse_poly("x", r3)).scale(Scalar::from_rat(r3.field(), make_rat(1, 2)))};
    // frozen from the independent oracle below
    CHECK(substitute(q, phi) == naive_subst(q, phi));
}

TEST_CASE("substitution with identity images is the identity") {
    std::mt19937 rng(11);
    PolyRing r(FieldSpec::rationals(), {"x", "y", "z"});
    std::vector<MultiPoly> id = {parse_poly("x", r), parse_poly("y", r), parse_poly("z", r)};
    for (int i = 0; i < 20; ++i) {
        MultiPoly f = testutil::random_poly(rng, r, 5, 6);
        CHECK(substitute(f, id) == f);
    }
}

TEST_CASE("substitution matches the naive oracle on random data") {
    std::mt19937 rng(123);
    PolyRing r(FieldSpec::rationals(), {"x", "y"});
    for (int i = 0; i < 25; ++i) {
        MultiPoly f = testutil::random_poly(rng, r, 4, 4);
        std::vector<MultiPoly> images = {testutil::random_poly(rng, r, 2, 3),
                                         testutil::random_poly(rng, r, 2, 3)};
        CHECK(substitute(f, images) == naive_subst(f, images));
    }
    // same over a cyclotomic field (hash accumulation path)
    PolyRing rc(FieldSpec::cyclotomic(4), {"x", "y"});
    for (int i = 0; i < 10; ++i) {
        MultiPoly f = testutil::random_poly(rng, rc, 3, 4);
        std::vector<MultiPoly> images = {testutil::random_poly(rng, rc, 2, 3),
                                         testutil::random_poly(rng, rc, 2, 3)};
        CHECK(substitute(f, images) == naive_subst(f, images));
    }
}

TEST_CASE("evaluate is compatible with substitution") {
    std::mt19937 rng(5);
    PolyRing r(FieldSpec::rationals(), {"x", "y"});
    for (int i = 0; i < 20; ++i) {
        MultiPoly f = testutil::random_poly(rng, r, 4, 5);
        std::vector<MultiPoly> images = {testutil::random_poly(rng, r, 2, 3),
                                         testutil::random_poly(rng, r, 2, 3)};
        std::vector<Scalar> p = {testutil::random_scalar(rng, r.field()),
                                 testutil::random_scalar(rng, r.field())};
        Scalar lhs = evaluate(substitute(f, images), p);
        Scalar rhs = evaluate(f, {evaluate(images[0], p), evaluate(images[1], p)});
        CHECK(lhs == rhs);
    }
}

TEST_CASE("derivative examples and Leibniz rule") {
    PolyRing r3(FieldSpec::rationals(), {"x", "y", "z"});
    MultiPoly q = parse_poly("x^2*y - z^2 - x*z^3", r3);
    CHECK(partial_derivative(q, 1) == parse_poly("x^2", r3));
    // dQ/dz = -2z - 3xz^2 vanishes at (y, z) = (0, 0) for any x
    MultiPoly dz = partial_derivative(q, 2);
    CHECK(dz == parse_poly("-2*z - 3*x*z^2", r3));
    CHECK(evaluate(dz, {Scalar::from_long(r3.field(), 7), Scalar::zero(r3.field()),
                        Scalar::zero(r3.field())})
              .is_zero());

    std::mt19937 rng(77);
    for (int i = 0; i < 25; ++i) {
        MultiPoly f = testutil::random_poly(rng, r3, 3, 4);
        MultiPoly g = testutil::random_poly(rng, r3, 3, 4);
        for (std::size_t v = 0; v < 3; ++v)
            CHECK(partial_derivative(f * g, v) ==
                  f * partial_derivative(g, v) + g * partial_derivative(f, v));
    }
}

TEST_CASE("total degree example") {
    PolyRing r(FieldSpec::rationals(), {"x", "y"});
    CHECK(parse_poly("x+(y+x^2)^2", r).total_degree() == 4);
    CHECK(MultiPoly::zero(r).total_degree() == -1);
}

TEST_CASE("printing round-trips and is stable") {
    std::mt19937 rng(99);
    PolyRing r(FieldSpec::rationals(), {"x", "y"}, MonOrder::DegRevLex);
    PolyRing rx(FieldSpec::rational_functions("x"), {"y", "z"});
    PolyRing rc(FieldSpec::cyclotomic(4), {"u", "v"});
    for (int i = 0; i < 25; ++i) {
        for (const PolyRing& ring : {r, rx, rc}) {
            MultiPoly f = testutil::random_poly(rng, ring, 4, 5);
            MultiPoly g = parse_poly(f.to_string(), ring);
            CHECK(f == g);
            CHECK(f.to_string() == g.to_string());
        }
    }
}

TEST_CASE("coerce moves polynomials between rings by name") {
    PolyRing a(FieldSpec::rationals(), {"x", "y"});
    PolyRing b(FieldSpec::rationals(), {"y", "x", "w"});
    MultiPoly f = parse_poly("x^2+y", a);
    MultiPoly g = coerce(f, b);
    CHECK(g == parse_poly("x^2+y", b));
    CHECK_THROWS_AS(coerce(parse_poly("w", b), a), AlgebraError);
}

TEST_CASE("term budget aborts oversized products") {
    PolyRing r(FieldSpec::rationals(), {"x", "y"});
    MultiPoly f = parse_poly("(x+y+1)^4", r);
    Budget tiny = current_budget();
    tiny.max_terms = 10;
    BudgetScope scope(tiny);
    CHECK_THROWS_AS(f * f, AlgebraError);
}

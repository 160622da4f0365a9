#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

using namespace polyaut;

namespace {

PolyRing plane() { return PolyRing(FieldSpec::rationals(), {"x", "y"}); }

PolyMap map_of(const PolyRing& r, const std::vector<std::string>& coords) {
    std::vector<MultiPoly> cs;
    for (const auto& s : coords) cs.push_back(parse_poly(s, r));
    return PolyMap(r, std::move(cs));
}

// f = (x + y^2, y), g = (x, y + x^2) as word-built maps
PolyMap degree_growth_map(const PolyRing& r) {
    PolyMap f = PolyMap::from_word(r, {ElemFactor{0, parse_poly("y^2", r)}});
    PolyMap g = PolyMap::from_word(r, {ElemFactor{1, parse_poly("x^2", r)}});
    return compose(f, g);
}

} // namespace

TEST_CASE("compose matches hand expansion") {
    PolyRing r = plane();
    PolyMap fg = degree_growth_map(r);
    CHECK(fg == map_of(r, {"x+(y+x^2)^2", "y+x^2"}));
    CHECK(fg.has_word());
    PolyMap id = PolyMap::identity(r);
    CHECK(compose(id, fg) == fg);
    CHECK(compose(fg, id) == fg);

    // two affine maps compose to the affine map of the matrix product
    Matrix m1(r.field(), 2, 2), m2(r.field(), 2, 2);
    m1.at(0, 0) = Scalar::from_long(r.field(), 2);
    m1.at(0, 1) = Scalar::from_long(r.field(), 1);
    m1.at(1, 1) = Scalar::from_long(r.field(), 1);
    m2.at(0, 0) = Scalar::from_long(r.field(), 1);
    m2.at(1, 0) = Scalar::from_long(r.field(), 3);
    m2.at(1, 1) = Scalar::from_long(r.field(), -1);
    std::vector<Scalar> zero = {Scalar::zero(r.field()), Scalar::zero(r.field())};
    PolyMap a1 = PolyMap::from_word(r, {AffineFactor{m1, zero}});
    PolyMap a2 = PolyMap::from_word(r, {AffineFactor{m2, zero}});
    PolyMap prod = PolyMap::from_word(r, {AffineFactor{m1 * m2, zero}});
    CHECK(compose(a1, a2) == prod);
}

TEST_CASE("inversion through the word") {
    PolyRing r = plane();
    // (x, y + P(x)) inverts to (x, y - P(x))
    PolyMap e = PolyMap::from_word(r, {ElemFactor{1, parse_poly("x^3-2*x", r)}});
    CHECK(invert(e) == map_of(r, {"x", "y-x^3+2*x"}));
    // (2x + 1, y) inverts to ((x-1)/2, y)
    Matrix m = Matrix::identity(r.field(), 2);
    m.at(0, 0) = Scalar::from_long(r.field(), 2);
    PolyMap aff = PolyMap::from_word(
        r, {AffineFactor{m, {Scalar::one(r.field()), Scalar::zero(r.field())}}});
    CHECK(invert(aff) == map_of(r, {"1/2*x-1/2", "y"}));
    // word reversal inverts the degree-growth composition
    PolyMap fg = degree_growth_map(r);
    PolyMap inv = invert(fg);
    CHECK(compose(fg, inv).is_identity());
    CHECK(compose(inv, fg).is_identity());
    // raw maps cannot be inverted by this artifact
    CHECK_THROWS_AS(invert(map_of(r, {"x", "y+x^2"})), AlgebraError);
}

TEST_CASE("invert is an involution on random words") {
    std::mt19937 rng(2024);
    PolyRing r = plane();
    for (int i = 0; i < 10; ++i) {
        PolyMap h = testutil::random_word_map(rng, r, 3);
        CHECK(invert(invert(h)) == h);
    }
}

TEST_CASE("degree growth of the plane quadratic pair") {
    PolyRing r = plane();
    PolyMap fg = degree_growth_map(r);
    CHECK(iterate_degrees(fg, 3) == std::vector<long>{4, 16, 64});
    CHECK(iterate_degrees(PolyMap::identity(r), 4) == std::vector<long>{1, 1, 1, 1});
    CHECK(iterate_degrees(map_of(r, {"x", "y+x^2"}), 3) == std::vector<long>{2, 2, 2});
}

TEST_CASE("degree sequence is submultiplicative") {
    std::mt19937 rng(31337);
    PolyRing r = plane();
    for (int i = 0; i < 6; ++i) {
        PolyMap h = testutil::random_word_map(rng, r, 3);
        auto d = iterate_degrees(h, 4);
        for (int m = 1; m + 1 < 4; ++m)
            for (int n = 1; m + n <= 4; ++n)
                CHECK(d[static_cast<std::size_t>(m + n - 1)] <=
                      d[static_cast<std::size_t>(m - 1)] * d[static_cast<std::size_t>(n - 1)]);
    }
}

TEST_CASE("conjugacy verification") {
    PolyRing r = plane();
    PolyMap h = PolyMap::from_word(r, {ElemFactor{1, parse_poly("x^2", r)}});
    CHECK(verify_conjugacy(h, map_of(r, {"2*x", "y"}), map_of(r, {"2*x", "y+3*x^2"})));
    PolyMap id = PolyMap::from_word(r, {});
    PolyMap a = map_of(r, {"2*x", "y"});
    CHECK(verify_conjugacy(id, a, a));
    CHECK(!verify_conjugacy(id, a, map_of(r, {"x", "2*y"})));
    CHECK_THROWS_AS(verify_conjugacy(map_of(r, {"x", "y"}), a, a), AlgebraError);
}

TEST_CASE("order detection") {
    PolyRing r = plane();
    CHECK(*order_up_to(map_of(r, {"-x", "-y"}), 8) == 2);
    CHECK(!order_up_to(map_of(r, {"2*x", "y"}), 20));

    PolyRing rc(FieldSpec::cyclotomic(4), {"x", "y"});
    CHECK(*order_up_to(map_of(rc, {"zeta*x", "y"}), 8) == 4);
}

TEST_CASE("jacobian of the induced Q(x) map at the origin") {
    PolyRing rx(FieldSpec::rational_functions("x"), {"y", "z"});
    MultiPoly q = parse_poly("x^2*y - z^2 - x*z^3", rx);
    MultiPoly fy = parse_poly("y", rx) * parse_poly("1-x*z", rx) +
                   (q * q).scale(Scalar::from_rat(rx.field(), make_rat(1, 4))) + parse_poly("z^4", rx);
    MultiPoly fz = parse_poly("z", rx) - q.scale(Scalar::param(rx.field()) *
                                                 Scalar::from_rat(rx.field(), make_rat(1, 2)));
    PolyMap psi(rx, {fy, fz});
    std::vector<Scalar> origin = {Scalar::zero(rx.field()), Scalar::zero(rx.field())};
    Matrix j = jacobian_at(psi, origin);
    // row convention (dPsi_i/dv_j); entries 1, 0, -x^3/2, 1
    CHECK(j.at(0, 0).is_one());
    CHECK(j.at(0, 1).is_zero());
    CHECK(j.at(1, 0) == parse_scalar("-x^3/2", rx.field()));
    CHECK(j.at(1, 1).is_one());
    CHECK(is_unipotent(j));
    CHECK(!j.is_identity());

    PolyRing r = plane();
    std::vector<Scalar> o2 = {Scalar::zero(r.field()), Scalar::zero(r.field())};
    CHECK(jacobian_at(PolyMap::identity(r), o2).is_identity());
    Matrix d = jacobian_at(map_of(r, {"2*x", "y/2"}), o2);
    CHECK(d.at(0, 0) == Scalar::from_long(r.field(), 2));
    CHECK(d.at(1, 1) == parse_scalar("1/2", r.field()));
    CHECK(!is_unipotent(d));
}

TEST_CASE("chain rule on random word maps") {
    std::mt19937 rng(99);
    PolyRing r = plane();
    for (int i = 0; i < 8; ++i) {
        PolyMap f = testutil::random_word_map(rng, r, 2);
        PolyMap g = testutil::random_word_map(rng, r, 2);
        std::vector<Scalar> p = {Scalar::from_long(r.field(), 1),
                                 Scalar::from_long(r.field(), -2)};
        Matrix lhs = jacobian_at(compose(f, g), p);
        Matrix rhs = jacobian_at(f, g.apply_point(p)) * jacobian_at(g, p);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("compose is associative on words") {
    std::mt19937 rng(4);
    PolyRing r = plane();
    for (int i = 0; i < 6; ++i) {
        PolyMap a = testutil::random_word_map(rng, r, 2);
        PolyMap b = testutil::random_word_map(rng, r, 2);
        PolyMap c = testutil::random_word_map(rng, r, 2);
        CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
    }
}

TEST_CASE("word-built maps have constant Jacobian determinant") {
    std::mt19937 rng(555);
    PolyRing r = plane();
    for (int i = 0; i < 8; ++i) {
        PolyMap h = testutil::random_word_map(rng, r, 4);
        MultiPoly det = jacobian_det(h);
        CHECK(det.is_constant());
        CHECK(!det.is_zero());
    }
}

TEST_CASE("pullback is the substitution homomorphism") {
    PolyRing r = plane();
    PolyMap f = map_of(r, {"x+y^2", "y"});
    MultiPoly a = parse_poly("x*y+1", r), b = parse_poly("x-y", r);
    CHECK(f.pullback(a * b) == f.pullback(a) * f.pullback(b));
    CHECK(f.pullback(a + b) == f.pullback(a) + f.pullback(b));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "polyaut/lnd.hpp"
#include "polyaut/matrix.hpp"
#include "test_util.hpp"

using namespace polyaut;

namespace {

PolyRing plane() { return PolyRing(FieldSpec::rationals(), {"x", "y"}); }

Derivation deriv(const PolyRing& r, const std::vector<std::string>& images) {
    std::vector<MultiPoly> imgs;
    for (const auto& s : images) imgs.push_back(parse_poly(s, r));
    return Derivation(r, std::move(imgs));
}

// random triangular derivation: D(x_i) depends only on later variables
Derivation random_triangular(std::mt19937& rng, const PolyRing& r, unsigned max_degree) {
    std::vector<MultiPoly> imgs;
    for (std::size_t i = 0; i < r.nvars(); ++i) {
        std::vector<MultiPoly::Term> terms;
        std::uniform_int_distribution<int> nterms(0, 3);
        std::uniform_int_distribution<int> coeff(-3, 3);
        std::uniform_int_distribution<Exp> expd(0, static_cast<Exp>(max_degree));
        int k = nterms(rng);
        for (int t = 0; t < k; ++t) {
            Mono m(r.nvars(), 0);
            Exp left = static_cast<Exp>(max_degree);
            for (std::size_t v = i + 1; v < r.nvars(); ++v) {
                m[v] = expd(rng) % (left + 1);
                left -= m[v];
            }
            int c = coeff(rng);
            if (c != 0) terms.emplace_back(std::move(m), Scalar::from_long(r.field(), c));
        }
        imgs.push_back(MultiPoly::from_terms(r, std::move(terms)));
    }
    return Derivation(r, std::move(imgs));
}

} // namespace

TEST_CASE("Leibniz extension on coordinates") {
    PolyRing r = plane();
    Derivation d = deriv(r, {"0", "x^2"});
    CHECK(d.apply(parse_poly("y", r)) == parse_poly("x^2", r));
    CHECK(d.apply(parse_poly("y^2", r)) == parse_poly("2*x^2*y", r));

    Derivation d2 = deriv(r, {"1", "x"});
    CHECK(d2.apply(parse_poly("y - x^2/2", r)).is_zero());
}

TEST_CASE("derivation property on random pairs") {
    std::mt19937 rng(808);
    PolyRing r3(FieldSpec::rationals(), {"x", "y", "z"});
    for (int i = 0; i < 15; ++i) {
        Derivation d = random_triangular(rng, r3, 3);
        MultiPoly f = testutil::random_poly(rng, r3, 3, 4);
        MultiPoly g = testutil::random_poly(rng, r3, 3, 4);
        CHECK(d.apply(f * g) == f * d.apply(g) + g * d.apply(f));
        CHECK(d.apply(f + g) == d.apply(f) + d.apply(g));
    }
}

TEST_CASE("local nilpotence detection") {
    PolyRing r = plane();
    auto res = is_locally_nilpotent(deriv(r, {"0", "x^2"}), 5);
    CHECK(res.status == NilpotenceResult::Status::Yes);
    CHECK(res.max_index == 2);

    auto eig = is_locally_nilpotent(deriv(r, {"x", "0"}), 10);
    CHECK(eig.status == NilpotenceResult::Status::Unknown);
    CHECK(eig.exhausted_var == 0);

    PolyRing r3(FieldSpec::rationals(), {"x", "y", "z"});
    auto tri = is_locally_nilpotent(deriv(r3, {"y", "z", "0"}), 10);
    CHECK(tri.status == NilpotenceResult::Status::Yes);
    CHECK(tri.max_index == 3);
}

TEST_CASE("exponential flows") {
    PolyRing r = plane();
    // Rentschler shape (x, y + u P(x))
    ParametricMap psi = exp_flow(deriv(r, {"0", "x^3-x"}));
    CHECK(psi.kind() == FlowKind::Additive);
    CHECK(psi.coords()[0] == parse_poly("x", psi.ext_ring()));
    CHECK(psi.coords()[1] == parse_poly("y + u*(x^3-x)", psi.ext_ring()));
    CHECK(psi.specialize(Scalar::zero(r.field())).is_identity());

    // series terminates at j = 2: (x + u, y + u x + u^2/2)
    ParametricMap p2 = exp_flow(deriv(r, {"1", "x"}));
    CHECK(p2.coords()[0] == parse_poly("x + u", p2.ext_ring()));
    CHECK(p2.coords()[1] == parse_poly("y + u*x + u^2/2", p2.ext_ring()));

    ParametricMap pz = exp_flow(Derivation::zero(r));
    CHECK(pz.specialize(Scalar::from_long(r.field(), 17)).is_identity());

    CHECK_THROWS_AS(exp_flow(deriv(r, {"x", "0"}), 8), AlgebraError);
}

TEST_CASE("additive flow group law") {
    PolyRing r = plane();
    CHECK(additive_flow_law_holds(exp_flow(deriv(r, {"0", "x^2"}))));
    CHECK(additive_flow_law_holds(exp_flow(deriv(r, {"1", "x"}))));
}

TEST_CASE("logarithm of unipotent maps") {
    PolyRing r = plane();
    PolyMap f(r, {parse_poly("x", r), parse_poly("y+x^2", r)});
    CHECK(log_unipotent(f, 16) == deriv(r, {"0", "x^2"}));
    CHECK(log_unipotent(PolyMap::identity(r), 4) == Derivation::zero(r));
    PolyMap shift(r, {parse_poly("x+1", r), parse_poly("y", r)});
    CHECK(log_unipotent(shift, 4) == deriv(r, {"1", "0"}));
    // (2x, y) is not an exponential: the series never terminates
    PolyMap bad(r, {parse_poly("2*x", r), parse_poly("y", r)});
    CHECK_THROWS_AS(log_unipotent(bad, 32), AlgebraError);
}

TEST_CASE("exp/log roundtrip on random triangular derivations") {
    std::mt19937 rng(20250810);
    PolyRing r2 = plane();
    PolyRing r3(FieldSpec::rationals(), {"x", "y", "z"});
    for (int i = 0; i < 12; ++i) {
        const PolyRing& r = (i % 2 == 0) ? r2 : r3;
        Derivation d = random_triangular(rng, r, 3);
        ParametricMap flow = exp_flow(d);
        PolyMap at1 = flow.specialize(Scalar::one(r.field()));
        CHECK(log_unipotent(at1, 64) == d);
    }
}

TEST_CASE("psi-degree examples and degree-function axioms") {
    PolyRing r = plane();
    Derivation d = deriv(r, {"0", "x^2"});
    CHECK(psi_degree(d, parse_poly("x", r)) == 0);
    CHECK(psi_degree(d, parse_poly("y", r)) == 1);
    CHECK(psi_degree(d, parse_poly("y^2", r)) == 2);
    CHECK(psi_degree(d, MultiPoly::zero(r)) == -1);

    // D^2(y^2) = 2 x^4 as stated by the Leibniz chain
    CHECK(d.apply(d.apply(parse_poly("y^2", r))) == parse_poly("2*x^4", r));

    std::mt19937 rng(1414);
    for (int i = 0; i < 40; ++i) {
        MultiPoly f = testutil::random_poly(rng, r, 3, 4);
        MultiPoly g = testutil::random_poly(rng, r, 3, 4);
        long df = psi_degree(d, f), dg = psi_degree(d, g);
        if (!f.is_zero() && !g.is_zero()) CHECK(psi_degree(d, f * g) == df + dg);
        long ds = psi_degree(d, f + g);
        CHECK(ds <= std::max(df, dg));
    }
}

TEST_CASE("interpolation recovers the series from iterates") {
    // For F = exp(D) at u=1 and f of nilpotency index r, the values
    // (F^i)*(f) determine D^j(f) through the invertible matrix (i^j / j!).
    PolyRing r = plane();
    Derivation d = deriv(r, {"0", "x^2"});
    PolyMap f1 = exp_flow(d).specialize(Scalar::one(r.field()));
    MultiPoly f = parse_poly("y^2 + x*y", r);

    // nilpotency index of f under D
    std::vector<MultiPoly> ds = {f};
    while (!ds.back().is_zero()) ds.push_back(d.apply(ds.back()));
    std::size_t steps = ds.size() - 1; // D^steps(f) = 0

    // pullbacks by iterates F^0 .. F^steps
    std::vector<MultiPoly> pulls = {f};
    for (std::size_t i = 1; i <= steps; ++i) pulls.push_back(f1.pullback(pulls.back()));

    // solve sum_j (i^j/j!) D^j(f) = (F^i)*(f)
    FieldSpec q = r.field();
    Matrix m(q, steps + 1, steps + 1);
    Rat fact(1);
    for (std::size_t j = 0; j <= steps; ++j) {
        if (j > 0) fact *= Rat(static_cast<long>(j));
        for (std::size_t i = 0; i <= steps; ++i) {
            Rat ij = rat_pow(Rat(static_cast<long>(i)), static_cast<long>(j));
            m.at(i, j) = Scalar::from_rat(q, ij / fact);
        }
    }
    Matrix minv = m.inverse();
    for (std::size_t j = 0; j <= steps; ++j) {
        MultiPoly rec = MultiPoly::zero(r);
        for (std::size_t i = 0; i <= steps; ++i)
            rec = rec + pulls[i].scale(minv.at(j, i));
        CHECK(rec == ds[j]);
    }
}

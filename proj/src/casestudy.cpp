#include "polyaut/casestudy.hpp"

#include "polyaut/parse.hpp"

namespace polyaut {

PolyMap poloni_moser_phi() {
    PolyRing ring(FieldSpec::rationals(), {"x", "y", "z"});
    MultiPoly q = parse_poly("x^2*y - z^2 - x*z^3", ring);
    MultiPoly x = parse_poly("x", ring);
    MultiPoly y = parse_poly("y", ring);
    MultiPoly z = parse_poly("z", ring);
    MultiPoly fy = y * parse_poly("1 - x*z", ring) + (q * q).scale(Scalar::from_rat(ring.field(), make_rat(1, 4))) +
                   parse_poly("z^4", ring);
    MultiPoly fz = z - (q * x).scale(Scalar::from_rat(ring.field(), make_rat(1, 2)));
    return PolyMap(ring, {x, fy, fz});
}

PolyMap poloni_moser_psi() {
    PolyRing ring(FieldSpec::rational_functions("x"), {"y", "z"});
    MultiPoly q = parse_poly("x^2*y - z^2 - x*z^3", ring);
    MultiPoly y = parse_poly("y", ring);
    MultiPoly z = parse_poly("z", ring);
    Scalar x = Scalar::param(ring.field());
    MultiPoly fy = y * parse_poly("1 - x*z", ring) + (q * q).scale(Scalar::from_rat(ring.field(), make_rat(1, 4))) +
                   parse_poly("z^4", ring);
    MultiPoly fz = z - q.scale(x * Scalar::from_rat(ring.field(), make_rat(1, 2)));
    return PolyMap(ring, {fy, fz});
}

PoloniMoserReport run_poloni_moser(unsigned degree_bound) {
    if (degree_bound < 1) fail(Err::InvalidInput, "degree bound must be >= 1");
    PoloniMoserReport rep;
    rep.degree_bound = degree_bound;

    // (B) induced map on (y, z) over Q(x)
    PolyMap psi = poloni_moser_psi();
    const PolyRing& rx = psi.ring();

    Ideal fix = fixpoint_ideal(psi);
    MultiPoly q = parse_poly("x^2*y - z^2 - x*z^3", rx);
    MultiPoly g1 = q.scale(Scalar::param(rx.field()));                  // x Q
    MultiPoly g2 = parse_poly("4*z^4 - 4*x*y*z", rx) + q * q;           // 4z^4 - 4xyz + Q^2
    rep.ideal_equality = ideal_equal(fix, Ideal(rx, {g1, g2}));

    std::vector<Scalar> origin{Scalar::zero(rx.field()), Scalar::zero(rx.field())};
    rep.unique_fixpoint_ok = unique_fixpoint(psi, origin);

    rep.jacobian = jacobian_at(psi, origin);
    rep.unipotent = is_unipotent(rep.jacobian);
    rep.nonidentity_differential = !rep.jacobian.is_identity();

    // (A) 3-variable invariants over Q, degree by degree
    PolyMap phi = poloni_moser_phi();
    rep.phi_jacobian_det = jacobian_det(phi);
    bool expected = rep.phi_jacobian_det.is_constant() && !rep.phi_jacobian_det.is_zero();
    for (unsigned d = 0; d <= degree_bound; ++d)
        rep.invariant_bases.emplace(d, invariant_basis(phi, d));

    // expected shape: basis at degree D is exactly {1, x, ..., x^D}
    const PolyRing& r3 = phi.ring();
    rep.invariants_match_expected = true;
    for (unsigned d = 0; d <= degree_bound; ++d) {
        const auto& basis = rep.invariant_bases.at(d);
        if (basis.size() != d + 1) {
            rep.invariants_match_expected = false;
            break;
        }
        for (unsigned k = 0; k <= d; ++k) {
            Mono m(3, 0);
            m[0] = static_cast<Exp>(k);
            if (!(basis[k] == MultiPoly::monomial(r3, m, Scalar::one(r3.field())))) {
                rep.invariants_match_expected = false;
                break;
            }
        }
        if (!rep.invariants_match_expected) break;
    }

    bool ok = rep.ideal_equality && rep.unique_fixpoint_ok && rep.unipotent &&
              rep.nonidentity_differential && rep.invariants_match_expected && expected;
    rep.conclusion = ok ? "success" : "failed";
    return rep;
}

} // namespace polyaut

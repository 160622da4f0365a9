#ifndef POLYAUT_CASESTUDY_HPP
#define POLYAUT_CASESTUDY_HPP

#include <map>
#include <string>
#include <vector>

#include "polyaut/classify.hpp"
#include "polyaut/matrix.hpp"

namespace polyaut {

// End-to-end verification pipeline for the C^3 automorphism
//   (x, y, z) -> (x, y(1 - x z) + Q^2/4 + z^4, z - (Q/2) x),
//   Q = x^2 y - z^2 - x z^3,
// worked in two presentations: the 3-variable map over Q for the
// degree-bounded invariant computation, and the induced 2-variable map on
// (y, z) over Q(x) for the fixpoint and differential analysis.
struct PoloniMoserReport {
    bool ideal_equality = false;       // fixpoint ideal == <xQ, 4z^4 - 4xyz + Q^2>
    bool unique_fixpoint_ok = false;   // locus over the closure is exactly the origin
    Matrix jacobian;                   // d Psi at (0, 0), rows = (dPsi_i/dx_j)
    bool unipotent = false;
    bool nonidentity_differential = false;
    std::map<unsigned, std::vector<MultiPoly>> invariant_bases; // degree -> basis
    bool invariants_match_expected = false; // basis[D] == {1, x, ..., x^D} for all D
    MultiPoly phi_jacobian_det;        // 3-variable sanity: must be a nonzero constant
    std::string conclusion;            // "success" or a failure code
    // The full claim C(x,y,z)^Phi = C(x) is not desk-checkable; the report
    // certifies the degree-bounded statement only.
    unsigned degree_bound = 0;

    PoloniMoserReport() : jacobian(FieldSpec::rationals(), 0, 0), phi_jacobian_det(PolyRing(FieldSpec::rationals(), {})) {}
};

// the 3-variable map over Q
PolyMap poloni_moser_phi();
// the induced 2-variable map on (y, z) over Q(x)
PolyMap poloni_moser_psi();

PoloniMoserReport run_poloni_moser(unsigned degree_bound = 6);

} // namespace polyaut

#endif

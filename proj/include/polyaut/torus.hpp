#ifndef POLYAUT_TORUS_HPP
#define POLYAUT_TORUS_HPP

#include <vector>

#include "polyaut/lnd.hpp"

namespace polyaut {

// f = sum of eigencomponents f_i with F*(f_i) = a^i f_i; zero components
// are dropped, so weights lists only the occupied weights.
struct WeightDecomposition {
    MultiPoly base;
    std::vector<long> weights;
    std::vector<MultiPoly> components;
};

// Solves the Vandermonde system (F^j)*(f) = sum_i a^(j i) f_i over weights
// i in [r, s] and verifies the eigenproperty of every component.
WeightDecomposition weight_split(const PolyMap& F, const Scalar& a, const MultiPoly& f, long r,
                                 long s);

// Reconstructs the one-parameter multiplicative flow psi with psi_a = F by
// weight-splitting every coordinate variable. The search range for each
// coordinate starts at [-d, d] with d its total degree and doubles twice
// before giving up.
ParametricMap build_gm_flow(const PolyMap& F, const Scalar& a);

// F o psi_u = psi_u o F as an identity of parametric coordinates.
bool commutes_with_flow(const PolyMap& F, const ParametricMap& psi);

// psi_v o psi_w = psi_(v w) as a two-parameter identity (multiplicative
// flows; use additive_flow_law_holds for the additive case).
bool multiplicative_flow_law_holds(const ParametricMap& psi);

struct GroupElementSpec {
    enum class Kind { Additive, Multiplicative } kind;
    Scalar h;
};

struct FinitePartResult {
    PolyMap delta;
    Scalar b;
    unsigned long delta_order; // exact order of delta (divides r)
};

// Given F^r = psi_h, extracts b with b^r = h (or r b = h additively) and
// returns Delta = F o psi_(b^-1) (resp. psi_(-b)) with Delta^r = Id, so that
// F = Delta o psi_b.
FinitePartResult finite_part_decompose(const PolyMap& F, const ParametricMap& psi,
                                       unsigned long r, const GroupElementSpec& h);

} // namespace polyaut

#endif

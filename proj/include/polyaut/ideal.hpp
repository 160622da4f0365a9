#ifndef POLYAUT_IDEAL_HPP
#define POLYAUT_IDEAL_HPP

#include <vector>

#include "polyaut/endo.hpp"
#include "polyaut/poly.hpp"

namespace polyaut {

// Finitely generated ideal. Zero generators are dropped; the zero ideal is
// represented by an empty generator list (it shows up as the fixpoint ideal
// of the identity map).
struct Ideal {
    PolyRing ring;
    std::vector<MultiPoly> gens;

    Ideal(PolyRing r, std::vector<MultiPoly> g);
};

class GroebnerBasis {
public:
    GroebnerBasis(PolyRing ring, std::vector<MultiPoly> basis)
        : ring_(std::move(ring)), basis_(std::move(basis)) {}

    // ring carrying the order the basis was computed in
    const PolyRing& ring() const { return ring_; }
    const std::vector<MultiPoly>& basis() const { return basis_; }
    bool is_unit_ideal() const;

private:
    PolyRing ring_;
    std::vector<MultiPoly> basis_;
};

// Reduced Groebner basis via Buchberger's algorithm. Pair selection is the
// normal strategy (minimal lcm total degree, ties by generator index);
// polynomials are made monic after every reduction. Deterministic.
GroebnerBasis buchberger(const Ideal& ideal, MonOrder order);

// Full normal form: no term of the result is divisible by any basis leading
// term, and f - result lies in the ideal.
MultiPoly reduce(const MultiPoly& f, const GroebnerBasis& g);

// Generated by the coordinate differences F_i - x_i.
Ideal fixpoint_ideal(const PolyMap& F);

// f in sqrt(I), decided by the Rabinowitsch trick: 1 in I + <1 - w f>.
bool radical_member(const MultiPoly& f, const Ideal& ideal);

// The vanishing locus of the fixpoint ideal over the algebraic closure is
// exactly {p}: every generator vanishes at p and each x_i - p_i lies in the
// radical.
bool unique_fixpoint(const PolyMap& F, const std::vector<Scalar>& p);

// Mutual membership of generators, certified by reduction to zero.
bool ideal_equal(const Ideal& a, const Ideal& b);

} // namespace polyaut

#endif

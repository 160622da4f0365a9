#ifndef POLYAUT_UPOLY_HPP
#define POLYAUT_UPOLY_HPP

#include <string>
#include <vector>

#include "polyaut/rat.hpp"

namespace polyaut {

// Dense univariate polynomials over Q, used for the internals of the two
// field extensions: cyclotomic moduli and Q(x) values. Coefficients are
// stored ascending; the invariant is no trailing zero coefficient, so the
// zero polynomial is the empty vector.
using UPoly = std::vector<Rat>;

namespace up {

inline bool is_zero(const UPoly& p) { return p.empty(); }
inline long deg(const UPoly& p) { return static_cast<long>(p.size()) - 1; } // -1 for 0

void normalize(UPoly& p);

UPoly from_rat(const Rat& c);
UPoly monomial(const Rat& c, std::size_t k);

UPoly add(const UPoly& a, const UPoly& b);
UPoly sub(const UPoly& a, const UPoly& b);
UPoly neg(const UPoly& a);
UPoly mul(const UPoly& a, const UPoly& b);
UPoly mul_rat(const UPoly& a, const Rat& c);
UPoly pow(const UPoly& a, unsigned long e);

// Euclidean division over Q; b must be nonzero.
UPoly divrem(UPoly& rem, const UPoly& a, const UPoly& b);

inline const Rat& lc(const UPoly& p) { return p.back(); } // requires nonzero
UPoly monic(const UPoly& p);

// Monic gcd. Computed by a primitive pseudo-remainder sequence over Z to
// keep coefficient growth down.
UPoly gcd(const UPoly& a, const UPoly& b);

// Extended gcd: returns g = gcd(a,b) monic and s,t with s*a + t*b = g.
UPoly ext_gcd(const UPoly& a, const UPoly& b, UPoly& s, UPoly& t);

Rat eval(const UPoly& p, const Rat& x);

// m-th cyclotomic polynomial (memoized, integer coefficients, monic).
const UPoly& cyclotomic(unsigned long m);

// Euler phi (degree of the m-th cyclotomic polynomial).
unsigned long euler_phi(unsigned long m);

std::string to_string(const UPoly& p, const std::string& var);

} // namespace up

} // namespace polyaut

#endif

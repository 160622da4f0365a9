#ifndef POLYAUT_PARSE_HPP
#define POLYAUT_PARSE_HPP

#include <string>

#include "polyaut/poly.hpp"

namespace polyaut {

// Shared expression grammar for scalars and polynomials:
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := ('-'|'+')* atom ('^' ('-'? integer))?
//   atom   := integer | identifier | '(' expr ')'
//
// Identifiers resolve to ring variables, to "zeta" in cyclotomic fields, or
// to the field parameter in Q(x). Implicit multiplication is a parse error.
// Division requires a nonzero constant divisor; negative exponents require a
// nonzero constant base.
MultiPoly parse_poly(const std::string& text, const PolyRing& ring);

Scalar parse_scalar(const std::string& text, const FieldSpec& field);

} // namespace polyaut

#endif

#ifndef POLYAUT_POLY_HPP
#define POLYAUT_POLY_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polyaut/scalar.hpp"

namespace polyaut {

enum class MonOrder { Lex, DegRevLex };

struct PolyRingData {
    FieldSpec field;
    std::vector<std::string> vars;
    MonOrder order;
    PolyRingData(FieldSpec f, std::vector<std::string> v, MonOrder o)
        : field(std::move(f)), vars(std::move(v)), order(o) {}
};

// Value-semantic handle on an immutable ring description. Equality is
// structural: same field, same variables, same order.
class PolyRing {
public:
    PolyRing(FieldSpec field, std::vector<std::string> vars, MonOrder order = MonOrder::Lex);

    const FieldSpec& field() const { return d_->field; }
    const std::vector<std::string>& vars() const { return d_->vars; }
    std::size_t nvars() const { return d_->vars.size(); }
    MonOrder order() const { return d_->order; }
    std::optional<std::size_t> var_index(const std::string& name) const;

    PolyRing extended(const std::vector<std::string>& extra) const;
    PolyRing with_order(MonOrder o) const;
    PolyRing with_vars(std::vector<std::string> vars) const;

    bool operator==(const PolyRing& o) const;
    bool operator!=(const PolyRing& o) const { return !(*this == o); }

private:
    std::shared_ptr<const PolyRingData> d_;
};

using Exp = std::int64_t;
using Mono = std::vector<Exp>;

Exp mono_total_degree(const Mono& m);
// three-way comparison in the given order: negative / 0 / positive
int mono_cmp(const Mono& a, const Mono& b, MonOrder order);
bool mono_divides(const Mono& a, const Mono& b); // a | b
Mono mono_mul(const Mono& a, const Mono& b);
Mono mono_div(const Mono& a, const Mono& b); // requires b | a
Mono mono_lcm(const Mono& a, const Mono& b);

class MultiPoly {
public:
    using Term = std::pair<Mono, Scalar>;

    explicit MultiPoly(PolyRing ring); // zero polynomial
    static MultiPoly zero(const PolyRing& ring) { return MultiPoly(ring); }
    static MultiPoly one(const PolyRing& ring);
    static MultiPoly constant(const PolyRing& ring, const Scalar& c);
    static MultiPoly from_rat(const PolyRing& ring, const Rat& c);
    static MultiPoly variable(const PolyRing& ring, std::size_t idx);
    static MultiPoly monomial(const PolyRing& ring, Mono m, Scalar c);
    // terms need not be sorted or combined; canonicalizes
    static MultiPoly from_terms(const PolyRing& ring, std::vector<Term> terms);

    const PolyRing& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && mono_total_degree(terms_[0].first) == 0); }
    Scalar constant_value() const; // requires is_constant()
    const Term& leading_term() const; // requires nonzero
    long total_degree() const; // -1 for zero
    Exp degree_in(std::size_t var) const;
    Scalar coeff(const Mono& m) const;

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator-() const;
    MultiPoly scale(const Scalar& c) const;
    MultiPoly mul_term(const Mono& m, const Scalar& c) const;
    MultiPoly pow(unsigned long e) const;
    MultiPoly monic() const; // divide by leading coefficient

    bool operator==(const MultiPoly& o) const;
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    PolyRing ring_;
    // sorted descending in the ring's monomial order; no zero coefficients
    std::vector<Term> terms_;

    friend class PolyAccum;
};

void require_same_ring(const MultiPoly& a, const MultiPoly& b, const char* where);

// Pullback-style substitution: one image per ring variable, all images in a
// common target ring. Horner evaluation per variable.
MultiPoly substitute(const MultiPoly& f, const std::vector<MultiPoly>& images);

MultiPoly partial_derivative(const MultiPoly& f, std::size_t var);
Scalar evaluate(const MultiPoly& f, const std::vector<Scalar>& point);

// Transport f into another ring by variable name; every variable actually
// present in f must exist in the target, and fields must agree.
MultiPoly coerce(const MultiPoly& f, const PolyRing& target);

} // namespace polyaut

#endif

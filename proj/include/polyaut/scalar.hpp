#ifndef POLYAUT_SCALAR_HPP
#define POLYAUT_SCALAR_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "polyaut/rat.hpp"
#include "polyaut/upoly.hpp"

namespace polyaut {

// The three supported exact coefficient fields: Q, the cyclotomic field
// Q(zeta_m), and the univariate rational-function field Q(x). Everything
// is characteristic zero.
enum class FieldKind { Rationals, Cyclotomic, RationalFunctions };

class FieldSpec {
public:
    static FieldSpec rationals();
    static FieldSpec cyclotomic(unsigned long m); // m >= 1
    static FieldSpec rational_functions(const std::string& param_name);

    FieldKind kind() const { return kind_; }
    unsigned long cyclotomic_m() const { return m_; }
    const std::string& param() const { return param_; }

    // Degree of the field over Q as a vector space (phi(m) for cyclotomic);
    // 1 for Q, and by convention 1 for Q(x) (infinite extension).
    unsigned long ext_degree() const;

    bool operator==(const FieldSpec& o) const {
        return kind_ == o.kind_ && m_ == o.m_ && param_ == o.param_;
    }
    bool operator!=(const FieldSpec& o) const { return !(*this == o); }

    std::string describe() const;

private:
    FieldSpec(FieldKind k, unsigned long m, std::string p)
        : kind_(k), m_(m), param_(std::move(p)) {}
    FieldKind kind_;
    unsigned long m_ = 0;
    std::string param_;
};

// Element of Q(zeta_m): polynomial in zeta of degree < deg(Phi_m), trailing
// zeros stripped so equality is vector equality.
struct CycVal {
    UPoly c;
    bool operator==(const CycVal& o) const { return c == o.c; }
};

// Element of Q(x): num/den coprime, den monic, zero is 0/1. The canonical
// form makes equality representation equality.
struct FuncVal {
    UPoly num, den;
    bool operator==(const FuncVal& o) const { return num == o.num && den == o.den; }
};

class Scalar {
public:
    Scalar(); // 0 in Q

    static Scalar zero(const FieldSpec& f);
    static Scalar one(const FieldSpec& f);
    static Scalar from_rat(const FieldSpec& f, const Rat& q);
    static Scalar from_long(const FieldSpec& f, long v) { return from_rat(f, Rat(v)); }
    static Scalar zeta(const FieldSpec& f);  // cyclotomic generator
    static Scalar param(const FieldSpec& f); // the x of Q(x)
    static Scalar from_func(const FieldSpec& f, UPoly num, UPoly den);
    static Scalar from_cyc(const FieldSpec& f, UPoly coeffs); // reduces mod Phi_m

    const FieldSpec& field() const { return field_; }

    bool is_zero() const;
    bool is_one() const;

    // True when the value lies in the prime field Q (possible in any field).
    bool is_rational() const;
    Rat as_rat() const; // requires is_rational()

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const; // DivisionByZero on zero divisor
    Scalar neg() const;
    Scalar inv() const;
    Scalar pow(long e) const;

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // Exact multiplicative order when finite. In Q and Q(x) only +-1 are
    // torsion; in Q(zeta_m) the torsion subgroup has order lcm(2,m), which
    // makes the test a bounded decision procedure.
    std::optional<unsigned long> root_of_unity_order() const;

    // Search for b with b^r = *this inside the declared field. Complete on
    // the subgroup generated by Q* and the roots of unity; never extends
    // the field.
    std::optional<Scalar> nth_root(unsigned long r) const;

    std::string to_string() const;
    // Whether embedding this scalar as a coefficient requires parentheses.
    bool print_needs_parens() const;

    const CycVal& cyc() const { return std::get<CycVal>(v_); }
    const FuncVal& func() const { return std::get<FuncVal>(v_); }
    const Rat& rat() const { return std::get<Rat>(v_); }

private:
    Scalar(FieldSpec f, Rat v) : field_(std::move(f)), v_(std::move(v)) {}
    Scalar(FieldSpec f, CycVal v) : field_(std::move(f)), v_(std::move(v)) {}
    Scalar(FieldSpec f, FuncVal v) : field_(std::move(f)), v_(std::move(v)) {}

    FieldSpec field_;
    std::variant<Rat, CycVal, FuncVal> v_;
};

void require_same_field(const Scalar& a, const Scalar& b, const char* where);

} // namespace polyaut

#endif

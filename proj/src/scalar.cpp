#include "polyaut/scalar.hpp"

#include <sstream>

namespace polyaut {

FieldSpec FieldSpec::rationals() { return FieldSpec(FieldKind::Rationals, 0, ""); }

FieldSpec FieldSpec::cyclotomic(unsigned long m) {
    if (m < 1) fail(Err::InvalidInput, "cyclotomic index m must be >= 1");
    return FieldSpec(FieldKind::Cyclotomic, m, "");
}

FieldSpec FieldSpec::rational_functions(const std::string& param_name) {
    if (param_name.empty()) fail(Err::InvalidInput, "rational function field needs a parameter name");
    return FieldSpec(FieldKind::RationalFunctions, 0, param_name);
}

unsigned long FieldSpec::ext_degree() const {
    if (kind_ == FieldKind::Cyclotomic) return up::euler_phi(m_);
    return 1;
}

std::string FieldSpec::describe() const {
    switch (kind_) {
        case FieldKind::Rationals: return "Q";
        case FieldKind::Cyclotomic: return "Q(zeta_" + std::to_string(m_) + ")";
        case FieldKind::RationalFunctions: return "Q(" + param_ + ")";
    }
    return "?";
}

void require_same_field(const Scalar& a, const Scalar& b, const char* where) {
    if (a.field() != b.field())
        fail(Err::FieldMismatch, std::string(where) + ": operands in " + a.field().describe() +
                                     " and " + b.field().describe());
}

namespace {

// Reduce a zeta-polynomial mod Phi_m and strip trailing zeros.
UPoly cyc_reduce(UPoly c, unsigned long m) {
    const UPoly& phi = up::cyclotomic(m);
    if (up::deg(c) >= up::deg(phi)) {
        UPoly rem;
        up::divrem(rem, c, phi);
        return rem;
    }
    up::normalize(c);
    return c;
}

FuncVal func_normalize(UPoly num, UPoly den) {
    if (up::is_zero(den)) fail(Err::DivisionByZero, "zero denominator in Q(x)");
    if (up::is_zero(num)) return FuncVal{{}, up::from_rat(Rat(1))};
    UPoly g = up::gcd(num, den);
    if (up::deg(g) > 0) {
        UPoly rem;
        num = up::divrem(rem, num, g);
        den = up::divrem(rem, den, g);
    }
    Rat l = up::lc(den);
    if (l != 1) {
        num = up::mul_rat(num, 1 / l);
        den = up::mul_rat(den, 1 / l);
    }
    return FuncVal{std::move(num), std::move(den)};
}

} // namespace

Scalar::Scalar() : field_(FieldSpec::rationals()), v_(Rat(0)) {}

Scalar Scalar::zero(const FieldSpec& f) { return from_rat(f, Rat(0)); }
Scalar Scalar::one(const FieldSpec& f) { return from_rat(f, Rat(1)); }

Scalar Scalar::from_rat(const FieldSpec& f, const Rat& q) {
    switch (f.kind()) {
        case FieldKind::Rationals: return Scalar(f, q);
        case FieldKind::Cyclotomic: {
            CycVal v{up::from_rat(q)};
            return Scalar(f, std::move(v));
        }
        case FieldKind::RationalFunctions: {
            FuncVal v{up::from_rat(q), up::from_rat(Rat(1))};
            return Scalar(f, std::move(v));
        }
    }
    fail(Err::InternalError, "unreachable");
}

Scalar Scalar::zeta(const FieldSpec& f) {
    if (f.kind() != FieldKind::Cyclotomic)
        fail(Err::InvalidInput, "zeta only exists in cyclotomic fields");
    return Scalar(f, CycVal{cyc_reduce(up::monomial(Rat(1), 1), f.cyclotomic_m())});
}

Scalar Scalar::param(const FieldSpec& f) {
    if (f.kind() != FieldKind::RationalFunctions)
        fail(Err::InvalidInput, "field has no transcendental parameter");
    return Scalar(f, FuncVal{up::monomial(Rat(1), 1), up::from_rat(Rat(1))});
}

Scalar Scalar::from_func(const FieldSpec& f, UPoly num, UPoly den) {
    if (f.kind() != FieldKind::RationalFunctions)
        fail(Err::InvalidInput, "rational-function value in a non-Q(x) field");
    return Scalar(f, func_normalize(std::move(num), std::move(den)));
}

Scalar Scalar::from_cyc(const FieldSpec& f, UPoly coeffs) {
    if (f.kind() != FieldKind::Cyclotomic)
        fail(Err::InvalidInput, "cyclotomic value in a non-cyclotomic field");
    return Scalar(f, CycVal{cyc_reduce(std::move(coeffs), f.cyclotomic_m())});
}

bool Scalar::is_zero() const {
    switch (field_.kind()) {
        case FieldKind::Rationals: return rat() == 0;
        case FieldKind::Cyclotomic: return cyc().c.empty();
        case FieldKind::RationalFunctions: return func().num.empty();
    }
    return false;
}

bool Scalar::is_one() const {
    switch (field_.kind()) {
        case FieldKind::Rationals: return rat() == 1;
        case FieldKind::Cyclotomic: return cyc().c.size() == 1 && cyc().c[0] == 1;
        case FieldKind::RationalFunctions:
            return func().num.size() == 1 && func().num[0] == 1 && up::deg(func().den) == 0;
    }
    return false;
}

bool Scalar::is_rational() const {
    switch (field_.kind()) {
        case FieldKind::Rationals: return true;
        case FieldKind::Cyclotomic: return up::deg(cyc().c) <= 0;
        case FieldKind::RationalFunctions:
            return up::deg(func().num) <= 0 && up::deg(func().den) == 0;
    }
    return false;
}

Rat Scalar::as_rat() const {
    switch (field_.kind()) {
        case FieldKind::Rationals: return rat();
        case FieldKind::Cyclotomic:
            if (up::deg(cyc().c) > 0) fail(Err::InvalidInput, "value is not rational");
            return cyc().c.empty() ? Rat(0) : cyc().c[0];
        case FieldKind::RationalFunctions:
            if (up::deg(func().num) > 0 || up::deg(func().den) != 0)
                fail(Err::InvalidInput, "value is not rational");
            return func().num.empty() ? Rat(0) : func().num[0] / func().den[0];
    }
    fail(Err::InternalError, "unreachable");
}

Scalar Scalar::operator+(const Scalar& o) const {
    require_same_field(*this, o, "add");
    switch (field_.kind()) {
        case FieldKind::Rationals: return Scalar(field_, rat() + o.rat());
        case FieldKind::Cyclotomic: return Scalar(field_, CycVal{up::add(cyc().c, o.cyc().c)});
        case FieldKind::RationalFunctions: {
            const FuncVal &a = func(), &b = o.func();
            // a.num/a.den + b.num/b.den with a gcd on the denominators
            UPoly g = up::gcd(a.den, b.den);
            UPoly rem;
            UPoly da = up::divrem(rem, a.den, g);
            UPoly db = up::divrem(rem, b.den, g);
            UPoly num = up::add(up::mul(a.num, db), up::mul(b.num, da));
            UPoly den = up::mul(up::mul(da, g), db);
            return Scalar(field_, func_normalize(std::move(num), std::move(den)));
        }
    }
    fail(Err::InternalError, "unreachable");
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + o.neg(); }

Scalar Scalar::operator*(const Scalar& o) const {
    require_same_field(*this, o, "mul");
    switch (field_.kind()) {
        case FieldKind::Rationals: return Scalar(field_, rat() * o.rat());
        case FieldKind::Cyclotomic:
            return Scalar(field_,
                          CycVal{cyc_reduce(up::mul(cyc().c, o.cyc().c), field_.cyclotomic_m())});
        case FieldKind::RationalFunctions: {
            const FuncVal &a = func(), &b = o.func();
            if (a.num.empty() || b.num.empty()) return zero(field_);
            // cross-cancel before multiplying to limit growth
            UPoly g1 = up::gcd(a.num, b.den);
            UPoly g2 = up::gcd(b.num, a.den);
            UPoly rem;
            UPoly an = up::deg(g1) > 0 ? up::divrem(rem, a.num, g1) : a.num;
            UPoly bd = up::deg(g1) > 0 ? up::divrem(rem, b.den, g1) : b.den;
            UPoly bn = up::deg(g2) > 0 ? up::divrem(rem, b.num, g2) : b.num;
            UPoly ad = up::deg(g2) > 0 ? up::divrem(rem, a.den, g2) : a.den;
            return Scalar(field_, func_normalize(up::mul(an, bn), up::mul(ad, bd)));
        }
    }
    fail(Err::InternalError, "unreachable");
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inv(); }

Scalar Scalar::neg() const {
    switch (field_.kind()) {
        case FieldKind::Rationals: return Scalar(field_, Rat(-rat()));
        case FieldKind::Cyclotomic: return Scalar(field_, CycVal{up::neg(cyc().c)});
        case FieldKind::RationalFunctions:
            return Scalar(field_, FuncVal{up::neg(func().num), func().den});
    }
    fail(Err::InternalError, "unreachable");
}

Scalar Scalar::inv() const {
    if (is_zero()) fail(Err::DivisionByZero, "inverse of zero");
    switch (field_.kind()) {
        case FieldKind::Rationals: return Scalar(field_, Rat(1 / rat()));
        case FieldKind::Cyclotomic: {
            // extended Euclid against Phi_m (irreducible over Q)
            const UPoly& phi = up::cyclotomic(field_.cyclotomic_m());
            UPoly s, t;
            UPoly g = up::ext_gcd(cyc().c, phi, s, t);
            if (up::deg(g) != 0) fail(Err::InternalError, "cyclotomic inverse failed");
            return Scalar(field_, CycVal{cyc_reduce(std::move(s), field_.cyclotomic_m())});
        }
        case FieldKind::RationalFunctions:
            return Scalar(field_, func_normalize(func().den, func().num));
    }
    fail(Err::InternalError, "unreachable");
}

Scalar Scalar::pow(long e) const {
    if (e == 0) return one(field_);
    Scalar b = *this;
    unsigned long k;
    if (e < 0) {
        b = b.inv();
        k = static_cast<unsigned long>(-(e + 1)) + 1;
    } else {
        k = static_cast<unsigned long>(e);
    }
    Scalar r = one(field_);
    while (k) {
        if (k & 1) r = r * b;
        b = k > 1 ? b * b : b;
        k >>= 1;
    }
    return r;
}

bool Scalar::operator==(const Scalar& o) const {
    if (field_ != o.field_) return false;
    return v_ == o.v_;
}

namespace {

std::vector<unsigned long> prime_factors(unsigned long n) {
    std::vector<unsigned long> ps;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

} // namespace

std::optional<unsigned long> Scalar::root_of_unity_order() const {
    if (is_zero()) fail(Err::ZeroInput, "root-of-unity test on zero");
    if (is_rational()) {
        Rat q = as_rat();
        if (q == 1) return 1;
        if (q == -1) return 2;
        if (field_.kind() != FieldKind::Cyclotomic) return std::nullopt;
        return std::nullopt;
    }
    if (field_.kind() != FieldKind::Cyclotomic) return std::nullopt;
    // torsion of Q(zeta_m)* has order L = lcm(2, m)
    unsigned long m = field_.cyclotomic_m();
    unsigned long L = (m % 2 == 0) ? m : 2 * m;
    Scalar p = pow(static_cast<long>(L));
    if (!p.is_one()) return std::nullopt;
    unsigned long d = L;
    for (unsigned long pr : prime_factors(L)) {
        while (d % pr == 0 && pow(static_cast<long>(d / pr)).is_one()) d /= pr;
    }
    return d;
}

std::optional<Scalar> Scalar::nth_root(unsigned long r) const {
    if (r == 0) return std::nullopt;
    if (r == 1) return *this;
    if (is_zero()) return zero(field_);

    // rational case first: exact integer roots of numerator/denominator
    if (is_rational()) {
        Rat q = as_rat();
        Rat root;
        if (rat_perfect_root(root, q, r)) return from_rat(field_, root);
        if (field_.kind() != FieldKind::Cyclotomic) return std::nullopt;
    }
    if (field_.kind() != FieldKind::Cyclotomic) return std::nullopt;

    // Search b = c * tau with tau in the torsion subgroup (order lcm(2,m))
    // and c rational: complete on the subgroup Q* x torsion.
    unsigned long m = field_.cyclotomic_m();
    Scalar z = zeta(field_);
    for (unsigned long j = 0; j < m; ++j) {
        for (int sign = 0; sign < 2; ++sign) {
            Scalar tau = z.pow(static_cast<long>(j));
            if (sign) tau = tau.neg();
            Scalar q = *this * tau.pow(static_cast<long>(r)).inv();
            if (!q.is_rational()) continue;
            Rat root;
            if (rat_perfect_root(root, q.as_rat(), r))
                return from_rat(field_, root) * tau;
        }
    }
    return std::nullopt;
}

std::string Scalar::to_string() const {
    switch (field_.kind()) {
        case FieldKind::Rationals: return rat().get_str();
        case FieldKind::Cyclotomic: return up::to_string(cyc().c, "zeta");
        case FieldKind::RationalFunctions: {
            const FuncVal& v = func();
            if (v.num.empty()) return "0";
            std::string num = up::to_string(v.num, field_.param());
            if (up::deg(v.den) == 0) return num; // den is monic constant => 1
            std::string den = up::to_string(v.den, field_.param());
            bool np = num.find_first_of("+-", 1) != std::string::npos || num.find('/') != std::string::npos;
            bool dp = den.find_first_of("+-", 1) != std::string::npos ||
                      den.find_first_of("*/^") != std::string::npos;
            std::string out = np ? "(" + num + ")" : num;
            out += "/";
            out += dp ? "(" + den + ")" : den;
            return out;
        }
    }
    fail(Err::InternalError, "unreachable");
}

bool Scalar::print_needs_parens() const {
    std::string s = to_string();
    if (s.find_first_of("+*/^", 1) != std::string::npos) {
        // pure rationals "p/q" are safe under left-associative parsing
        if (field_.kind() == FieldKind::Rationals) return false;
        return true;
    }
    return s.find('-', 1) != std::string::npos;
}

} // namespace polyaut

#include "polyaut/parse.hpp"

#include <cctype>

namespace polyaut {

namespace {

struct Parser {
    const std::string& s;
    const PolyRing& ring;
    std::size_t pos = 0;

    Parser(const std::string& text, const PolyRing& r) : s(text), ring(r) {}

    [[noreturn]] void error(const std::string& msg) const {
        fail(Err::ParseError, msg + " at position " + std::to_string(pos) + " in \"" + s + "\"");
    }

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    MultiPoly parse() {
        MultiPoly r = expr();
        skip_ws();
        if (pos != s.size()) error("unexpected trailing input");
        return r;
    }

    MultiPoly expr() {
        MultiPoly r = term();
        while (true) {
            if (eat('+'))
                r = r + term();
            else if (eat('-'))
                r = r - term();
            else
                return r;
        }
    }

    MultiPoly term() {
        MultiPoly r = factor();
        while (true) {
            if (eat('*')) {
                r = r * factor();
            } else if (eat('/')) {
                MultiPoly d = factor();
                if (!d.is_constant()) error("division by a non-constant polynomial");
                Scalar c = d.constant_value();
                if (c.is_zero()) fail(Err::DivisionByZero, "division by zero in \"" + s + "\"");
                r = r.scale(c.inv());
            } else {
                return r;
            }
        }
    }

    MultiPoly factor() {
        bool neg = false;
        while (true) {
            if (eat('-'))
                neg = !neg;
            else if (eat('+'))
                ;
            else
                break;
        }
        MultiPoly a = atom();
        skip_ws();
        if (eat('^')) {
            bool eneg = eat('-');
            long e = integer();
            if (eneg) {
                if (!a.is_constant()) error("negative exponent on a non-constant base");
                Scalar c = a.constant_value();
                if (c.is_zero()) fail(Err::DivisionByZero, "zero base with negative exponent");
                a = MultiPoly::constant(a.ring(), c.pow(-e));
            } else {
                a = a.pow(static_cast<unsigned long>(e));
            }
        }
        return neg ? -a : a;
    }

    long integer() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) error("expected integer");
        try {
            return std::stol(s.substr(start, pos - start));
        } catch (const std::exception&) {
            error("exponent out of range");
        }
    }

    MultiPoly atom() {
        skip_ws();
        if (pos >= s.size()) error("unexpected end of input");
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            Rat q(Int(s.substr(start, pos - start)));
            return MultiPoly::from_rat(ring, q);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos;
            while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                ++pos;
            std::string name = s.substr(start, pos - start);
            if (auto idx = ring.var_index(name)) return MultiPoly::variable(ring, *idx);
            const FieldSpec& f = ring.field();
            if (f.kind() == FieldKind::Cyclotomic && name == "zeta")
                return MultiPoly::constant(ring, Scalar::zeta(f));
            if (f.kind() == FieldKind::RationalFunctions && name == f.param())
                return MultiPoly::constant(ring, Scalar::param(f));
            error("unknown identifier \"" + name + "\"");
        }
        if (c == '(') {
            ++pos;
            MultiPoly r = expr();
            if (!eat(')')) error("expected ')'");
            return r;
        }
        error(std::string("unexpected character '") + c + "'");
    }
};

} // namespace

MultiPoly parse_poly(const std::string& text, const PolyRing& ring) {
    Parser p(text, ring);
    return p.parse();
}

Scalar parse_scalar(const std::string& text, const FieldSpec& field) {
    PolyRing scalar_ring(field, {});
    MultiPoly p = parse_poly(text, scalar_ring);
    return p.constant_value();
}

} // namespace polyaut

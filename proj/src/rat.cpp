#include "polyaut/rat.hpp"

namespace polyaut {

Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    if (base == 0) {
        if (e < 0) fail(Err::DivisionByZero, "0 raised to a negative power");
        return Rat(0);
    }
    Rat b = base;
    unsigned long k;
    if (e < 0) {
        b = 1 / b;
        k = static_cast<unsigned long>(-(e + 1)) + 1;
    } else {
        k = static_cast<unsigned long>(e);
    }
    Rat r(1);
    while (k) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

bool int_perfect_root(Int& out, const Int& n, unsigned long r) {
    if (r == 0) return false;
    if (n < 0 && r % 2 == 0) return false;
    mpz_class root;
    int exact = mpz_root(root.get_mpz_t(), n.get_mpz_t(), r);
    if (!exact) return false;
    out = root;
    return true;
}

bool rat_perfect_root(Rat& out, const Rat& q, unsigned long r) {
    Int rn, rd;
    if (!int_perfect_root(rn, Int(q.get_num()), r)) return false;
    if (!int_perfect_root(rd, Int(q.get_den()), r)) return false;
    out = Rat(rn, rd);
    out.canonicalize();
    return true;
}

} // namespace polyaut

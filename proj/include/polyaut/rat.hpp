#ifndef POLYAUT_RAT_HPP
#define POLYAUT_RAT_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "polyaut/errors.hpp"

namespace polyaut {

// Exact rational numbers. GMP's mpq_class is already canonical (reduced
// fraction, positive denominator), which is exactly the representation
// invariant Scalar needs.
using Rat = mpq_class;
using Int = mpz_class;

inline bool rat_is_integer(const Rat& q) {
    return mpz_cmp_ui(q.get_den_mpz_t(), 1) == 0;
}

// mpq_class(p, q) does not reduce; every fraction built from a numerator and
// denominator must go through here to keep the canonical-form invariant.
inline Rat make_rat(long num, long den) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

Rat rat_pow(const Rat& base, long e);

// acc += a*b with an all-integer fast path (the common case in iterates).
inline void rat_addmul(Rat& acc, const Rat& a, const Rat& b) {
    if (mpz_cmp_ui(a.get_den_mpz_t(), 1) == 0 && mpz_cmp_ui(b.get_den_mpz_t(), 1) == 0 &&
        mpz_cmp_ui(acc.get_den_mpz_t(), 1) == 0) {
        mpz_addmul(acc.get_num_mpz_t(), a.get_num_mpz_t(), b.get_num_mpz_t());
    } else {
        acc += a * b;
    }
}

// Exact integer r-th root: returns true and sets out when n = out^r.
bool int_perfect_root(Int& out, const Int& n, unsigned long r);

// Exact rational r-th root (sign-aware): empty-result reported via bool.
bool rat_perfect_root(Rat& out, const Rat& q, unsigned long r);

inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

} // namespace polyaut

#endif

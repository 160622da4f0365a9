#include "polyaut/upoly.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace polyaut {
namespace up {

void normalize(UPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

UPoly from_rat(const Rat& c) {
    if (c == 0) return {};
    return {c};
}

UPoly monomial(const Rat& c, std::size_t k) {
    if (c == 0) return {};
    UPoly p(k + 1, Rat(0));
    p[k] = c;
    return p;
}

UPoly add(const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()), Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    normalize(r);
    return r;
}

UPoly sub(const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()), Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    normalize(r);
    return r;
}

UPoly neg(const UPoly& a) {
    UPoly r = a;
    for (auto& c : r) c = -c;
    return r;
}

UPoly mul(const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) rat_addmul(r[i + j], a[i], b[j]);
    }
    normalize(r);
    return r;
}

UPoly mul_rat(const UPoly& a, const Rat& c) {
    if (c == 0) return {};
    UPoly r = a;
    for (auto& x : r) x *= c;
    return r;
}

UPoly pow(const UPoly& a, unsigned long e) {
    UPoly r = from_rat(Rat(1));
    UPoly b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        e >>= 1;
        if (e) b = mul(b, b);
    }
    return r;
}

UPoly divrem(UPoly& rem, const UPoly& a, const UPoly& b) {
    if (b.empty()) fail(Err::DivisionByZero, "univariate division by zero");
    UPoly q;
    rem = a;
    long db = deg(b);
    while (deg(rem) >= db) {
        long shift = deg(rem) - db;
        Rat c = rem.back() / b.back();
        if (static_cast<long>(q.size()) < shift + 1) q.resize(shift + 1, Rat(0));
        q[shift] += c;
        for (long i = 0; i <= db; ++i) rem[i + shift] -= c * b[i];
        normalize(rem);
    }
    normalize(q);
    return q;
}

UPoly monic(const UPoly& p) {
    if (p.empty()) return p;
    return mul_rat(p, 1 / lc(p));
}

namespace {

using ZPoly = std::vector<Int>;

// Clear denominators and divide by integer content; sign normalized so the
// leading coefficient is positive.
ZPoly primitive_z(const UPoly& p) {
    Int l(1);
    for (const auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    ZPoly z(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        Rat s = p[i] * Rat(l);
        z[i] = s.get_num();
    }
    Int g(0);
    for (const auto& c : z) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g != 0) {
        if (z.back() < 0) g = -g;
        for (auto& c : z) c /= g;
    }
    return z;
}

void z_normalize(ZPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Pseudo-remainder of a by b (lc(b)^(da-db+1) * a mod b), then primitive part.
ZPoly z_prem_primitive(const ZPoly& a, const ZPoly& b) {
    ZPoly r = a;
    long db = static_cast<long>(b.size()) - 1;
    const Int& lb = b.back();
    while (static_cast<long>(r.size()) - 1 >= db && !r.empty()) {
        long shift = static_cast<long>(r.size()) - 1 - db;
        Int lr = r.back();
        for (auto& c : r) c *= lb;
        for (long i = 0; i <= db; ++i) r[i + shift] -= lr * b[i];
        z_normalize(r);
    }
    // primitive part
    Int g(0);
    for (const auto& c : r) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g != 0) {
        if (r.back() < 0) g = -g;
        for (auto& c : r) c /= g;
    }
    return r;
}

} // namespace

UPoly gcd(const UPoly& a, const UPoly& b) {
    if (a.empty()) return monic(b);
    if (b.empty()) return monic(a);
    ZPoly x = primitive_z(a), y = primitive_z(b);
    if (x.size() < y.size()) std::swap(x, y);
    while (!y.empty()) {
        ZPoly r = z_prem_primitive(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    UPoly g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = Rat(x[i]);
    return monic(g);
}

UPoly ext_gcd(const UPoly& a, const UPoly& b, UPoly& s, UPoly& t) {
    // Classical extended Euclid over Q; inputs here are small (cyclotomic
    // inverses), so coefficient growth is acceptable.
    UPoly r0 = a, r1 = b;
    UPoly s0 = from_rat(Rat(1)), s1;
    UPoly t0, t1 = from_rat(Rat(1));
    while (!r1.empty()) {
        UPoly rem;
        UPoly q = divrem(rem, r0, r1);
        r0 = std::move(r1);
        r1 = std::move(rem);
        UPoly s2 = sub(s0, mul(q, s1));
        s0 = std::move(s1);
        s1 = std::move(s2);
        UPoly t2 = sub(t0, mul(q, t1));
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.empty()) {
        s = s0;
        t = t0;
        return r0;
    }
    Rat l = lc(r0);
    s = mul_rat(s0, 1 / l);
    t = mul_rat(t0, 1 / l);
    return mul_rat(r0, 1 / l);
}

Rat eval(const UPoly& p, const Rat& x) {
    Rat r(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
    return r;
}

unsigned long euler_phi(unsigned long m) {
    unsigned long result = m, n = m;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

namespace {

// Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d
const UPoly& cyclotomic_locked(unsigned long m, std::map<unsigned long, UPoly>& cache) {
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    UPoly num(m + 1, Rat(0));
    num[0] = Rat(-1);
    num[m] = Rat(1);
    for (unsigned long d = 1; d < m; ++d) {
        if (m % d != 0) continue;
        const UPoly& phi_d = cyclotomic_locked(d, cache);
        UPoly rem;
        num = divrem(rem, num, phi_d);
        if (!rem.empty()) fail(Err::InternalError, "cyclotomic division not exact");
    }
    auto [jt, ok] = cache.emplace(m, std::move(num));
    (void)ok;
    return jt->second;
}

} // namespace

const UPoly& cyclotomic(unsigned long m) {
    static std::map<unsigned long, UPoly> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    return cyclotomic_locked(m, cache);
}

std::string to_string(const UPoly& p, const std::string& var) {
    if (p.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long i = deg(p); i >= 0; --i) {
        const Rat& c = p[i];
        if (c == 0) continue;
        Rat a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
            first = false;
        } else {
            os << (a < 0 ? "-" : "+");
            if (a < 0) a = -a;
        }
        if (i == 0) {
            os << a.get_str();
        } else {
            if (a != 1) os << a.get_str() << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

} // namespace up
} // namespace polyaut

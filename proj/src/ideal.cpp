#include "polyaut/ideal.hpp"

#include <algorithm>

#include "polyaut/budget.hpp"

namespace polyaut {

Ideal::Ideal(PolyRing r, std::vector<MultiPoly> g) : ring(std::move(r)) {
    for (auto& f : g) {
        if (f.ring() != ring) fail(Err::RingMismatch, "ideal generator in wrong ring");
        if (!f.is_zero()) gens.push_back(std::move(f));
    }
}

bool GroebnerBasis::is_unit_ideal() const {
    return basis_.size() == 1 && basis_[0].is_constant() && !basis_[0].is_zero();
}

namespace {

void check_gb_terms(const MultiPoly& f) {
    if (f.terms().size() > current_budget().max_gb_terms)
        fail(Err::BudgetExceeded, "Groebner term budget exceeded");
}

// one division step against the first basis element whose lead divides the
// lead of work; returns false when no such element exists
bool top_reduce_step(MultiPoly& work, const std::vector<MultiPoly>& basis) {
    const auto& [lm, lc] = work.leading_term();
    for (const auto& g : basis) {
        const auto& [gm, gc] = g.leading_term();
        if (!mono_divides(gm, lm)) continue;
        work = work - g.mul_term(mono_div(lm, gm), lc * gc.inv());
        check_gb_terms(work);
        return true;
    }
    return false;
}

MultiPoly normal_form(MultiPoly f, const std::vector<MultiPoly>& basis) {
    MultiPoly rest = MultiPoly::zero(f.ring());
    while (!f.is_zero()) {
        if (!top_reduce_step(f, basis)) {
            // move the irreducible leading term out of the way
            const auto& [lm, lc] = f.leading_term();
            rest = rest + MultiPoly::monomial(f.ring(), lm, lc);
            f = f - MultiPoly::monomial(f.ring(), lm, lc);
        }
    }
    return rest;
}

MultiPoly s_poly(const MultiPoly& f, const MultiPoly& g) {
    const auto& [fm, fc] = f.leading_term();
    const auto& [gm, gc] = g.leading_term();
    Mono l = mono_lcm(fm, gm);
    return f.mul_term(mono_div(l, fm), fc.inv()) - g.mul_term(mono_div(l, gm), gc.inv());
}

struct Pair {
    std::size_t i, j;
    Mono lcm;
    Exp lcm_deg;
};

} // namespace

GroebnerBasis buchberger(const Ideal& ideal, MonOrder order) {
    PolyRing ring = ideal.ring.with_order(order);
    std::vector<MultiPoly> basis;
    for (const auto& g : ideal.gens) {
        MultiPoly h = coerce(g, ring);
        if (!h.is_zero()) basis.push_back(h.monic());
    }

    std::vector<Pair> pairs;
    auto push_pairs = [&](std::size_t j) {
        for (std::size_t i = 0; i < j; ++i) {
            const Mono& a = basis[i].leading_term().first;
            const Mono& b = basis[j].leading_term().first;
            // Buchberger's first criterion: coprime leads reduce to zero
            bool coprime = true;
            for (std::size_t v = 0; v < a.size(); ++v)
                if (a[v] > 0 && b[v] > 0) {
                    coprime = false;
                    break;
                }
            if (coprime) continue;
            Mono l = mono_lcm(a, b);
            Exp d = mono_total_degree(l);
            pairs.push_back({i, j, std::move(l), d});
        }
    };
    for (std::size_t j = 0; j < basis.size(); ++j) push_pairs(j);

    std::size_t processed = 0;
    while (!pairs.empty()) {
        if (++processed > current_budget().max_pairs)
            fail(Err::BudgetExceeded, "Groebner pair budget exceeded");
        // normal strategy: minimal lcm degree, ties by (i, j)
        std::size_t best = 0;
        for (std::size_t k = 1; k < pairs.size(); ++k) {
            const Pair &a = pairs[k], &b = pairs[best];
            if (a.lcm_deg < b.lcm_deg ||
                (a.lcm_deg == b.lcm_deg && (a.i < b.i || (a.i == b.i && a.j < b.j))))
                best = k;
        }
        Pair p = std::move(pairs[best]);
        pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(best));

        MultiPoly s = normal_form(s_poly(basis[p.i], basis[p.j]), basis);
        if (s.is_zero()) continue;
        basis.push_back(s.monic());
        push_pairs(basis.size() - 1);
    }

    // minimalize: drop elements whose lead is divisible by another lead
    std::vector<MultiPoly> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (i == j) continue;
            const Mono& mi = basis[i].leading_term().first;
            const Mono& mj = basis[j].leading_term().first;
            if (mono_divides(mj, mi) && !(mi == mj && j > i)) {
                redundant = true;
                break;
            }
        }
        if (!redundant) minimal.push_back(basis[i]);
    }
    // inter-reduce to the unique reduced basis
    std::vector<MultiPoly> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<MultiPoly> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        MultiPoly r = normal_form(minimal[i], others);
        if (!r.is_zero()) reduced.push_back(r.monic());
    }
    std::sort(reduced.begin(), reduced.end(), [&](const MultiPoly& a, const MultiPoly& b) {
        return mono_cmp(a.leading_term().first, b.leading_term().first, order) > 0;
    });
    return GroebnerBasis(ring, std::move(reduced));
}

MultiPoly reduce(const MultiPoly& f, const GroebnerBasis& g) {
    MultiPoly h = coerce(f, g.ring());
    return normal_form(std::move(h), g.basis());
}

Ideal fixpoint_ideal(const PolyMap& F) {
    std::vector<MultiPoly> gens;
    for (std::size_t i = 0; i < F.ring().nvars(); ++i)
        gens.push_back(F.coords()[i] - MultiPoly::variable(F.ring(), i));
    return Ideal(F.ring(), std::move(gens));
}

bool radical_member(const MultiPoly& f, const Ideal& ideal) {
    if (f.ring() != ideal.ring) fail(Err::RingMismatch, "radical_member: ring mismatch");
    if (f.is_zero()) return true;
    if (ideal.gens.empty()) return false; // sqrt(0) = 0 in a domain

    std::string w = "w";
    unsigned n = 0;
    while (ideal.ring.var_index(w) ||
           (ideal.ring.field().kind() == FieldKind::RationalFunctions &&
            w == ideal.ring.field().param()))
        w = "w" + std::to_string(n++);
    PolyRing ext = ideal.ring.extended({w});
    std::vector<MultiPoly> gens;
    for (const auto& g : ideal.gens) gens.push_back(coerce(g, ext));
    std::size_t widx = ext.nvars() - 1;
    gens.push_back(MultiPoly::one(ext) -
                   MultiPoly::variable(ext, widx) * coerce(f, ext));
    GroebnerBasis gb = buchberger(Ideal(ext, std::move(gens)), MonOrder::Lex);
    return gb.is_unit_ideal();
}

bool unique_fixpoint(const PolyMap& F, const std::vector<Scalar>& p) {
    if (p.size() != F.ring().nvars()) fail(Err::ArityMismatch, "unique_fixpoint: point arity");
    Ideal I = fixpoint_ideal(F);
    for (const auto& g : I.gens)
        if (!evaluate(g, p).is_zero()) return false;
    for (std::size_t i = 0; i < F.ring().nvars(); ++i) {
        MultiPoly xi = MultiPoly::variable(F.ring(), i) -
                       MultiPoly::constant(F.ring(), p[i]);
        if (!radical_member(xi, I)) return false;
    }
    return true;
}

bool ideal_equal(const Ideal& a, const Ideal& b) {
    if (a.ring != b.ring) fail(Err::RingMismatch, "ideal_equal: ring mismatch");
    GroebnerBasis ga = buchberger(a, MonOrder::Lex);
    GroebnerBasis gb = buchberger(b, MonOrder::Lex);
    for (const auto& f : a.gens)
        if (!reduce(f, gb).is_zero()) return false;
    for (const auto& f : b.gens)
        if (!reduce(f, ga).is_zero()) return false;
    return true;
}

} // namespace polyaut

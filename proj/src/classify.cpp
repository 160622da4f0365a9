#include "polyaut/classify.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include "polyaut/budget.hpp"

namespace polyaut {

namespace {

std::uint64_t field_op_weight(const FieldSpec& f) {
    switch (f.kind()) {
        case FieldKind::Rationals: return 1;
        case FieldKind::Cyclotomic: return 20;
        case FieldKind::RationalFunctions: return 200;
    }
    return 1;
}

// monomials of total degree <= D, ascending by (degree, ring order)
std::vector<Mono> graded_monomials(const PolyRing& ring, unsigned D) {
    std::vector<Mono> out;
    Mono m(ring.nvars(), 0);
    // iterate all exponent tuples with sum <= D
    std::size_t n = ring.nvars();
    if (n == 0) {
        out.push_back(m);
        return out;
    }
    while (true) {
        out.push_back(m);
        std::size_t v = n;
        while (v-- > 0) {
            ++m[v];
            if (mono_total_degree(m) <= static_cast<Exp>(D)) break;
            m[v] = 0;
            if (v == 0) {
                std::sort(out.begin(), out.end(), [&](const Mono& x, const Mono& y) {
                    Exp dx = mono_total_degree(x), dy = mono_total_degree(y);
                    if (dx != dy) return dx < dy;
                    return mono_cmp(x, y, ring.order()) < 0;
                });
                return out;
            }
        }
    }
}

struct LinearSystem {
    // rows keyed by contiguous index; entries (column, coefficient)
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> rows;
};

// Rank/kernel data of the invariant system: pivot rows in reduced echelon
// form over the columns (monomials of degree <= D).
struct Echelon {
    FieldSpec field;
    std::size_t ncols;
    std::map<std::size_t, std::vector<Scalar>> pivots; // col -> dense row
    std::uint64_t ops = 0;
    std::uint64_t weight;

    Echelon(FieldSpec f, std::size_t k) : field(std::move(f)), ncols(k), weight(field_op_weight(field)) {}

    void charge(std::size_t nops) {
        ops += nops * weight;
        if (ops > current_budget().max_elim_ops)
            fail(Err::BudgetExceeded, "elimination budget exceeded in invariant search");
    }

    void insert_row(std::vector<Scalar> row) {
        // eliminate against existing pivots
        for (auto& [c, prow] : pivots) {
            if (row[c].is_zero()) continue;
            Scalar f = row[c];
            charge(ncols);
            for (std::size_t j = c; j < ncols; ++j)
                if (!prow[j].is_zero()) row[j] = row[j] - f * prow[j];
        }
        std::size_t lead = ncols;
        for (std::size_t j = 0; j < ncols; ++j)
            if (!row[j].is_zero()) {
                lead = j;
                break;
            }
        if (lead == ncols) return; // dependent row
        Scalar inv = row[lead].inv();
        charge(ncols);
        for (std::size_t j = lead; j < ncols; ++j)
            if (!row[j].is_zero()) row[j] = row[j] * inv;
        // back-eliminate the new pivot column from existing pivot rows
        for (auto& [c, prow] : pivots) {
            if (prow[lead].is_zero()) continue;
            Scalar f = prow[lead];
            charge(ncols);
            for (std::size_t j = lead; j < ncols; ++j)
                if (!row[j].is_zero()) prow[j] = prow[j] - f * row[j];
        }
        pivots.emplace(lead, std::move(row));
    }

    // reduced-echelon kernel basis, free columns ascending
    std::vector<std::vector<Scalar>> kernel() const {
        std::vector<std::vector<Scalar>> out;
        for (std::size_t c = 0; c < ncols; ++c) {
            if (pivots.count(c)) continue;
            std::vector<Scalar> v(ncols, Scalar::zero(field));
            v[c] = Scalar::one(field);
            for (const auto& [pc, prow] : pivots)
                if (!prow[c].is_zero()) v[pc] = prow[c].neg();
            out.push_back(std::move(v));
        }
        return out;
    }
};

// Builds the linear system of F-invariance on polynomials of degree <= D and
// returns its kernel as coefficient vectors over the graded monomial list.
std::vector<std::vector<Scalar>> invariant_kernel(const PolyMap& F, unsigned D,
                                                  const std::vector<Mono>& cols) {
    const PolyRing& ring = F.ring();
    const FieldSpec& field = ring.field();
    std::map<Mono, std::size_t> col_index;
    for (std::size_t c = 0; c < cols.size(); ++c) col_index.emplace(cols[c], c);

    // transpose scatter: rows keyed by target monomial
    std::map<Mono, std::vector<std::pair<std::size_t, Scalar>>> rows;
    {
        // images per degree layer; a layer is dropped once its children exist
        std::map<Mono, MultiPoly> prev_layer, cur_layer;
        prev_layer.emplace(Mono(ring.nvars(), 0), MultiPoly::one(ring));
        unsigned layer_deg = 0;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const Mono& m = cols[c];
            unsigned d = static_cast<unsigned>(mono_total_degree(m));
            if (d > layer_deg) {
                if (d != layer_deg + 1) fail(Err::InternalError, "monomial grading gap");
                prev_layer = std::move(cur_layer);
                cur_layer.clear();
                layer_deg = d;
            }
            MultiPoly img = MultiPoly::one(ring);
            if (d > 0) {
                std::size_t v = 0;
                while (m[v] == 0) ++v;
                Mono parent = m;
                parent[v] -= 1;
                auto it = prev_layer.find(parent);
                if (it == prev_layer.end()) fail(Err::InternalError, "missing parent image");
                img = it->second * F.coords()[v];
            }
            // scatter img - m into the rows
            for (const auto& [mu, coeff] : img.terms()) rows[mu].emplace_back(c, coeff);
            rows[m].emplace_back(c, Scalar::zero(field) - Scalar::one(field));
            if (d < D) cur_layer.emplace(m, std::move(img));
        }
    }

    // consolidate duplicate column entries within a row and drop zero rows
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> packed;
    packed.reserve(rows.size());
    for (auto& [mu, entries] : rows) {
        std::sort(entries.begin(), entries.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::pair<std::size_t, Scalar>> row;
        for (auto& e : entries) {
            if (!row.empty() && row.back().first == e.first)
                row.back().second = row.back().second + e.second;
            else
                row.push_back(e);
        }
        std::erase_if(row, [](const auto& e) { return e.second.is_zero(); });
        if (!row.empty()) packed.push_back(std::move(row));
    }
    // sparsest rows first keeps the pivot rows thin
    std::stable_sort(packed.begin(), packed.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });

    Echelon ech(field, cols.size());
    for (const auto& sparse : packed) {
        std::vector<Scalar> row(cols.size(), Scalar::zero(field));
        for (const auto& [c, v] : sparse) row[c] = v;
        ech.insert_row(std::move(row));
    }
    return ech.kernel();
}

// coefficient-wise specialization x -> x0 of a Q(x) map; fails with
// DivisionByZero when a coefficient has a pole at x0
PolyMap specialize_map_at(const PolyMap& F, const Rat& x0) {
    FieldSpec q = FieldSpec::rationals();
    PolyRing target(q, F.ring().vars(), F.ring().order());
    std::vector<MultiPoly> coords;
    for (const auto& c : F.coords()) {
        std::vector<MultiPoly::Term> terms;
        for (const auto& [m, s] : c.terms()) {
            const FuncVal& v = s.func();
            Rat den = up::eval(v.den, x0);
            if (den == 0) fail(Err::DivisionByZero, "pole at specialization point");
            terms.emplace_back(m, Scalar::from_rat(q, up::eval(v.num, x0) / den));
        }
        coords.push_back(MultiPoly::from_terms(target, std::move(terms)));
    }
    return PolyMap(target, std::move(coords));
}

} // namespace

std::vector<MultiPoly> invariant_basis(const PolyMap& F, unsigned D) {
    const PolyRing& ring = F.ring();
    std::vector<Mono> cols = graded_monomials(ring, D);

    if (ring.field().kind() == FieldKind::RationalFunctions) {
        // Rank certificate at a rational specialization: specialization can
        // only enlarge the kernel, so a one-dimensional specialized kernel
        // proves there are no nonconstant invariants over Q(x).
        for (long probe : {2L, 3L, 5L, 7L, 11L}) {
            try {
                PolyMap F0 = specialize_map_at(F, Rat(probe));
                std::vector<Mono> cols0 = graded_monomials(F0.ring(), D);
                auto ker0 = invariant_kernel(F0, D, cols0);
                if (ker0.size() == 1) return {MultiPoly::one(ring)};
                break; // nontrivial specialized kernel: fall through to exact
            } catch (const AlgebraError& e) {
                if (e.code() != Err::DivisionByZero) throw;
                // pole at this probe; try the next one
            }
        }
    }

    auto ker = invariant_kernel(F, D, cols);
    std::vector<MultiPoly> basis;
    basis.reserve(ker.size());
    for (const auto& v : ker) {
        std::vector<MultiPoly::Term> terms;
        for (std::size_t c = 0; c < cols.size(); ++c)
            if (!v[c].is_zero()) terms.emplace_back(cols[c], v[c]);
        MultiPoly f = MultiPoly::from_terms(ring, std::move(terms));
        if (!(F.pullback(f) == f))
            fail(Err::InternalError, "invariant candidate fails the invariance check");
        basis.push_back(std::move(f));
    }
    return basis;
}

std::vector<std::pair<long, long>> diag_invariant_monomials(long n, long m, const Scalar& a,
                                                            const Scalar& b, long bound) {
    if (n == 0 && m == 0) fail(Err::InvalidFormParameters, "(n, m) must not be (0, 0)");
    if (a.is_zero() || b.is_zero()) fail(Err::InvalidFormParameters, "a and b must be nonzero");
    if (a.root_of_unity_order())
        fail(Err::InvalidFormParameters, "a must not be a root of unity");
    auto ob = b.root_of_unity_order();
    if (!ob) fail(Err::InvalidFormParameters, "b must be a root of unity");
    long ord_b = static_cast<long>(*ob);
    std::vector<std::pair<long, long>> out;
    for (long p = -bound; p <= bound; ++p)
        for (long q = -bound; q <= bound; ++q) {
            if (p == 0 && q == 0) continue;
            if (n * p + m * q != 0) continue;
            if (q % ord_b != 0) continue;
            out.emplace_back(p, q);
        }
    return out;
}

namespace {

// first coordinate c * x^(e_i) with a single term?
std::optional<Scalar> linear_monomial_coeff(const MultiPoly& f, std::size_t var) {
    if (f.terms().size() != 1) return std::nullopt;
    const auto& [m, c] = f.terms()[0];
    for (std::size_t v = 0; v < m.size(); ++v)
        if (m[v] != (v == var ? 1 : 0)) return std::nullopt;
    return c;
}

} // namespace

std::optional<NormalForm> recognize_normal_form(const PolyMap& F) {
    if (F.ring().nvars() != 2) fail(Err::InvalidInput, "normal forms are for plane maps");
    const FieldSpec& field = F.ring().field();

    auto s1 = linear_monomial_coeff(F.coords()[0], 0);
    auto s2 = linear_monomial_coeff(F.coords()[1], 1);

    // Phi1: (a^n x, a^m b y), a of infinite order, b torsion
    if (s1 && s2 && !s1->is_zero() && !s2->is_zero()) {
        auto match_phi1 = [&]() -> std::optional<NormalFormPhi1> {
            // s1 = a^n for n in 1..8 via root extraction; smallest n wins
            for (long n = 1; n <= 8; ++n) {
                auto a = s1->nth_root(static_cast<unsigned long>(n));
                if (!a) continue;
                if (a->root_of_unity_order()) continue;
                for (long mm = 0; mm <= 64; ++mm) {
                    for (long sgn : {1L, -1L}) {
                        long m = mm * sgn;
                        Scalar t = *s2 * a->pow(-m);
                        if (t.root_of_unity_order()) return NormalFormPhi1{n, m, *a, t};
                        if (mm == 0) break;
                    }
                }
            }
            return std::nullopt;
        };
        if (!s1->root_of_unity_order()) {
            if (auto f1 = match_phi1()) return NormalForm(*f1);
        } else if (s1->is_one() && !s2->root_of_unity_order()) {
            // (x, a y): n = 0, m = 1
            return NormalForm(NormalFormPhi1{0, 1, *s2, Scalar::one(field)});
        }
    }

    // Phi2: (a x, b y + P(x)) with a, b torsion and P != 0
    if (s1 && s1->root_of_unity_order()) {
        const MultiPoly& f2 = F.coords()[1];
        Scalar b = Scalar::zero(field);
        std::vector<MultiPoly::Term> pterms;
        bool shape_ok = true;
        for (const auto& [m, c] : f2.terms()) {
            if (m[1] == 1 && m[0] == 0) {
                b = c;
            } else if (m[1] == 0) {
                pterms.emplace_back(m, c);
            } else {
                shape_ok = false;
                break;
            }
        }
        if (shape_ok && !b.is_zero() && b.root_of_unity_order() && !pterms.empty()) {
            MultiPoly p = MultiPoly::from_terms(F.ring(), std::move(pterms));
            return NormalForm(NormalFormPhi2{*s1, b, std::move(p)});
        }
    }
    return std::nullopt;
}

bool witness_invariant(const RationalWitness& w, const PolyMap& F) {
    // (num/den) o F = num/den  <=>  num(F) * den = den(F) * num
    MultiPoly ln = F.pullback(w.num) * w.den;
    MultiPoly rn = F.pullback(w.den) * w.num;
    return ln == rn;
}

std::optional<std::vector<Scalar>> find_rational_fixpoint(const PolyMap& F) {
    Ideal I = fixpoint_ideal(F);
    if (I.gens.empty()) return std::nullopt; // identity map: everything fixed
    const PolyRing& ring = F.ring();
    std::vector<Scalar> p;
    for (std::size_t i = 0; i < ring.nvars(); ++i) {
        // lex order with x_i last exposes the eliminant in k[x_i]
        std::vector<std::string> names;
        for (std::size_t j = 0; j < ring.nvars(); ++j)
            if (j != i) names.push_back(ring.vars()[j]);
        names.push_back(ring.vars()[i]);
        PolyRing reordered = ring.with_vars(names);
        std::vector<MultiPoly> gens;
        for (const auto& g : I.gens) gens.push_back(coerce(g, reordered));
        GroebnerBasis gb = buchberger(Ideal(reordered, std::move(gens)), MonOrder::Lex);
        std::size_t last = reordered.nvars() - 1;
        std::optional<MultiPoly> eliminant;
        for (const auto& g : gb.basis()) {
            bool univar = true;
            for (const auto& [m, c] : g.terms())
                for (std::size_t v = 0; v + 1 < reordered.nvars(); ++v)
                    if (m[v] > 0) univar = false;
            if (univar && (!eliminant || g.total_degree() < eliminant->total_degree()))
                eliminant = g;
        }
        if (!eliminant || eliminant->is_constant()) return std::nullopt;
        // the eliminant must be a perfect power of (x_i - p_i)
        long d = eliminant->total_degree();
        Scalar lead = Scalar::zero(ring.field());
        Scalar next = Scalar::zero(ring.field());
        for (const auto& [m, c] : eliminant->terms()) {
            if (m[last] == static_cast<Exp>(d)) lead = c;
            if (m[last] == static_cast<Exp>(d - 1)) next = c;
        }
        Scalar root = next.neg() / (lead * Scalar::from_rat(ring.field(), Rat(d)));
        MultiPoly lin = MultiPoly::variable(reordered, last) -
                        MultiPoly::constant(reordered, root);
        if (!(*eliminant == lin.pow(static_cast<unsigned long>(d)).scale(lead)))
            return std::nullopt;
        p.push_back(root);
    }
    // sanity: p really is fixed
    auto img = F.apply_point(p);
    for (std::size_t i = 0; i < p.size(); ++i)
        if (!(img[i] == p[i])) return std::nullopt;
    return p;
}

ClassificationReport classify_plane(const PolyMap& F, const ClassifyOptions& opts) {
    if (F.ring().nvars() != 2) fail(Err::InvalidInput, "classify_plane needs a 2-variable ring");
    ClassificationReport rep;
    Evidence& ev = rep.evidence;
    ev.order_bound = opts.order_bound;
    ev.invariant_degree_bound = opts.invariant_degree_bound;
    ev.map_is_identity = F.is_identity();

    // (1) finite order. A finite-order map has nowhere to grow, so the
    // search runs under a small engine budget: iterates of infinite-order
    // maps with expensive coefficient fields abort in bounded time.
    try {
        Budget ob = current_budget();
        ob.max_terms = std::min<std::size_t>(ob.max_terms, 20000);
        ob.max_engine_ops = 2000000;
        BudgetScope scope(ob);
        PolyMap base(F.ring(), F.coords());
        PolyMap P = base;
        unsigned long d = 1;
        for (;; ++d) {
            if (P.is_identity()) {
                ev.order_status = Evidence::OrderStatus::Found;
                ev.order_found = d;
                break;
            }
            ev.order_checked_up_to = d;
            if (d >= opts.order_bound) {
                ev.order_status = Evidence::OrderStatus::NoneUpToBound;
                break;
            }
            P = compose(P, base);
        }
    } catch (const AlgebraError& e) {
        if (e.code() != Err::BudgetExceeded) throw;
        ev.order_status = Evidence::OrderStatus::BudgetStopped;
        ev.trail.push_back("order check stopped by term budget after verifying F^d != Id for d <= " +
                           std::to_string(ev.order_checked_up_to));
    }
    if (ev.order_status == Evidence::OrderStatus::Found) {
        rep.verdict = ClassificationReport::Verdict::NEquals;
        rep.n = 2;
        ev.trail.push_back("finite order " + std::to_string(ev.order_found) +
                           " makes k(x,y)/k(x,y)^F a finite extension");
        return rep;
    }
    ev.trail.push_back(ev.order_status == Evidence::OrderStatus::NoneUpToBound
                           ? "no order up to bound " + std::to_string(opts.order_bound)
                           : "order undecided (budget)");

    // (2) normal form / invariant witness
    rep.matched_form = recognize_normal_form(F);
    if (rep.matched_form) ev.trail.push_back("coordinates match a normal form literally");
    try {
        auto basis = invariant_basis(F, opts.invariant_degree_bound);
        ev.invariant_search_completed = true;
        for (auto& f : basis) {
            if (f.is_constant()) continue;
            ev.invariant_found = true;
            rep.witnesses.push_back(RationalWitness{f, MultiPoly::one(F.ring())});
        }
    } catch (const AlgebraError& e) {
        if (e.code() != Err::BudgetExceeded) throw;
        ev.trail.push_back("invariant search stopped by elimination budget");
    }
    if (!ev.invariant_found && rep.matched_form) {
        // construct a witness from the matched form data
        if (const auto* p1 = std::get_if<NormalFormPhi1>(&*rep.matched_form)) {
            // the minimal lattice point is (m/g, -n/g) scaled into ord(b) | q
            long ord_b = static_cast<long>(*p1->b.root_of_unity_order());
            long bound = std::max({std::labs(p1->n), std::labs(p1->m), 1L}) * ord_b;
            auto lattice = diag_invariant_monomials(p1->n, p1->m, p1->a, p1->b, bound);
            for (const auto& [p, q] : lattice) {
                if (p < 0) continue; // use the representative with p >= 0
                Mono nm(2, 0), dm(2, 0);
                (p >= 0 ? nm[0] : dm[0]) = static_cast<Exp>(p >= 0 ? p : -p);
                (q >= 0 ? nm[1] : dm[1]) = static_cast<Exp>(q >= 0 ? q : -q);
                RationalWitness w{
                    MultiPoly::monomial(F.ring(), nm, Scalar::one(F.ring().field())),
                    MultiPoly::monomial(F.ring(), dm, Scalar::one(F.ring().field()))};
                if (witness_invariant(w, F)) {
                    rep.witnesses.push_back(std::move(w));
                    ev.invariant_found = true;
                    break;
                }
            }
        } else if (const auto* p2 = std::get_if<NormalFormPhi2>(&*rep.matched_form)) {
            unsigned long orda = *p2->a.root_of_unity_order();
            Mono nm(2, 0);
            nm[0] = static_cast<Exp>(orda);
            RationalWitness w{MultiPoly::monomial(F.ring(), nm, Scalar::one(F.ring().field())),
                              MultiPoly::one(F.ring())};
            if (witness_invariant(w, F)) {
                rep.witnesses.push_back(std::move(w));
                ev.invariant_found = true;
            }
        }
    }
    if (ev.invariant_found) {
        rep.verdict = ClassificationReport::Verdict::NEquals;
        rep.n = 1;
        ev.trail.push_back(
            "nonconstant invariant rules out n=0; no finite order found rules out n=2 "
            "within the order bound");
        return rep;
    }

    // (3) unique fixpoint with unipotent differential (Cor. 3 route)
    try {
        auto p = find_rational_fixpoint(F);
        if (p) {
            ev.fixpoint = p;
            if (unique_fixpoint(F, *p)) {
                ev.fixpoint_unique = true;
                Matrix j = jacobian_at(F, *p);
                ev.differential_unipotent = is_unipotent(j);
                if (ev.differential_unipotent && !ev.map_is_identity) {
                    rep.verdict = ClassificationReport::Verdict::NEquals;
                    rep.n = 0;
                    ev.trail.push_back(
                        "unique fixpoint with unipotent non-identity differential");
                    return rep;
                }
            }
        } else {
            ev.trail.push_back("no rational candidate fixpoint with zero-dimensional locus");
        }
    } catch (const AlgebraError& e) {
        if (e.code() != Err::BudgetExceeded) throw;
        ev.trail.push_back("fixpoint analysis stopped by budget");
    }

    rep.verdict = ClassificationReport::Verdict::Inconclusive;
    rep.n = -1;
    ev.trail.push_back("no decision route fired");
    return rep;
}

} // namespace polyaut

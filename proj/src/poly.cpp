#include "polyaut/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

#include "polyaut/budget.hpp"

namespace polyaut {

PolyRing::PolyRing(FieldSpec field, std::vector<std::string> vars, MonOrder order) {
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i].empty()) fail(Err::InvalidInput, "empty variable name");
        for (std::size_t j = i + 1; j < vars.size(); ++j)
            if (vars[i] == vars[j]) fail(Err::InvalidInput, "duplicate variable " + vars[i]);
        if (field.kind() == FieldKind::RationalFunctions && vars[i] == field.param())
            fail(Err::InvalidInput, "variable name collides with field parameter " + vars[i]);
        if (field.kind() == FieldKind::Cyclotomic && vars[i] == "zeta")
            fail(Err::InvalidInput, "variable name collides with zeta");
    }
    d_ = std::make_shared<const PolyRingData>(std::move(field), std::move(vars), order);
}

std::optional<std::size_t> PolyRing::var_index(const std::string& name) const {
    for (std::size_t i = 0; i < d_->vars.size(); ++i)
        if (d_->vars[i] == name) return i;
    return std::nullopt;
}

PolyRing PolyRing::extended(const std::vector<std::string>& extra) const {
    std::vector<std::string> vars = d_->vars;
    vars.insert(vars.end(), extra.begin(), extra.end());
    return PolyRing(d_->field, std::move(vars), d_->order);
}

PolyRing PolyRing::with_order(MonOrder o) const { return PolyRing(d_->field, d_->vars, o); }

PolyRing PolyRing::with_vars(std::vector<std::string> vars) const {
    return PolyRing(d_->field, std::move(vars), d_->order);
}

bool PolyRing::operator==(const PolyRing& o) const {
    if (d_ == o.d_) return true;
    return d_->field == o.d_->field && d_->vars == o.d_->vars && d_->order == o.d_->order;
}

Exp mono_total_degree(const Mono& m) {
    Exp d = 0;
    for (Exp e : m) d += e;
    return d;
}

int mono_cmp(const Mono& a, const Mono& b, MonOrder order) {
    switch (order) {
        case MonOrder::Lex:
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
            }
            return 0;
        case MonOrder::DegRevLex: {
            Exp da = mono_total_degree(a), db = mono_total_degree(b);
            if (da != db) return da < db ? -1 : 1;
            // ties: smaller exponent on the *last* differing variable wins
            for (std::size_t i = a.size(); i-- > 0;) {
                if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
            }
            return 0;
        }
    }
    return 0;
}

bool mono_divides(const Mono& a, const Mono& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Mono mono_mul(const Mono& a, const Mono& b) {
    Mono r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = a[i] + b[i];
        if (r[i] < 0) fail(Err::InvalidInput, "exponent overflow");
    }
    return r;
}

Mono mono_div(const Mono& a, const Mono& b) {
    Mono r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = a[i] - b[i];
        if (r[i] < 0) fail(Err::InternalError, "monomial division not exact");
    }
    return r;
}

Mono mono_lcm(const Mono& a, const Mono& b) {
    Mono r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

MultiPoly::MultiPoly(PolyRing ring) : ring_(std::move(ring)) {}

MultiPoly MultiPoly::one(const PolyRing& ring) { return constant(ring, Scalar::one(ring.field())); }

MultiPoly MultiPoly::constant(const PolyRing& ring, const Scalar& c) {
    if (c.field() != ring.field())
        fail(Err::FieldMismatch, "constant scalar from " + c.field().describe() + " in ring over " +
                                     ring.field().describe());
    MultiPoly p(ring);
    if (!c.is_zero()) p.terms_.emplace_back(Mono(ring.nvars(), 0), c);
    return p;
}

MultiPoly MultiPoly::from_rat(const PolyRing& ring, const Rat& c) {
    return constant(ring, Scalar::from_rat(ring.field(), c));
}

MultiPoly MultiPoly::variable(const PolyRing& ring, std::size_t idx) {
    if (idx >= ring.nvars()) fail(Err::ArityMismatch, "variable index out of range");
    Mono m(ring.nvars(), 0);
    m[idx] = 1;
    return monomial(ring, std::move(m), Scalar::one(ring.field()));
}

MultiPoly MultiPoly::monomial(const PolyRing& ring, Mono m, Scalar c) {
    if (m.size() != ring.nvars()) fail(Err::ArityMismatch, "monomial arity mismatch");
    for (Exp e : m)
        if (e < 0) fail(Err::InvalidInput, "negative exponent");
    MultiPoly p(ring);
    if (!c.is_zero()) p.terms_.emplace_back(std::move(m), std::move(c));
    return p;
}

MultiPoly MultiPoly::from_terms(const PolyRing& ring, std::vector<Term> terms) {
    MonOrder ord = ring.order();
    std::sort(terms.begin(), terms.end(), [ord](const Term& a, const Term& b) {
        return mono_cmp(a.first, b.first, ord) > 0;
    });
    MultiPoly p(ring);
    for (auto& t : terms) {
        if (t.first.size() != ring.nvars()) fail(Err::ArityMismatch, "term arity mismatch");
        if (!p.terms_.empty() && p.terms_.back().first == t.first) {
            p.terms_.back().second = p.terms_.back().second + t.second;
        } else {
            p.terms_.emplace_back(std::move(t));
        }
    }
    std::erase_if(p.terms_, [](const Term& t) { return t.second.is_zero(); });
    return p;
}

Scalar MultiPoly::constant_value() const {
    if (is_zero()) return Scalar::zero(ring_.field());
    if (!is_constant()) fail(Err::InvalidInput, "polynomial is not constant");
    return terms_[0].second;
}

const MultiPoly::Term& MultiPoly::leading_term() const {
    if (is_zero()) fail(Err::InternalError, "leading term of zero");
    return terms_.front();
}

long MultiPoly::total_degree() const {
    long d = -1;
    for (const auto& t : terms_) d = std::max<long>(d, mono_total_degree(t.first));
    return d;
}

Exp MultiPoly::degree_in(std::size_t var) const {
    Exp d = 0;
    for (const auto& t : terms_) d = std::max(d, t.first[var]);
    return d;
}

Scalar MultiPoly::coeff(const Mono& m) const {
    for (const auto& t : terms_)
        if (t.first == m) return t.second;
    return Scalar::zero(ring_.field());
}

void require_same_ring(const MultiPoly& a, const MultiPoly& b, const char* where) {
    if (a.ring() != b.ring()) fail(Err::RingMismatch, std::string(where) + ": different rings");
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    require_same_ring(*this, o, "add");
    MultiPoly r(ring_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin(), b = o.terms_.begin();
    MonOrder ord = ring_.order();
    while (a != terms_.end() && b != o.terms_.end()) {
        int c = mono_cmp(a->first, b->first, ord);
        if (c > 0) {
            r.terms_.push_back(*a++);
        } else if (c < 0) {
            r.terms_.push_back(*b++);
        } else {
            Scalar s = a->second + b->second;
            if (!s.is_zero()) r.terms_.emplace_back(a->first, std::move(s));
            ++a;
            ++b;
        }
    }
    r.terms_.insert(r.terms_.end(), a, terms_.end());
    r.terms_.insert(r.terms_.end(), b, o.terms_.end());
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(ring_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.emplace_back(t.first, t.second.neg());
    return r;
}

MultiPoly MultiPoly::scale(const Scalar& c) const {
    if (c.is_zero()) return MultiPoly(ring_);
    MultiPoly r(ring_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.emplace_back(t.first, t.second * c);
    return r;
}

MultiPoly MultiPoly::mul_term(const Mono& m, const Scalar& c) const {
    if (c.is_zero()) return MultiPoly(ring_);
    MultiPoly r(ring_);
    r.terms_.reserve(terms_.size());
    // monomial orders are multiplicative, so the sorted order is preserved
    for (const auto& t : terms_) r.terms_.emplace_back(mono_mul(t.first, m), t.second * c);
    return r;
}

MultiPoly MultiPoly::monic() const {
    if (is_zero()) return *this;
    return scale(leading_term().second.inv());
}

bool MultiPoly::operator==(const MultiPoly& o) const {
    return ring_ == o.ring_ && terms_ == o.terms_;
}

// ---------------------------------------------------------------------------
// multiplication / substitution engine
// ---------------------------------------------------------------------------

namespace {

constexpr std::size_t kDenseCellLimit = 2500000;
constexpr std::size_t kSmallOpLimit = 256;

std::uint64_t engine_weight(const FieldSpec& f) {
    switch (f.kind()) {
        case FieldKind::Rationals: return 1;
        case FieldKind::Cyclotomic: return 20;
        case FieldKind::RationalFunctions: return 200;
    }
    return 1;
}

bool poly_all_integer(const MultiPoly& p) {
    for (const auto& [m, c] : p.terms())
        if (!rat_is_integer(c.rat())) return false;
    return true;
}

// batched charging from inner loops; expensive coefficient fields check
// more often so a budget stop cannot overshoot by seconds
struct OpMeter {
    std::uint64_t weight;
    std::uint64_t window;
    std::uint64_t pending = 0;
    explicit OpMeter(const FieldSpec& f)
        : weight(engine_weight(f)), window(std::max<std::uint64_t>(16, 4096 / weight)) {}
    void tick() {
        if (++pending >= window) flush();
    }
    void flush() {
        if (pending) charge_engine_ops(pending * weight);
        pending = 0;
    }
};

// Inclusive per-variable degree bounds of an anticipated result.
struct Bounds {
    std::vector<Exp> b;
    bool fits_dense(const PolyRing& ring, std::size_t& cells_out) const {
        if (ring.field().kind() != FieldKind::Rationals) return false;
        std::size_t cells = 1;
        for (Exp e : b) {
            if (e < 0) return false;
            std::size_t w = static_cast<std::size_t>(e) + 1;
            if (cells > kDenseCellLimit / w) return false;
            cells *= w;
        }
        cells_out = cells;
        return true;
    }
    bool fits_packed(std::vector<int>& shifts_out) const {
        int total = 0;
        shifts_out.assign(b.size(), 0);
        std::vector<int> width(b.size());
        for (std::size_t i = 0; i < b.size(); ++i) {
            Exp e = std::max<Exp>(b[i], 0);
            int w = 1;
            while ((Exp(1) << w) <= e) ++w;
            width[i] = w;
            total += w;
        }
        if (total > 63) return false;
        int shift = 0;
        for (std::size_t i = b.size(); i-- > 0;) {
            shifts_out[i] = shift;
            shift += width[i];
        }
        return true;
    }
};

Bounds mul_bounds(const MultiPoly& a, const MultiPoly& b) {
    Bounds r;
    std::size_t n = a.ring().nvars();
    r.b.assign(n, 0);
    for (std::size_t v = 0; v < n; ++v) r.b[v] = a.degree_in(v) + b.degree_in(v);
    return r;
}

// Grid buffers are recycled through a pool so substitution towers do not
// re-run millions of mpq constructions. Invariant: pooled buffers are
// all-zero; DenseAccum zeroes its written regions before returning them.
struct GridPool {
    std::vector<std::vector<Rat>> free_list;

    std::vector<Rat> acquire(std::size_t cells) {
        if (!free_list.empty()) {
            std::vector<Rat> g = std::move(free_list.back());
            free_list.pop_back();
            g.resize(cells); // shrinking drops cells, growing adds zeros
            return g;
        }
        return std::vector<Rat>(cells);
    }

    void release(std::vector<Rat>&& g) {
        if (free_list.size() < 4 && g.size() > 1024) free_list.push_back(std::move(g));
    }
};

GridPool& grid_pool() {
    thread_local GridPool pool;
    return pool;
}

// Accumulator over a dense grid of rationals (Q only).
class DenseAccum {
public:
    DenseAccum(PolyRing ring, Bounds bounds, std::size_t cells)
        : ring_(std::move(ring)), bounds_(std::move(bounds)), cells_(cells) {
        std::size_t n = bounds_.b.size();
        stride_.assign(n, 1);
        for (std::size_t i = n; i-- > 1;) stride_[i - 1] = stride_[i] * (bounds_.b[i] + 1);
        a_ = grid_pool().acquire(cells_);
        cur_.assign(n, -1);
    }

    DenseAccum(const DenseAccum&) = delete;
    DenseAccum& operator=(const DenseAccum&) = delete;
    DenseAccum(DenseAccum&&) = default;
    DenseAccum& operator=(DenseAccum&&) = default;

    // Written cells always lie inside the cur_ region (it only grows), in
    // the scratch buffer too. Zeroing that region restores the pool
    // invariant.
    ~DenseAccum() {
        if (!a_.empty()) {
            zero_region(a_, cur_);
            grid_pool().release(std::move(a_));
        }
        if (!scratch_.empty()) {
            zero_region(scratch_, cur_);
            grid_pool().release(std::move(scratch_));
        }
    }

    void add_terms(const std::vector<MultiPoly::Term>& terms, const Scalar* factor) {
        for (const auto& [m, c] : terms) {
            std::size_t idx = index_of(m);
            if (!rat_is_integer(c.rat())) all_int_ = false;
            if (factor) {
                if (!rat_is_integer(factor->rat())) all_int_ = false;
                rat_addmul(a_[idx], c.rat(), factor->rat());
            } else {
                a_[idx] += c.rat();
            }
            bump(m);
        }
    }

    // *this = *this * p (ping-pong into a scratch grid)
    void mul_by(const MultiPoly& p) {
        if (p.is_zero() || empty()) {
            clear();
            return;
        }
        bool fresh_scratch = scratch_.empty();
        if (fresh_scratch) scratch_ = grid_pool().acquire(cells_);
        if (!poly_all_integer(p)) all_int_ = false;
        OpMeter meter(ring_.field());
        std::vector<Exp> nb(cur_.size());
        for (std::size_t v = 0; v < cur_.size(); ++v)
            nb[v] = std::min<Exp>(bounds_.b[v], cur_[v] + p.degree_in(v));
        // pooled buffers arrive all-zero; after a swap the stale region
        // needs clearing
        if (!fresh_scratch) {
            for_region(nb, [&](std::size_t idx) {
                if (scratch_[idx] != 0) scratch_[idx] = 0;
            });
        }
        // precompute term offsets
        std::vector<std::pair<std::size_t, const Rat*>> offs;
        offs.reserve(p.terms().size());
        for (const auto& [m, c] : p.terms()) offs.emplace_back(index_of(m), &c.rat());
        if (all_int_) {
            // integrality is preserved inductively; skip the den == 1 checks
            for_region(cur_, [&](std::size_t idx) {
                const Rat& v = a_[idx];
                if (v == 0) return;
                for (const auto& [off, c] : offs) {
                    mpz_addmul(scratch_[idx + off].get_num_mpz_t(), v.get_num_mpz_t(),
                               c->get_num_mpz_t());
                    meter.tick();
                }
            });
        } else {
            for_region(cur_, [&](std::size_t idx) {
                const Rat& v = a_[idx];
                if (v == 0) return;
                for (const auto& [off, c] : offs) {
                    rat_addmul(scratch_[idx + off], v, *c);
                    meter.tick();
                }
            });
        }
        meter.flush();
        a_.swap(scratch_);
        cur_ = nb;
    }

    void add_mul(const MultiPoly& x, const MultiPoly& y) {
        OpMeter meter(ring_.field());
        if (!poly_all_integer(x) || !poly_all_integer(y)) all_int_ = false;
        for (const auto& [mx, cx] : x.terms()) {
            std::size_t ix = index_of(mx);
            for (const auto& [my, cy] : y.terms()) {
                rat_addmul(a_[ix + index_of(my)], cx.rat(), cy.rat());
                meter.tick();
            }
            bump(mono_mul(mx, [&] {
                Mono m(cur_.size(), 0);
                for (std::size_t v = 0; v < m.size(); ++v) m[v] = y.degree_in(v);
                return m;
            }()));
        }
        meter.flush();
    }

    MultiPoly extract() {
        std::vector<MultiPoly::Term> terms;
        for_region(cur_, [&](std::size_t idx) {
            if (a_[idx] == 0) return;
            terms.emplace_back(mono_of(idx), Scalar::from_rat(ring_.field(), a_[idx]));
        });
        check_term_budget(terms.size(), "dense accumulation");
        return MultiPoly::from_terms(ring_, std::move(terms));
    }

private:
    bool empty() const {
        for (Exp e : cur_)
            if (e >= 0) return false;
        return cur_.empty() ? false : true; // 0-var ring: single cell counts as used
    }
    void zero_region(std::vector<Rat>& buf, const std::vector<Exp>& ub) {
        for_region(ub, [&](std::size_t idx) {
            if (buf[idx] != 0) buf[idx] = 0;
        });
    }
    void clear() {
        zero_region(a_, cur_);
        if (!scratch_.empty()) zero_region(scratch_, cur_);
        cur_.assign(cur_.size(), -1);
    }
    std::size_t index_of(const Mono& m) const {
        std::size_t idx = 0;
        for (std::size_t v = 0; v < m.size(); ++v) idx += static_cast<std::size_t>(m[v]) * stride_[v];
        return idx;
    }
    Mono mono_of(std::size_t idx) const {
        Mono m(cur_.size());
        for (std::size_t v = 0; v < m.size(); ++v) {
            m[v] = static_cast<Exp>(idx / stride_[v]);
            idx %= stride_[v];
        }
        return m;
    }
    void bump(const Mono& m) {
        for (std::size_t v = 0; v < m.size(); ++v) cur_[v] = std::max(cur_[v], m[v]);
    }
    // visit every cell index with exponents in [0, ub] per variable
    template <class F>
    void for_region(const std::vector<Exp>& ub, F&& f) const {
        for (Exp e : ub)
            if (e < 0) return;
        std::size_t n = ub.size();
        if (n == 0) {
            f(0);
            return;
        }
        Mono m(n, 0);
        std::size_t idx = 0;
        while (true) {
            f(idx);
            std::size_t v = n;
            while (v-- > 0) {
                if (m[v] < ub[v]) {
                    ++m[v];
                    idx += stride_[v];
                    break;
                }
                idx -= static_cast<std::size_t>(m[v]) * stride_[v];
                m[v] = 0;
                if (v == 0) return;
            }
        }
    }

    PolyRing ring_;
    Bounds bounds_;
    std::size_t cells_;
    std::vector<std::size_t> stride_;
    std::vector<Rat> a_;
    std::vector<Rat> scratch_;
    std::vector<Exp> cur_; // current max exponent per var (-1: nothing yet)
    bool all_int_ = true;  // every value written so far is an integer
};

// Accumulator over packed 64-bit exponent keys (any field).
class HashAccum {
public:
    HashAccum(PolyRing ring, std::vector<int> shifts)
        : ring_(std::move(ring)), shifts_(std::move(shifts)) {}

    std::uint64_t key_of(const Mono& m) const {
        std::uint64_t k = 0;
        for (std::size_t v = 0; v < m.size(); ++v)
            k |= static_cast<std::uint64_t>(m[v]) << shifts_[v];
        return k;
    }

    void add_terms(const std::vector<MultiPoly::Term>& terms, const Scalar* factor) {
        for (const auto& [m, c] : terms) {
            Scalar v = factor ? c * *factor : c;
            auto [it, fresh] = map_.try_emplace(key_of(m), v);
            if (!fresh) it->second = it->second + v;
        }
        check();
    }

    void mul_by(const MultiPoly& p) {
        std::unordered_map<std::uint64_t, Scalar> out;
        out.reserve(map_.size());
        OpMeter meter(ring_.field());
        std::size_t ops = 0;
        for (const auto& [k, c] : map_) {
            if (c.is_zero()) continue;
            for (const auto& [m, pc] : p.terms()) {
                Scalar v = c * pc;
                std::uint64_t nk = k + key_of(m);
                auto [it, fresh] = out.try_emplace(nk, v);
                if (!fresh) it->second = it->second + v;
                meter.tick();
                if (((++ops) & 0xffff) == 0) check_term_budget(out.size(), "hash accumulation");
            }
        }
        meter.flush();
        map_ = std::move(out);
        check();
    }

    void add_mul(const MultiPoly& x, const MultiPoly& y) {
        OpMeter meter(ring_.field());
        std::size_t ops = 0;
        for (const auto& [mx, cx] : x.terms()) {
            std::uint64_t kx = key_of(mx);
            for (const auto& [my, cy] : y.terms()) {
                Scalar v = cx * cy;
                auto [it, fresh] = map_.try_emplace(kx + key_of(my), v);
                if (!fresh) it->second = it->second + v;
                meter.tick();
                if (((++ops) & 0xffff) == 0) check_term_budget(map_.size(), "hash accumulation");
            }
        }
        meter.flush();
        check();
    }

    MultiPoly extract() {
        std::vector<MultiPoly::Term> terms;
        terms.reserve(map_.size());
        for (auto& [k, c] : map_) {
            if (c.is_zero()) continue;
            Mono m(shifts_.size());
            for (std::size_t v = 0; v < m.size(); ++v) {
                int hi = (v == 0) ? 63 : shifts_[v - 1] - 1;
                std::uint64_t mask = (hi >= 63) ? ~std::uint64_t(0) : ((std::uint64_t(1) << (hi + 1)) - 1);
                m[v] = static_cast<Exp>((k & mask) >> shifts_[v]);
            }
            terms.emplace_back(std::move(m), std::move(c));
        }
        check_term_budget(terms.size(), "hash accumulation");
        return MultiPoly::from_terms(ring_, std::move(terms));
    }

private:
    void check() const { check_term_budget(map_.size(), "hash accumulation"); }
    PolyRing ring_;
    std::vector<int> shifts_;
    std::unordered_map<std::uint64_t, Scalar> map_;
};

// Fallback accumulator on full exponent vectors (huge degrees; rare).
class MapAccum {
public:
    explicit MapAccum(PolyRing ring) : ring_(std::move(ring)) {}

    void add_terms(const std::vector<MultiPoly::Term>& terms, const Scalar* factor) {
        for (const auto& [m, c] : terms) add_to(m, factor ? c * *factor : c);
        check();
    }
    void mul_by(const MultiPoly& p) {
        std::map<Mono, Scalar> out;
        OpMeter meter(ring_.field());
        for (const auto& [m, c] : map_) {
            if (c.is_zero()) continue;
            for (const auto& [pm, pc] : p.terms()) {
                Scalar v = c * pc;
                Mono nm = mono_mul(m, pm);
                auto it = out.find(nm);
                if (it == out.end())
                    out.emplace(std::move(nm), std::move(v));
                else
                    it->second = it->second + v;
                meter.tick();
            }
        }
        meter.flush();
        map_ = std::move(out);
        check();
    }
    void add_mul(const MultiPoly& x, const MultiPoly& y) {
        OpMeter meter(ring_.field());
        for (const auto& [mx, cx] : x.terms())
            for (const auto& [my, cy] : y.terms()) {
                add_to(mono_mul(mx, my), cx * cy);
                meter.tick();
            }
        meter.flush();
        check();
    }
    MultiPoly extract() {
        std::vector<MultiPoly::Term> terms;
        terms.reserve(map_.size());
        for (auto& [m, c] : map_)
            if (!c.is_zero()) terms.emplace_back(m, std::move(c));
        return MultiPoly::from_terms(ring_, std::move(terms));
    }

private:
    void add_to(const Mono& m, Scalar v) {
        auto it = map_.find(m);
        if (it == map_.end())
            map_.emplace(m, std::move(v));
        else
            it->second = it->second + v;
    }
    void check() const { check_term_budget(map_.size(), "map accumulation"); }
    PolyRing ring_;
    std::map<Mono, Scalar> map_;
};

} // namespace

// Variant-dispatched accumulator used by multiplication and by the Horner
// loops of substitution.
class PolyAccum {
public:
    PolyAccum(const PolyRing& ring, const Bounds& bounds, std::size_t est_ops) {
        std::size_t cells = 0;
        std::vector<int> shifts;
        if (est_ops > kSmallOpLimit && bounds.fits_dense(ring, cells)) {
            impl_.emplace<DenseAccum>(ring, bounds, cells);
        } else if (bounds.fits_packed(shifts)) {
            impl_.emplace<HashAccum>(ring, std::move(shifts));
        } else {
            impl_.emplace<MapAccum>(ring);
        }
    }

    void add_terms(const MultiPoly& p, const Scalar* factor = nullptr) {
        dispatch([&](auto& a) { a.add_terms(p.terms(), factor); });
    }
    void mul_by(const MultiPoly& p) {
        dispatch([&](auto& a) { a.mul_by(p); });
    }
    void add_mul(const MultiPoly& x, const MultiPoly& y) {
        dispatch([&](auto& a) { a.add_mul(x, y); });
    }
    MultiPoly extract() {
        return std::visit(
            [&](auto& a) -> MultiPoly {
                if constexpr (std::is_same_v<std::decay_t<decltype(a)>, std::monostate>)
                    fail(Err::InternalError, "empty accumulator");
                else
                    return a.extract();
            },
            impl_);
    }

private:
    template <class F>
    void dispatch(F&& f) {
        std::visit(
            [&](auto& a) {
                if constexpr (!std::is_same_v<std::decay_t<decltype(a)>, std::monostate>) f(a);
            },
            impl_);
    }
    std::variant<std::monostate, MapAccum, DenseAccum, HashAccum> impl_;
};

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    require_same_ring(*this, o, "mul");
    if (is_zero() || o.is_zero()) return MultiPoly(ring_);
    if (terms_.size() == 1) return o.mul_term(terms_[0].first, terms_[0].second);
    if (o.terms_.size() == 1) return mul_term(o.terms_[0].first, o.terms_[0].second);
    PolyAccum acc(ring_, mul_bounds(*this, o), terms_.size() * o.terms_.size());
    acc.add_mul(*this, o);
    return acc.extract();
}

MultiPoly MultiPoly::pow(unsigned long e) const {
    MultiPoly r = one(ring_);
    MultiPoly b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

// ---------------------------------------------------------------------------
// substitution
// ---------------------------------------------------------------------------

namespace {

// Bounds of substituting images into the terms, counting only variables from
// index `from` onward (outer Horner levels own the earlier ones).
Bounds subst_bounds(const std::vector<MultiPoly::Term>& terms,
                    const std::vector<std::vector<Exp>>& img_degs, std::size_t tvars,
                    std::size_t from) {
    Bounds r;
    r.b.assign(tvars, 0);
    for (const auto& [m, c] : terms) {
        for (std::size_t v = 0; v < tvars; ++v) {
            Exp d = 0;
            for (std::size_t k = from; k < m.size(); ++k) d += m[k] * img_degs[k][v];
            r.b[v] = std::max(r.b[v], d);
        }
    }
    return r;
}

// Substitute images into the polynomial given by `terms` (exponents from
// variable index `k` onward are meaningful). Horner in variable k.
MultiPoly subst_rec(const std::vector<MultiPoly::Term>& terms, std::size_t k,
                    const std::vector<MultiPoly>& images,
                    const std::vector<std::vector<Exp>>& img_degs, const PolyRing& target,
                    const FieldSpec& source_field) {
    if (terms.empty()) return MultiPoly::zero(target);
    if (k == images.size()) {
        // only the constant coefficient remains
        Scalar c = Scalar::zero(source_field);
        for (const auto& t : terms) c = c + t.second;
        return MultiPoly::constant(target, c);
    }

    // group terms by the exponent of variable k, descending
    std::map<Exp, std::vector<MultiPoly::Term>, std::greater<Exp>> groups;
    for (const auto& t : terms) groups[t.first[k]].push_back(t);

    if (groups.size() == 1 && groups.begin()->first == 0)
        return subst_rec(terms, k + 1, images, img_degs, target, source_field);

    Bounds bounds = subst_bounds(terms, img_degs, target.nvars(), k);
    // crude cost signal: number of terms * image size forces dense mode for
    // the heavy iterate substitutions
    std::size_t est = terms.size() * std::max<std::size_t>(images[k].terms().size(), 1) * 8;
    PolyAccum acc(target, bounds, est);

    const MultiPoly& img = images[k];
    auto img_pow = [&](Exp gap) -> MultiPoly {
        if (gap <= 4) {
            MultiPoly p = img;
            for (Exp i = 1; i < gap; ++i) p = p * img;
            return p;
        }
        return img.pow(static_cast<unsigned long>(gap));
    };

    bool first = true;
    Exp prev_e = 0;
    for (auto& [e, group] : groups) {
        MultiPoly ce = subst_rec(group, k + 1, images, img_degs, target, source_field);
        if (first) {
            acc.add_terms(ce);
            first = false;
        } else {
            acc.mul_by(img_pow(prev_e - e));
            acc.add_terms(ce);
        }
        prev_e = e;
    }
    if (prev_e > 0) acc.mul_by(img_pow(prev_e));
    return acc.extract();
}

} // namespace

MultiPoly substitute(const MultiPoly& f, const std::vector<MultiPoly>& images) {
    if (images.size() != f.ring().nvars())
        fail(Err::ArityMismatch, "substitute: expected " + std::to_string(f.ring().nvars()) +
                                     " images, got " + std::to_string(images.size()));
    if (images.empty()) {
        // 0-variable source: constants transport directly
        PolyRing target = f.ring();
        return MultiPoly::constant(target, f.constant_value());
    }
    const PolyRing& target = images[0].ring();
    for (const auto& g : images)
        if (g.ring() != target) fail(Err::RingMismatch, "substitute: images in different rings");
    if (f.ring().field() != target.field())
        fail(Err::FieldMismatch, "substitute: source and target fields differ");

    std::vector<std::vector<Exp>> img_degs(images.size());
    for (std::size_t k = 0; k < images.size(); ++k) {
        img_degs[k].resize(target.nvars());
        for (std::size_t v = 0; v < target.nvars(); ++v) img_degs[k][v] = images[k].degree_in(v);
    }
    return subst_rec(f.terms(), 0, images, img_degs, target, f.ring().field());
}

MultiPoly partial_derivative(const MultiPoly& f, std::size_t var) {
    if (var >= f.ring().nvars()) fail(Err::ArityMismatch, "derivative: variable out of range");
    std::vector<MultiPoly::Term> terms;
    for (const auto& [m, c] : f.terms()) {
        if (m[var] == 0) continue;
        Mono nm = m;
        nm[var] -= 1;
        terms.emplace_back(std::move(nm),
                           c * Scalar::from_rat(f.ring().field(), Rat(static_cast<long>(m[var]))));
    }
    return MultiPoly::from_terms(f.ring(), std::move(terms));
}

Scalar evaluate(const MultiPoly& f, const std::vector<Scalar>& point) {
    if (point.size() != f.ring().nvars()) fail(Err::ArityMismatch, "evaluate: point arity mismatch");
    const FieldSpec& field = f.ring().field();
    for (const auto& s : point)
        if (s.field() != field) fail(Err::FieldMismatch, "evaluate: point in wrong field");
    // memoized powers per variable
    std::vector<std::vector<Scalar>> pows(point.size());
    for (std::size_t v = 0; v < point.size(); ++v) pows[v].push_back(Scalar::one(field));
    Scalar acc = Scalar::zero(field);
    for (const auto& [m, c] : f.terms()) {
        Scalar t = c;
        for (std::size_t v = 0; v < point.size(); ++v) {
            Exp e = m[v];
            if (e == 0) continue;
            auto& pv = pows[v];
            while (static_cast<Exp>(pv.size()) <= e) pv.push_back(pv.back() * point[v]);
            t = t * pv[static_cast<std::size_t>(e)];
        }
        acc = acc + t;
    }
    return acc;
}

MultiPoly coerce(const MultiPoly& f, const PolyRing& target) {
    if (f.ring().field() != target.field()) fail(Err::FieldMismatch, "coerce: fields differ");
    std::vector<std::size_t> map(f.ring().nvars());
    std::vector<bool> present(f.ring().nvars(), false);
    for (std::size_t i = 0; i < f.ring().nvars(); ++i) {
        auto idx = target.var_index(f.ring().vars()[i]);
        if (idx) {
            map[i] = *idx;
            present[i] = true;
        }
    }
    std::vector<MultiPoly::Term> terms;
    terms.reserve(f.terms().size());
    for (const auto& [m, c] : f.terms()) {
        Mono nm(target.nvars(), 0);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!present[i])
                fail(Err::RingMismatch,
                     "coerce: variable " + f.ring().vars()[i] + " missing in target ring");
            nm[map[i]] = m[i];
        }
        terms.emplace_back(std::move(nm), c);
    }
    return MultiPoly::from_terms(target, std::move(terms));
}

// ---------------------------------------------------------------------------
// printing
// ---------------------------------------------------------------------------

std::string MultiPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        std::string mono;
        {
            std::ostringstream ms;
            bool fv = true;
            for (std::size_t v = 0; v < m.size(); ++v) {
                if (m[v] == 0) continue;
                if (!fv) ms << "*";
                fv = false;
                ms << ring_.vars()[v];
                if (m[v] > 1) ms << "^" << m[v];
            }
            mono = ms.str();
        }
        if (c.is_rational()) {
            Rat q = c.as_rat();
            bool negative = q < 0;
            Rat aq = negative ? Rat(-q) : q;
            if (first) {
                if (negative) os << "-";
            } else {
                os << (negative ? "-" : "+");
            }
            if (mono.empty()) {
                os << aq.get_str();
            } else {
                if (aq != 1) os << aq.get_str() << "*";
                os << mono;
            }
        } else {
            if (!first) os << "+";
            std::string cs = c.to_string();
            bool parens = c.print_needs_parens() || (!first && mono.empty() &&
                                                     cs.find_first_of("+-", 1) != std::string::npos);
            if (mono.empty()) {
                os << (parens ? "(" + cs + ")" : cs);
            } else {
                if (c.is_one()) {
                    os << mono;
                } else {
                    os << (parens ? "(" + cs + ")" : cs) << "*" << mono;
                }
            }
        }
        first = false;
    }
    return os.str();
}

} // namespace polyaut

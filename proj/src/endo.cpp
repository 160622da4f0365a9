#include "polyaut/endo.hpp"

#include <algorithm>

#include "polyaut/budget.hpp"

namespace polyaut {

namespace {

PolyMap factor_map(const PolyRing& ring, const ElementaryFactor& f) {
    std::size_t n = ring.nvars();
    const FieldSpec& field = ring.field();
    std::vector<MultiPoly> coords;
    coords.reserve(n);
    if (const auto* a = std::get_if<AffineFactor>(&f)) {
        if (a->mat.rows() != n || a->mat.cols() != n || a->shift.size() != n)
            fail(Err::ArityMismatch, "affine factor shape");
        if (a->mat.det().is_zero()) fail(Err::InvalidInput, "affine factor is singular");
        for (std::size_t i = 0; i < n; ++i) {
            MultiPoly c = MultiPoly::constant(ring, a->shift[i]);
            for (std::size_t j = 0; j < n; ++j) {
                if (a->mat.at(i, j).is_zero()) continue;
                c = c + MultiPoly::variable(ring, j).scale(a->mat.at(i, j));
            }
            coords.push_back(std::move(c));
        }
    } else if (const auto* e = std::get_if<ElemFactor>(&f)) {
        if (e->var >= n) fail(Err::ArityMismatch, "elementary factor variable out of range");
        if (e->p.ring() != ring) fail(Err::RingMismatch, "elementary factor polynomial ring");
        if (e->p.degree_in(e->var) > 0)
            fail(Err::InvalidInput, "elementary factor polynomial involves its target variable");
        for (std::size_t i = 0; i < n; ++i) {
            MultiPoly c = MultiPoly::variable(ring, i);
            if (i == e->var) c = c + e->p;
            coords.push_back(std::move(c));
        }
    } else {
        const auto& perm = std::get<PermFactor>(f).perm;
        if (perm.size() != n) fail(Err::ArityMismatch, "permutation factor size");
        std::vector<bool> seen(n, false);
        for (std::size_t v : perm) {
            if (v >= n || seen[v]) fail(Err::InvalidInput, "invalid permutation");
            seen[v] = true;
        }
        for (std::size_t i = 0; i < n; ++i) coords.push_back(MultiPoly::variable(ring, perm[i]));
    }
    (void)field;
    return PolyMap(ring, std::move(coords));
}

} // namespace

PolyMap expand_word(const PolyRing& ring, const std::vector<ElementaryFactor>& word) {
    PolyMap acc = PolyMap::identity(ring);
    for (auto it = word.rbegin(); it != word.rend(); ++it)
        acc = compose(factor_map(ring, *it), acc);
    return acc;
}

ElementaryFactor invert_factor(const PolyRing& ring, const ElementaryFactor& f) {
    if (const auto* a = std::get_if<AffineFactor>(&f)) {
        Matrix minv = a->mat.inverse();
        // x = M y + s  =>  y = M^-1 x - M^-1 s
        std::vector<Scalar> shift;
        shift.reserve(a->shift.size());
        for (std::size_t i = 0; i < a->shift.size(); ++i) {
            Scalar s = Scalar::zero(ring.field());
            for (std::size_t j = 0; j < a->shift.size(); ++j)
                s = s - minv.at(i, j) * a->shift[j];
            shift.push_back(std::move(s));
        }
        return AffineFactor{std::move(minv), std::move(shift)};
    }
    if (const auto* e = std::get_if<ElemFactor>(&f)) return ElemFactor{e->var, -e->p};
    const auto& perm = std::get<PermFactor>(f).perm;
    std::vector<std::size_t> inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = i;
    return PermFactor{std::move(inv)};
}

PolyMap::PolyMap(PolyRing ring, std::vector<MultiPoly> coords)
    : ring_(std::move(ring)), coords_(std::move(coords)) {
    if (coords_.size() != ring_.nvars())
        fail(Err::ArityMismatch, "map needs one coordinate per variable");
    for (const auto& c : coords_)
        if (c.ring() != ring_) fail(Err::RingMismatch, "coordinate in wrong ring");
}

PolyMap PolyMap::identity(const PolyRing& ring) {
    std::vector<MultiPoly> coords;
    coords.reserve(ring.nvars());
    for (std::size_t i = 0; i < ring.nvars(); ++i) coords.push_back(MultiPoly::variable(ring, i));
    return PolyMap(ring, std::move(coords));
}

PolyMap PolyMap::from_word(const PolyRing& ring, std::vector<ElementaryFactor> word) {
    PolyMap m = expand_word(ring, word);
    m.word_ = std::move(word);
    // automorphism sanity: the Jacobian determinant of a word-built map is a
    // nonzero constant
    MultiPoly det = jacobian_det(m);
    if (!det.is_constant() || det.is_zero())
        fail(Err::InternalError, "word-built map has non-constant Jacobian determinant");
    return m;
}

PolyMap PolyMap::from_coords_with_word(PolyRing ring, std::vector<MultiPoly> coords,
                                       std::vector<ElementaryFactor> word) {
    PolyMap expanded = from_word(ring, std::move(word));
    PolyMap given(std::move(ring), std::move(coords));
    if (!(expanded == given))
        fail(Err::InvalidInput, "supplied word does not expand to the supplied coordinates");
    expanded.coords_ = given.coords_;
    return expanded;
}

const std::vector<ElementaryFactor>& PolyMap::word() const {
    if (!word_) fail(Err::NoWordFactorization, "map carries no word factorization");
    return *word_;
}

bool PolyMap::is_identity() const {
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        const auto& t = coords_[i].terms();
        if (t.size() != 1 || !t[0].second.is_one() || mono_total_degree(t[0].first) != 1 ||
            t[0].first[i] != 1)
            return false;
    }
    return true;
}

bool PolyMap::operator==(const PolyMap& o) const {
    return ring_ == o.ring_ && coords_ == o.coords_;
}

MultiPoly PolyMap::pullback(const MultiPoly& f) const {
    if (f.ring() != ring_) fail(Err::RingMismatch, "pullback: polynomial in wrong ring");
    return substitute(f, coords_);
}

std::vector<Scalar> PolyMap::apply_point(const std::vector<Scalar>& p) const {
    std::vector<Scalar> out;
    out.reserve(coords_.size());
    for (const auto& c : coords_) out.push_back(evaluate(c, p));
    return out;
}

PolyMap compose(const PolyMap& F, const PolyMap& G) {
    if (F.ring() != G.ring()) fail(Err::RingMismatch, "compose: maps in different rings");
    std::vector<MultiPoly> coords;
    coords.reserve(F.coords().size());
    for (const auto& c : F.coords()) coords.push_back(substitute(c, G.coords()));
    PolyMap r(F.ring(), std::move(coords));
    if (F.has_word() && G.has_word()) {
        // words were validated at construction; concatenation is sound by
        // the homomorphism property and needs no re-expansion
        std::vector<ElementaryFactor> w = F.word();
        w.insert(w.end(), G.word().begin(), G.word().end());
        r.word_ = std::move(w);
    }
    return r;
}

PolyMap invert(const PolyMap& F) {
    const auto& w = F.word(); // throws NoWordFactorization on raw maps
    std::vector<ElementaryFactor> rw;
    rw.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        rw.push_back(invert_factor(F.ring(), *it));
    PolyMap inv = PolyMap::from_word(F.ring(), std::move(rw));
    if (!compose(F, inv).is_identity() || !compose(inv, F).is_identity())
        fail(Err::InternalError, "word inversion failed to produce an inverse");
    return inv;
}

std::vector<long> iterate_degrees(const PolyMap& F, unsigned N) {
    if (N < 1) fail(Err::InvalidInput, "iterate count must be >= 1");
    std::vector<long> ds;
    ds.reserve(N);
    PolyMap base(F.ring(), F.coords()); // drop the word: iterates track coords only
    PolyMap P = base;
    for (unsigned n = 1;; ++n) {
        long d = 0;
        for (const auto& c : P.coords()) d = std::max(d, c.total_degree());
        ds.push_back(d);
        if (n == N) break;
        // substituting the fixed small map into the growing iterate is the
        // cheap direction for Horner
        P = compose(P, base);
    }
    return ds;
}

bool verify_conjugacy(const PolyMap& h, const PolyMap& A, const PolyMap& B) {
    (void)h.word(); // conjugator must witness invertibility
    if (h.ring() != A.ring() || h.ring() != B.ring())
        fail(Err::RingMismatch, "verify_conjugacy: maps in different rings");
    return compose(h, A) == compose(B, h);
}

std::optional<unsigned long> order_up_to(const PolyMap& F, unsigned long bound) {
    if (bound < 1) fail(Err::InvalidInput, "order bound must be >= 1");
    PolyMap base(F.ring(), F.coords());
    PolyMap P = base;
    for (unsigned long d = 1; d <= bound; ++d) {
        if (P.is_identity()) return d;
        if (d < bound) P = compose(P, base);
    }
    return std::nullopt;
}

Matrix jacobian_at(const PolyMap& F, const std::vector<Scalar>& p) {
    std::size_t n = F.ring().nvars();
    if (p.size() != n) fail(Err::ArityMismatch, "jacobian point arity");
    Matrix m(F.ring().field(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m.at(i, j) = evaluate(partial_derivative(F.coords()[i], j), p);
    return m;
}

bool is_unipotent(const Matrix& m) {
    if (m.rows() != m.cols()) fail(Err::ArityMismatch, "unipotency of non-square matrix");
    Matrix n = m - Matrix::identity(m.field(), m.rows());
    return n.pow(static_cast<unsigned long>(m.rows())).is_zero();
}

namespace {

MultiPoly poly_det(std::vector<std::vector<MultiPoly>>& a, std::size_t n, const PolyRing& ring) {
    if (n == 0) return MultiPoly::one(ring);
    if (n == 1) return a[0][0];
    MultiPoly det = MultiPoly::zero(ring);
    // Laplace expansion along the first row; n <= handful of variables
    for (std::size_t j = 0; j < n; ++j) {
        if (a[0][j].is_zero()) continue;
        std::vector<std::vector<MultiPoly>> minor;
        minor.reserve(n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<MultiPoly> row;
            row.reserve(n - 1);
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(a[i][k]);
            minor.push_back(std::move(row));
        }
        MultiPoly term = a[0][j] * poly_det(minor, n - 1, ring);
        det = (j % 2 == 0) ? det + term : det - term;
    }
    return det;
}

} // namespace

MultiPoly jacobian_det(const PolyMap& F) {
    std::size_t n = F.ring().nvars();
    std::vector<std::vector<MultiPoly>> a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i].push_back(partial_derivative(F.coords()[i], j));
    return poly_det(a, n, F.ring());
}

} // namespace polyaut

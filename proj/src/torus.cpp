#include "polyaut/torus.hpp"

#include <algorithm>

namespace polyaut {

namespace {

void check_gm_scalar(const Scalar& a) {
    if (a.is_zero()) fail(Err::ZeroInput, "multiplicative parameter is zero");
    if (a.root_of_unity_order())
        fail(Err::RootOfUnityScalar, "scalar is a root of unity; Vandermonde nodes collide");
}

// Laurent values over a ring with designated shift variables: the value is
// p divided by prod shift_var[k]^sh[k]. Only used for the formal G_m checks.
struct LaurentCtx {
    PolyRing ring;
    std::vector<std::size_t> shift_vars;
};

struct LVal {
    MultiPoly p;
    std::vector<long> sh;
};

LVal lv_const(const LaurentCtx& ctx, const MultiPoly& p, std::vector<long> sh = {}) {
    if (sh.empty()) sh.assign(ctx.shift_vars.size(), 0);
    return {p, std::move(sh)};
}

LVal lv_mul(const LaurentCtx& ctx, const LVal& a, const LVal& b) {
    LVal r{a.p * b.p, a.sh};
    for (std::size_t k = 0; k < ctx.shift_vars.size(); ++k) r.sh[k] += b.sh[k];
    return r;
}

MultiPoly shift_up(const LaurentCtx& ctx, const MultiPoly& p, const std::vector<long>& by) {
    Mono m(ctx.ring.nvars(), 0);
    for (std::size_t k = 0; k < ctx.shift_vars.size(); ++k)
        m[ctx.shift_vars[k]] = static_cast<Exp>(by[k]);
    return p.mul_term(m, Scalar::one(ctx.ring.field()));
}

LVal lv_add(const LaurentCtx& ctx, const LVal& a, const LVal& b) {
    std::vector<long> sh(ctx.shift_vars.size());
    std::vector<long> ua(sh.size()), ub(sh.size());
    for (std::size_t k = 0; k < sh.size(); ++k) {
        sh[k] = std::max(a.sh[k], b.sh[k]);
        ua[k] = sh[k] - a.sh[k];
        ub[k] = sh[k] - b.sh[k];
    }
    return {shift_up(ctx, a.p, ua) + shift_up(ctx, b.p, ub), std::move(sh)};
}

LVal lv_pow(const LaurentCtx& ctx, const LVal& a, Exp e) {
    LVal r = lv_const(ctx, MultiPoly::one(ctx.ring));
    for (Exp i = 0; i < e; ++i) r = lv_mul(ctx, r, a);
    return r;
}

void lv_normalize(const LaurentCtx& ctx, LVal& a) {
    if (a.p.is_zero()) {
        a.sh.assign(ctx.shift_vars.size(), 0);
        return;
    }
    for (std::size_t k = 0; k < ctx.shift_vars.size(); ++k) {
        Exp mn = -1;
        for (const auto& [m, c] : a.p.terms())
            mn = (mn < 0) ? m[ctx.shift_vars[k]] : std::min(mn, m[ctx.shift_vars[k]]);
        long cancel = std::min<long>(a.sh[k], static_cast<long>(mn));
        if (cancel > 0) {
            std::vector<long> down(ctx.shift_vars.size(), 0);
            down[k] = -cancel;
            // divide by var^cancel: safe because every term carries it
            std::vector<MultiPoly::Term> terms;
            for (const auto& [m, c] : a.p.terms()) {
                Mono nm = m;
                nm[ctx.shift_vars[k]] -= static_cast<Exp>(cancel);
                terms.emplace_back(std::move(nm), c);
            }
            a.p = MultiPoly::from_terms(ctx.ring, std::move(terms));
            a.sh[k] -= cancel;
        }
    }
}

bool lv_eq(const LaurentCtx& ctx, LVal a, LVal b) {
    lv_normalize(ctx, a);
    lv_normalize(ctx, b);
    return a.sh == b.sh && a.p == b.p;
}

// Substitute Laurent values for the first `nbase` variables of f (f must
// not involve the others). Termwise expansion; flow checks stay small.
LVal lv_substitute(const LaurentCtx& ctx, const MultiPoly& f, const std::vector<LVal>& images) {
    LVal acc = lv_const(ctx, MultiPoly::zero(ctx.ring));
    for (const auto& [m, c] : f.terms()) {
        LVal t = lv_const(ctx, MultiPoly::constant(ctx.ring, c));
        for (std::size_t i = 0; i < images.size(); ++i)
            if (m[i] > 0) t = lv_mul(ctx, t, lv_pow(ctx, images[i], m[i]));
        acc = lv_add(ctx, acc, t);
    }
    return acc;
}

} // namespace

WeightDecomposition weight_split(const PolyMap& F, const Scalar& a, const MultiPoly& f, long r,
                                 long s) {
    if (f.ring() != F.ring()) fail(Err::RingMismatch, "weight_split: polynomial in wrong ring");
    if (a.field() != F.ring().field()) fail(Err::FieldMismatch, "weight_split: scalar field");
    check_gm_scalar(a);
    if (r > s) fail(Err::InvalidInput, "weight range is empty");

    std::size_t n = static_cast<std::size_t>(s - r + 1);
    std::vector<MultiPoly> pullbacks;
    pullbacks.reserve(n);
    pullbacks.push_back(f);
    for (std::size_t j = 1; j < n; ++j) pullbacks.push_back(F.pullback(pullbacks.back()));

    Matrix M(a.field(), n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            M.at(j, i) = a.pow(static_cast<long>(j) * (r + static_cast<long>(i)));
    Matrix Minv = [&] {
        try {
            return M.inverse();
        } catch (const AlgebraError&) {
            // distinct nodes make this impossible
            fail(Err::SingularSystem, "Vandermonde system unexpectedly singular");
        }
    }();

    WeightDecomposition out{f, {}, {}};
    MultiPoly resum = MultiPoly::zero(f.ring());
    for (std::size_t i = 0; i < n; ++i) {
        MultiPoly fi = MultiPoly::zero(f.ring());
        for (std::size_t j = 0; j < n; ++j) {
            if (Minv.at(i, j).is_zero()) continue;
            fi = fi + pullbacks[j].scale(Minv.at(i, j));
        }
        long weight = r + static_cast<long>(i);
        if (!fi.is_zero()) {
            if (!(F.pullback(fi) == fi.scale(a.pow(weight))))
                fail(Err::RangeTooSmall,
                     "component verification failed; the weight range [" + std::to_string(r) +
                         ", " + std::to_string(s) + "] does not capture the decomposition");
            out.weights.push_back(weight);
            out.components.push_back(fi);
            resum = resum + fi;
        }
    }
    if (!(resum == f)) fail(Err::InternalError, "weight components do not sum back to the input");
    return out;
}

ParametricMap build_gm_flow(const PolyMap& F, const Scalar& a) {
    check_gm_scalar(a);
    const PolyRing& base = F.ring();
    std::vector<WeightDecomposition> splits;
    splits.reserve(base.nvars());
    for (std::size_t i = 0; i < base.nvars(); ++i) {
        MultiPoly xi = MultiPoly::variable(base, i);
        long d = std::max<long>(1, F.coords()[i].total_degree());
        bool done = false;
        for (int grow = 1; grow <= 4 && !done; grow *= 2) {
            try {
                splits.push_back(weight_split(F, a, xi, -d * grow, d * grow));
                done = true;
            } catch (const AlgebraError& e) {
                if (e.code() != Err::RangeTooSmall) throw;
            }
        }
        if (!done)
            fail(Err::NotSemisimple, "variable " + base.vars()[i] +
                                         " has no weight decomposition within the range budget");
    }

    long min_weight = 0;
    for (const auto& sp : splits)
        for (long w : sp.weights) min_weight = std::min(min_weight, w);
    long N = -min_weight;

    std::string v = fresh_param_name(base, "v");
    PolyRing ext = base.extended({v});
    std::size_t vidx = base.nvars();
    std::vector<MultiPoly> coords;
    coords.reserve(base.nvars());
    for (const auto& sp : splits) {
        MultiPoly c = MultiPoly::zero(ext);
        for (std::size_t k = 0; k < sp.weights.size(); ++k) {
            Mono vm(ext.nvars(), 0);
            vm[vidx] = static_cast<Exp>(sp.weights[k] + N);
            c = c + coerce(sp.components[k], ext).mul_term(vm, Scalar::one(ext.field()));
        }
        coords.push_back(std::move(c));
    }
    ParametricMap psi(base, v, FlowKind::Multiplicative, std::move(coords), N);
    if (!(psi.specialize(a) == PolyMap(base, F.coords())))
        fail(Err::InternalError, "flow specialization at a does not reproduce the map");
    return psi;
}

bool commutes_with_flow(const PolyMap& F, const ParametricMap& psi) {
    if (F.ring() != psi.base_ring()) fail(Err::RingMismatch, "commutes_with_flow: ring mismatch");
    const PolyRing& ext = psi.ext_ring();
    std::size_t nb = psi.base_ring().nvars();

    if (psi.kind() == FlowKind::Additive) {
        // F o psi_u
        std::vector<MultiPoly> lhs;
        for (const auto& c : F.coords()) lhs.push_back(substitute(c, psi.coords()));
        // psi_u o F
        std::vector<MultiPoly> images;
        for (const auto& c : F.coords()) images.push_back(coerce(c, ext));
        images.push_back(MultiPoly::variable(ext, nb));
        std::vector<MultiPoly> rhs;
        for (const auto& c : psi.coords()) rhs.push_back(substitute(c, images));
        return lhs == rhs;
    }

    LaurentCtx ctx{ext, {nb}};
    long N = psi.denom_power();
    std::vector<LVal> psi_vals;
    for (const auto& c : psi.coords()) psi_vals.push_back(LVal{c, {N}});
    for (std::size_t i = 0; i < nb; ++i) {
        // F_i evaluated on the true flow coordinates
        LVal lhs = lv_substitute(ctx, F.coords()[i], psi_vals);
        // psi_i evaluated on F, still over v^N
        std::vector<MultiPoly> images;
        for (const auto& c : F.coords()) images.push_back(coerce(c, ext));
        images.push_back(MultiPoly::variable(ext, nb));
        LVal rhs{substitute(psi.coords()[i], images), {N}};
        if (!lv_eq(ctx, lhs, rhs)) return false;
    }
    return true;
}

bool multiplicative_flow_law_holds(const ParametricMap& psi) {
    if (psi.kind() != FlowKind::Multiplicative)
        fail(Err::InvalidInput, "multiplicative flow law check on an additive flow");
    const PolyRing& base = psi.base_ring();
    std::size_t nb = base.nvars();
    std::string v = psi.param();
    std::string w = fresh_param_name(psi.ext_ring(), "w");
    PolyRing ext2 = base.extended({v, w});
    std::size_t vidx = nb, widx = nb + 1;
    LaurentCtx ctx{ext2, {vidx, widx}};
    long N = psi.denom_power();

    // psi coordinates at parameter w (shift on w), then at parameter v
    std::vector<LVal> at_w;
    {
        std::vector<MultiPoly> images;
        for (std::size_t i = 0; i < nb; ++i) images.push_back(MultiPoly::variable(ext2, i));
        images.push_back(MultiPoly::variable(ext2, widx));
        for (const auto& c : psi.coords()) at_w.push_back(LVal{substitute(c, images), {0, N}});
    }
    for (std::size_t i = 0; i < nb; ++i) {
        // lhs: psi_v applied to psi_w(p); psi_v's own coordinate is
        // coords_i / v^N with base variables replaced by at_w values
        std::vector<MultiPoly> images;
        for (std::size_t k = 0; k < nb; ++k) images.push_back(MultiPoly::variable(ext2, k));
        images.push_back(MultiPoly::variable(ext2, vidx));
        MultiPoly ci_v = substitute(psi.coords()[i], images); // coords in (vars, v, w)
        // substitute Laurent values for the base variables only
        std::vector<LVal> full_images = at_w;
        full_images.push_back(lv_const(ctx, MultiPoly::variable(ext2, vidx)));
        full_images.push_back(lv_const(ctx, MultiPoly::variable(ext2, widx)));
        LVal lhs = lv_substitute(ctx, ci_v, full_images);
        lhs.sh[0] += N; // the outer 1/v^N
        // rhs: parameter v*w
        std::vector<MultiPoly> imgs2;
        for (std::size_t k = 0; k < nb; ++k) imgs2.push_back(MultiPoly::variable(ext2, k));
        imgs2.push_back(MultiPoly::variable(ext2, vidx) * MultiPoly::variable(ext2, widx));
        LVal rhs{substitute(psi.coords()[i], imgs2), {N, N}};
        if (!lv_eq(ctx, lhs, rhs)) return false;
    }
    return true;
}

FinitePartResult finite_part_decompose(const PolyMap& F, const ParametricMap& psi,
                                       unsigned long r, const GroupElementSpec& h) {
    if (F.ring() != psi.base_ring()) fail(Err::RingMismatch, "decompose: ring mismatch");
    if (r < 1) fail(Err::InvalidInput, "decompose: r must be a positive integer");
    bool additive = h.kind == GroupElementSpec::Kind::Additive;
    if (additive != (psi.kind() == FlowKind::Additive))
        fail(Err::InvalidInput, "group element kind does not match the flow kind");
    if (h.h.field() != F.ring().field()) fail(Err::FieldMismatch, "decompose: scalar field");

    // <h> must be Zariski dense in the one-dimensional group
    if (additive) {
        if (h.h.is_zero()) fail(Err::InvalidInput, "additive element h must be nonzero");
    } else {
        if (h.h.is_zero()) fail(Err::ZeroInput, "multiplicative element h must be nonzero");
        if (h.h.root_of_unity_order())
            fail(Err::InvalidInput, "multiplicative element h is a root of unity; <h> is not dense");
    }

    PolyMap Fr(F.ring(), F.coords());
    PolyMap base(F.ring(), F.coords());
    for (unsigned long i = 1; i < r; ++i) Fr = compose(Fr, base);
    if (!(Fr == psi.specialize(h.h)))
        fail(Err::PowerMismatch, "F^r differs from the flow at parameter h");

    Scalar b = Scalar::zero(F.ring().field());
    if (additive) {
        b = h.h / Scalar::from_rat(h.h.field(), Rat(static_cast<long>(r)));
    } else {
        auto root = h.h.nth_root(r);
        if (!root)
            fail(Err::NoRootInField, "no " + std::to_string(r) + "-th root of h in " +
                                         h.h.field().describe() +
                                         "; the field is not extended silently");
        b = *root;
    }

    PolyMap delta = compose(F, psi.specialize(additive ? b.neg() : b.inv()));
    PolyMap delta_r(delta.ring(), delta.coords());
    for (unsigned long i = 1; i < r; ++i) delta_r = compose(delta_r, delta);
    if (!delta_r.is_identity())
        fail(Err::FinitePartNotOrderR,
             "Delta^r is not the identity; the inputs violate the decomposition hypotheses");
    if (!commutes_with_flow(delta, psi))
        fail(Err::InvalidInput,
             "Delta does not commute with the flow; the inputs violate the hypotheses");

    auto ord = order_up_to(delta, r);
    if (!ord) fail(Err::InternalError, "Delta has no order dividing r despite Delta^r = Id");
    return FinitePartResult{std::move(delta), std::move(b), *ord};
}

} // namespace polyaut

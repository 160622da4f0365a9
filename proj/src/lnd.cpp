#include "polyaut/lnd.hpp"

#include <algorithm>

namespace polyaut {

Derivation::Derivation(PolyRing ring, std::vector<MultiPoly> images)
    : ring_(std::move(ring)), images_(std::move(images)) {
    if (images_.size() != ring_.nvars())
        fail(Err::ArityMismatch, "derivation needs one image per variable");
    for (const auto& g : images_)
        if (g.ring() != ring_) fail(Err::RingMismatch, "derivation image in wrong ring");
}

Derivation Derivation::zero(const PolyRing& ring) {
    std::vector<MultiPoly> imgs(ring.nvars(), MultiPoly::zero(ring));
    return Derivation(ring, std::move(imgs));
}

bool Derivation::is_zero() const {
    for (const auto& g : images_)
        if (!g.is_zero()) return false;
    return true;
}

MultiPoly Derivation::apply(const MultiPoly& f) const {
    if (f.ring() != ring_) fail(Err::RingMismatch, "derivation applied to foreign polynomial");
    MultiPoly r = MultiPoly::zero(ring_);
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (images_[i].is_zero()) continue;
        r = r + partial_derivative(f, i) * images_[i];
    }
    return r;
}

NilpotenceResult is_locally_nilpotent(const Derivation& d, unsigned bound) {
    if (bound < 1) fail(Err::InvalidInput, "nilpotence bound must be >= 1");
    unsigned max_index = 0;
    for (std::size_t i = 0; i < d.ring().nvars(); ++i) {
        MultiPoly g = MultiPoly::variable(d.ring(), i);
        unsigned k = 0;
        while (!g.is_zero() && k <= bound) {
            g = d.apply(g);
            ++k;
        }
        if (!g.is_zero()) return {NilpotenceResult::Status::Unknown, 0, i};
        max_index = std::max(max_index, k);
    }
    return {NilpotenceResult::Status::Yes, max_index, 0};
}

std::string fresh_param_name(const PolyRing& ring, const std::string& base) {
    std::string name = base;
    unsigned n = 0;
    while (ring.var_index(name) ||
           (ring.field().kind() == FieldKind::RationalFunctions && name == ring.field().param()) ||
           (ring.field().kind() == FieldKind::Cyclotomic && name == "zeta"))
        name = base + std::to_string(++n);
    return name;
}

ParametricMap::ParametricMap(PolyRing base, std::string param, FlowKind kind,
                             std::vector<MultiPoly> coords_ext, long denom_power)
    : base_(std::move(base)), param_(std::move(param)), kind_(kind),
      ext_(base_.extended({param_})), coords_(std::move(coords_ext)), denom_power_(denom_power) {
    if (coords_.size() != base_.nvars())
        fail(Err::ArityMismatch, "parametric map needs one coordinate per base variable");
    for (const auto& c : coords_)
        if (c.ring() != ext_) fail(Err::RingMismatch, "parametric coordinate in wrong ring");
    if (denom_power_ < 0) fail(Err::InvalidInput, "denominator power must be >= 0");
    if (kind_ == FlowKind::Additive && denom_power_ != 0)
        fail(Err::InvalidInput, "additive flows have no parameter denominator");
}

PolyMap ParametricMap::specialize(const Scalar& value) const {
    if (value.field() != base_.field()) fail(Err::FieldMismatch, "specialization value field");
    if (kind_ == FlowKind::Multiplicative && value.is_zero())
        fail(Err::InvalidInput, "multiplicative parameter must be nonzero");
    std::vector<MultiPoly> images;
    images.reserve(ext_.nvars());
    for (std::size_t i = 0; i < base_.nvars(); ++i)
        images.push_back(MultiPoly::variable(base_, i));
    images.push_back(MultiPoly::constant(base_, value));
    Scalar scale = denom_power_ == 0 ? Scalar::one(base_.field())
                                     : value.pow(-denom_power_);
    std::vector<MultiPoly> coords;
    coords.reserve(coords_.size());
    for (const auto& c : coords_) coords.push_back(substitute(c, images).scale(scale));
    return PolyMap(base_, std::move(coords));
}

ParametricMap exp_flow(const Derivation& d, unsigned bound) {
    NilpotenceResult nil = is_locally_nilpotent(d, bound);
    if (nil.status != NilpotenceResult::Status::Yes)
        fail(Err::NotLocallyNilpotent,
             "derivation image chain for variable " + d.ring().vars()[nil.exhausted_var] +
                 " did not terminate within bound " + std::to_string(bound));
    const PolyRing& base = d.ring();
    std::string u = fresh_param_name(base, "u");
    PolyRing ext = base.extended({u});
    std::size_t uidx = base.nvars();
    std::vector<MultiPoly> coords;
    coords.reserve(base.nvars());
    for (std::size_t i = 0; i < base.nvars(); ++i) {
        MultiPoly acc = MultiPoly::zero(ext);
        MultiPoly g = MultiPoly::variable(base, i);
        Rat fact(1);
        unsigned j = 0;
        while (!g.is_zero()) {
            if (j > 0) fact *= Rat(j);
            Mono um(ext.nvars(), 0);
            um[uidx] = static_cast<Exp>(j);
            acc = acc + coerce(g, ext).mul_term(um, Scalar::from_rat(ext.field(), 1 / fact));
            g = d.apply(g);
            ++j;
        }
        coords.push_back(std::move(acc));
    }
    return ParametricMap(base, u, FlowKind::Additive, std::move(coords), 0);
}

Derivation log_unipotent(const PolyMap& f, unsigned bound) {
    if (bound < 1) fail(Err::InvalidInput, "log bound must be >= 1");
    const PolyRing& ring = f.ring();
    std::vector<MultiPoly> images;
    images.reserve(ring.nvars());
    for (std::size_t i = 0; i < ring.nvars(); ++i) {
        // (F* - Id)^k applied to x_i
        MultiPoly g = f.coords()[i] - MultiPoly::variable(ring, i);
        MultiPoly acc = MultiPoly::zero(ring);
        unsigned k = 1;
        while (!g.is_zero()) {
            if (k > bound)
                fail(Err::NotUnipotentWithinBound,
                     "series for variable " + ring.vars()[i] + " did not terminate within " +
                         std::to_string(bound) + " steps");
            Scalar c = Scalar::from_rat(ring.field(), make_rat((k % 2 == 1) ? 1 : -1, k));
            acc = acc + g.scale(c);
            g = f.pullback(g) - g;
            ++k;
        }
        images.push_back(std::move(acc));
    }
    Derivation d(ring, std::move(images));
    // exp at u=1 must reproduce f; anything else indicates corrupt input
    unsigned exp_bound = std::max(4 * bound * static_cast<unsigned>(ring.nvars()), 256u);
    PolyMap check = exp_flow(d, exp_bound).specialize(Scalar::one(ring.field()));
    if (!(check == PolyMap(ring, f.coords())))
        fail(Err::NotUnipotentWithinBound,
             "series terminated but exp(log) does not reproduce the map");
    return d;
}

long psi_degree(const Derivation& d, const MultiPoly& f, unsigned bound) {
    if (f.ring() != d.ring()) fail(Err::RingMismatch, "psi_degree: polynomial in wrong ring");
    if (f.is_zero()) return -1; // stands for -infinity
    MultiPoly g = f;
    long j = 0;
    while (true) {
        MultiPoly next = d.apply(g);
        if (next.is_zero()) return j;
        g = std::move(next);
        ++j;
        if (j > static_cast<long>(bound))
            fail(Err::NotLocallyNilpotent, "psi_degree chain exceeded bound");
    }
}

bool additive_flow_law_holds(const ParametricMap& psi) {
    if (psi.kind() != FlowKind::Additive)
        fail(Err::InvalidInput, "additive flow law check on a multiplicative flow");
    const PolyRing& base = psi.base_ring();
    std::string u = psi.param();
    std::string w = fresh_param_name(psi.ext_ring(), "w");
    PolyRing ext2 = base.extended({u, w});
    std::size_t uidx = base.nvars(), widx = base.nvars() + 1;

    // psi at parameter w, living in ext2
    std::vector<MultiPoly> at_w;
    {
        std::vector<MultiPoly> images;
        for (std::size_t i = 0; i < base.nvars(); ++i)
            images.push_back(MultiPoly::variable(ext2, i));
        images.push_back(MultiPoly::variable(ext2, widx));
        for (const auto& c : psi.coords()) at_w.push_back(substitute(c, images));
    }
    // lhs: psi_u applied after psi_w
    std::vector<MultiPoly> lhs;
    {
        std::vector<MultiPoly> images = at_w;
        images.push_back(MultiPoly::variable(ext2, uidx));
        for (const auto& c : psi.coords()) lhs.push_back(substitute(c, images));
    }
    // rhs: parameter u+w
    std::vector<MultiPoly> rhs;
    {
        std::vector<MultiPoly> images;
        for (std::size_t i = 0; i < base.nvars(); ++i)
            images.push_back(MultiPoly::variable(ext2, i));
        images.push_back(MultiPoly::variable(ext2, uidx) + MultiPoly::variable(ext2, widx));
        for (const auto& c : psi.coords()) rhs.push_back(substitute(c, images));
    }
    return lhs == rhs;
}

} // namespace polyaut

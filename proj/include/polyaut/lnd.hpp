#ifndef POLYAUT_LND_HPP
#define POLYAUT_LND_HPP

#include <optional>
#include <string>
#include <vector>

#include "polyaut/endo.hpp"
#include "polyaut/poly.hpp"

namespace polyaut {

// A k-derivation of the polynomial ring, given by its values on the
// coordinates and extended by the Leibniz rule.
class Derivation {
public:
    Derivation(PolyRing ring, std::vector<MultiPoly> images);
    static Derivation zero(const PolyRing& ring);

    const PolyRing& ring() const { return ring_; }
    const std::vector<MultiPoly>& images() const { return images_; }
    bool is_zero() const;

    // D(f) = sum_i df/dx_i * D(x_i)
    MultiPoly apply(const MultiPoly& f) const;

    bool operator==(const Derivation& o) const {
        return ring_ == o.ring_ && images_ == o.images_;
    }

private:
    PolyRing ring_;
    std::vector<MultiPoly> images_;
};

struct NilpotenceResult {
    enum class Status { Yes, Unknown } status;
    // Yes: max over variables of the least k with D^k(x_i) = 0.
    unsigned max_index = 0;
    // Unknown: first variable whose chain did not reach zero within bound.
    std::size_t exhausted_var = 0;
};

// D^k kills each variable for some k <= bound iff D is locally nilpotent on
// the whole finitely generated ring. No non-nilpotence certificate is
// attempted; exhaustion reports Unknown.
NilpotenceResult is_locally_nilpotent(const Derivation& d, unsigned bound);

enum class FlowKind { Additive, Multiplicative };

// A one-parameter family of maps: coordinates are polynomials over the base
// ring extended by the formal parameter. Multiplicative flows store the
// coordinates multiplied by param^denom_power, since negative parameter
// powers have no polynomial representation.
class ParametricMap {
public:
    ParametricMap(PolyRing base, std::string param, FlowKind kind,
                  std::vector<MultiPoly> coords_ext, long denom_power);

    const PolyRing& base_ring() const { return base_; }
    const PolyRing& ext_ring() const { return ext_; }
    const std::string& param() const { return param_; }
    FlowKind kind() const { return kind_; }
    long denom_power() const { return denom_power_; }
    const std::vector<MultiPoly>& coords() const { return coords_; }
    std::size_t param_index() const { return base_.nvars(); }

    // Specialize the parameter to a field element and land in the base ring.
    // Multiplicative flows require a nonzero value.
    PolyMap specialize(const Scalar& value) const;

private:
    PolyRing base_;
    std::string param_;
    FlowKind kind_;
    PolyRing ext_;
    std::vector<MultiPoly> coords_;
    long denom_power_;
};

// Picks a parameter name not colliding with ring variables: base, base1, ...
std::string fresh_param_name(const PolyRing& ring, const std::string& base);

// exp uD with coordinates sum_j D^j(x_i) u^j / j!; requires local nilpotence
// within the bound.
ParametricMap exp_flow(const Derivation& d, unsigned bound = 256);

// log of a unipotent automorphism via the alternating series on each
// variable; inverse of exp_flow at u = 1.
Derivation log_unipotent(const PolyMap& f, unsigned bound);

// deg_u exp(uD)(f): the largest j with D^j(f) != 0; -1 encodes f = 0.
long psi_degree(const Derivation& d, const MultiPoly& f, unsigned bound = 10000);

// Formal group law exp(uD) o exp(vD) = exp((u+v)D) as polynomial identity.
bool additive_flow_law_holds(const ParametricMap& psi);

} // namespace polyaut

#endif

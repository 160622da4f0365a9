#ifndef POLYAUT_CLASSIFY_HPP
#define POLYAUT_CLASSIFY_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "polyaut/endo.hpp"
#include "polyaut/ideal.hpp"

namespace polyaut {

// Basis of polynomial invariants of total degree <= D, echelonized
// deterministically; always contains 1. Over Q(x) a rank certificate at a
// rational specialization may settle the absence of nonconstant invariants
// without the exact elimination.
std::vector<MultiPoly> invariant_basis(const PolyMap& F, unsigned degree_bound);

// Lattice of (p, q) with n p + m q = 0 and ord(b) | q: exponents of the
// invariant rational monomials x^p y^q of the diagonal form (a^n x, a^m b y).
std::vector<std::pair<long, long>> diag_invariant_monomials(long n, long m, const Scalar& a,
                                                            const Scalar& b, long bound);

struct NormalFormPhi1 {
    long n, m;
    Scalar a, b; // a of infinite order, b a root of unity
};
struct NormalFormPhi2 {
    Scalar a, b;  // both roots of unity
    MultiPoly p;  // nonzero polynomial in the first variable
};
using NormalForm = std::variant<NormalFormPhi1, NormalFormPhi2>;

// Literal pattern match on the coordinates; no conjugation search.
std::optional<NormalForm> recognize_normal_form(const PolyMap& F);

// Invariant witnesses may be rational monomials (x^p y^q with negative
// exponents); den = 1 for polynomial witnesses.
struct RationalWitness {
    MultiPoly num, den;
};

struct ClassifyOptions {
    unsigned long order_bound = 64;
    unsigned invariant_degree_bound = 8;
};

struct Evidence {
    enum class OrderStatus { Found, NoneUpToBound, BudgetStopped };
    OrderStatus order_status = OrderStatus::NoneUpToBound;
    unsigned long order_bound = 0;
    unsigned long order_found = 0;      // when Found
    unsigned long order_checked_up_to = 0; // iterations verified != Id
    unsigned invariant_degree_bound = 0;
    bool invariant_search_completed = false;
    bool invariant_found = false;
    std::optional<std::vector<Scalar>> fixpoint;
    bool fixpoint_unique = false;
    bool differential_unipotent = false;
    bool map_is_identity = false;
    std::vector<std::string> trail; // human-readable decision log
};

struct ClassificationReport {
    enum class Verdict { NEquals, NAtMost, Inconclusive };
    Verdict verdict = Verdict::Inconclusive;
    int n = -1;
    std::optional<NormalForm> matched_form;
    std::vector<RationalWitness> witnesses;
    Evidence evidence;
};

// Decision cascade of the plane classifier:
//   (1) finite order within bound        -> n = 2
//   (2) normal form or invariant witness -> n = 1
//   (3) unique rational fixpoint with unipotent non-identity differential
//                                        -> n = 0
//   (4) inconclusive with the evidence trail
ClassificationReport classify_plane(const PolyMap& F, const ClassifyOptions& opts = {});

// Candidate fixpoint from the lex Groebner bases of the fixpoint ideal:
// each univariate eliminant must be a perfect power of a linear factor.
std::optional<std::vector<Scalar>> find_rational_fixpoint(const PolyMap& F);

// f o F = f for a rational witness, checked by cross multiplication.
bool witness_invariant(const RationalWitness& w, const PolyMap& F);

} // namespace polyaut

#endif

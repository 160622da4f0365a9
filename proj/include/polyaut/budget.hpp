#ifndef POLYAUT_BUDGET_HPP
#define POLYAUT_BUDGET_HPP

#include <cstddef>
#include <cstdint>

#include "polyaut/errors.hpp"

namespace polyaut {

// Cooperative resource budgets. Long-running operations (polynomial
// products, substitutions, Groebner runs, linear solves) check the active
// budget and abort with BudgetExceeded instead of grinding on.
//
// Budgets are scoped: installing a BudgetScope swaps the thread-local
// budget for the lifetime of the scope.
struct Budget {
    // Maximum number of terms a single polynomial may reach.
    std::size_t max_terms = 200000;
    // Maximum term count for polynomials inside Groebner runs.
    std::size_t max_gb_terms = 100000;
    // Maximum number of S-pairs processed per Groebner run.
    std::size_t max_pairs = 10000;
    // Weighted scalar-operation budget for linear solves (invariant
    // search). Operations over Q count 1, cyclotomic fields 20, rational
    // function fields 200; the weights are a rough cost model.
    std::uint64_t max_elim_ops = 400000000ull;
    // Weighted scalar-operation budget for polynomial products and
    // substitutions (same weights). 0 disables the check; the classifier
    // installs a small allotment around its order search so that iterates
    // with expensive coefficient fields abort early.
    std::uint64_t max_engine_ops = 0;
};

const Budget& current_budget();

class BudgetScope {
public:
    explicit BudgetScope(const Budget& b);
    ~BudgetScope();
    BudgetScope(const BudgetScope&) = delete;
    BudgetScope& operator=(const BudgetScope&) = delete;

private:
    Budget prev_;
    std::uint64_t prev_ops_ = 0;
};

inline void check_term_budget(std::size_t nterms, const char* where) {
    if (nterms > current_budget().max_terms)
        fail(Err::BudgetExceeded, std::string("term budget exceeded in ") + where);
}

// Engine-op accounting. The counter is scoped together with the budget:
// entering a BudgetScope starts from zero, leaving restores the outer count.
void charge_engine_ops(std::uint64_t weighted);

} // namespace polyaut

#endif

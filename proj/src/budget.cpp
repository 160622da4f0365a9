#include "polyaut/budget.hpp"

namespace polyaut {

namespace {
thread_local Budget g_budget{};
thread_local std::uint64_t g_engine_ops = 0;
} // namespace

const Budget& current_budget() { return g_budget; }

BudgetScope::BudgetScope(const Budget& b) : prev_(g_budget), prev_ops_(g_engine_ops) {
    g_budget = b;
    g_engine_ops = 0;
}

BudgetScope::~BudgetScope() {
    g_budget = prev_;
    g_engine_ops = prev_ops_;
}

void charge_engine_ops(std::uint64_t weighted) {
    if (g_budget.max_engine_ops == 0) return;
    g_engine_ops += weighted;
    if (g_engine_ops > g_budget.max_engine_ops)
        fail(Err::BudgetExceeded, "engine operation budget exceeded");
}

} // namespace polyaut

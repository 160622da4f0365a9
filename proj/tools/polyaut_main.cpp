// polyaut: exact computer algebra for polynomial automorphisms of affine
// space. One job per invocation: inputs are JSON on stdin or a file, the
// report is JSON on stdout, structured errors go to stderr.
//
// Exit codes: 0 success, 2 input error, 3 inconclusive or budget exceeded,
// 4 internal invariant violation.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "polyaut/json_io.hpp"

namespace {

using polyaut::jio::Json;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) polyaut::fail(polyaut::Err::InvalidInput, "cannot open input file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        polyaut::fail(polyaut::Err::InvalidInput, std::string("invalid JSON: ") + e.what());
    }
}

struct BudgetFlags {
    long max_terms = -1;
    long max_pairs = -1;
    long degree_bound = -1;
    long order_bound = -1;

    void attach(CLI::App* cmd) {
        cmd->add_option("--max-terms", max_terms, "term budget per polynomial");
        cmd->add_option("--max-pairs", max_pairs, "Groebner pair budget");
        cmd->add_option("--degree-bound", degree_bound, "invariant search degree bound");
        cmd->add_option("--order-bound", order_bound, "finite order search bound");
    }

    polyaut::Budget apply() const {
        polyaut::Budget b = polyaut::current_budget();
        if (max_terms > 0) {
            b.max_terms = static_cast<std::size_t>(max_terms);
            b.max_gb_terms = static_cast<std::size_t>(max_terms);
        }
        if (max_pairs > 0) b.max_pairs = static_cast<std::size_t>(max_pairs);
        return b;
    }

    void fold_into(Json& inputs, const std::string& command) const {
        if (degree_bound >= 0) {
            if (command == "invariants" || command == "poloni-moser")
                inputs["degree_bound"] = degree_bound;
            else if (command == "classify")
                inputs["invariant_degree_bound"] = degree_bound;
        }
        if (order_bound > 0) {
            if (command == "classify")
                inputs["order_bound"] = order_bound;
            else if (command == "order")
                inputs["bound"] = order_bound;
        }
    }
};

int emit(const polyaut::jio::CommandResult& res, const std::string& out_path) {
    std::string text = res.out.dump(2) + "\n";
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) polyaut::fail(polyaut::Err::InvalidInput, "cannot open output file " + out_path);
        out << text;
    }
    std::cout << text;
    return res.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact algebra on polynomial automorphisms of affine n-space"};
    app.require_subcommand(1);

    const std::vector<std::string> commands = {
        "compose",     "invert",     "iterate-degrees", "order",           "exp",
        "log",         "psi-degree", "weight-split",    "build-flow",      "decompose",
        "gb",          "reduce",     "fixpoints",       "unique-fixpoint", "invariants",
        "classify",    "poloni-moser", "verify-conjugacy"};

    struct SubState {
        std::string in_path = "-";
        std::string json_out;
        BudgetFlags budgets;
    };
    std::map<std::string, SubState> state;

    for (const auto& name : commands) {
        CLI::App* sub = app.add_subcommand(name, "run the " + name + " operation");
        SubState& st = state[name];
        if (name != "poloni-moser")
            sub->add_option("--in", st.in_path, "inputs JSON file ('-' for stdin)");
        else
            sub->add_option("--in", st.in_path, "inputs JSON file (optional)")->default_str("");
        sub->add_option("--json", st.json_out, "also write the report to this file");
        st.budgets.attach(sub);
    }
    SubState run_state;
    std::string job_path = "-";
    CLI::App* run_cmd = app.add_subcommand("run", "execute a full JobSpec document");
    run_cmd->add_option("jobfile", job_path, "JobSpec JSON file ('-' for stdin)");
    run_state.budgets.attach(run_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            polyaut::BudgetScope scope(run_state.budgets.apply());
            return emit(polyaut::jio::run_jobspec(parse_json(read_input(job_path))), "");
        }
        for (const auto& name : commands) {
            CLI::App* sub = app.get_subcommand(name);
            if (!sub->parsed()) continue;
            SubState& st = state[name];
            Json inputs = Json::object();
            if (name == "poloni-moser") {
                if (!st.in_path.empty() && st.in_path != "-")
                    inputs = parse_json(read_input(st.in_path));
            } else {
                inputs = parse_json(read_input(st.in_path));
            }
            st.budgets.fold_into(inputs, name);
            polyaut::BudgetScope scope(st.budgets.apply());
            return emit(polyaut::jio::run_command(name, inputs), st.json_out);
        }
        return 2;
    } catch (const polyaut::AlgebraError& e) {
        std::cerr << polyaut::jio::error_to_json(e).dump(2) << "\n";
        return polyaut::jio::exit_code_for(e.code());
    } catch (const std::exception& e) {
        Json j;
        j["schema_version"] = polyaut::jio::kSchemaVersion;
        j["error"] = Json{{"code", "InternalError"}, {"message", e.what()}};
        std::cerr << j.dump(2) << "\n";
        return 4;
    }
}

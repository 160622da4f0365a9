#ifndef POLYAUT_JSON_IO_HPP
#define POLYAUT_JSON_IO_HPP

#include <json.hpp>

#include <string>

#include "polyaut/budget.hpp"
#include "polyaut/casestudy.hpp"
#include "polyaut/classify.hpp"
#include "polyaut/torus.hpp"

namespace polyaut::jio {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

// strict object readers: unknown keys are rejected
void check_keys(const Json& obj, std::initializer_list<const char*> allowed,
                const char* where);

FieldSpec field_from_json(const Json& j);
Json field_to_json(const FieldSpec& f);

PolyRing ring_from_json(const Json& j);
Json ring_to_json(const PolyRing& r);

PolyMap map_from_json(const Json& j);
Json map_to_json(const PolyMap& m);

Derivation derivation_from_json(const Json& j);
Json derivation_to_json(const Derivation& d);

ParametricMap pmap_from_json(const Json& j);
Json pmap_to_json(const ParametricMap& p);

Ideal ideal_from_json(const Json& j);
Json ideal_to_json(const Ideal& i);

Json matrix_to_json(const Matrix& m);
Json report_to_json(const ClassificationReport& r);
Json pm_report_to_json(const PoloniMoserReport& r);

Budget budget_from_json(const Json& j, Budget base);

struct CommandResult {
    Json out;
    int exit_code = 0;
};

// Core dispatcher shared by the CLI subcommands and the `run` jobspec path.
CommandResult run_command(const std::string& command, const Json& inputs);

// Full JobSpec: {"schema_version", "command", "inputs", "budgets"?}
CommandResult run_jobspec(const Json& job);

int exit_code_for(Err code);
Json error_to_json(const AlgebraError& e);

} // namespace polyaut::jio

#endif

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "kgw/congruence.hpp"
#include "kgw/congruence_result.hpp"
#include "kgw/contributions.hpp"
#include "kgw/fjrw_formal.hpp"
#include "kgw/graphs.hpp"
#include "kgw/symmetry.hpp"

namespace kgw {

// nlohmann::json keeps object keys in a std::map, so every dump is key-sorted.
using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

Json to_json(const CongruenceResult& result);
/// Inverse of to_json. Throws InvalidConfig on schema violations.
CongruenceResult congruence_from_json(const Json& j);

Json to_json(const LoopData& ld, const std::vector<unsigned>& primes);
Json to_json(const QlReport& report);
Json to_json(const LocalizationGraph& graph);
Json to_json(const std::vector<LocalizationGraph>& graphs);
Json to_json(const HodgeRationalFunction& f);
Json to_json(const GraphContribution& contribution);
Json to_json(const CrosscheckReport& report);
Json to_json(const IdentityReport& report);
Json to_json(const B41Report& report);

/// Adds "schema" and renders with two-space indentation and a trailing newline.
std::string emit_json(Json document);
Json read_json_file(const std::string& path);

}  // namespace kgw

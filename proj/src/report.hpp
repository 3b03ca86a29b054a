#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "analyzer.hpp"
#include "degenerate.hpp"

namespace conekit {

/// Current time as ISO 8601 UTC. The only nondeterministic report field.
std::string timestamp_utc();

/// Report documents share the shape {verdict, parameters, residuals,
/// witnesses, seed, config, timestamp}; absent sections are empty.
nlohmann::json report_check(const CheckReport& report, uint64_t seed, int requested_pairs,
                            double tau_rel);

nlohmann::json report_validation(const ValidationReport& report, uint64_t seed);

nlohmann::json report_classification(const Classification& result, uint64_t seed,
                                     const ClassifyConfig& config);

nlohmann::json report_degree(const DegreeResult& result, const Event& base, int subdivision,
                             uint64_t seed);

}  // namespace conekit

#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "cfslice/harness.hpp"

namespace cfslice {

using json = nlohmann::json;

// Raised for malformed documents, unknown keys, or bad override paths; the
// CLI maps it to the usage exit code.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunSettings {
  SystemConfig config;
  SliceMix mix;
  TrafficRanges traffic;
  // Optional custom solver pair for single runs; empty means the scheme's
  // own solvers. Names follow allocator_by_name and the associator set.
  std::string allocator;
  std::string associator;
};

// Strict parse: every key must be known, every invariant must hold.
RunSettings parse_run_settings(const json& doc);
json run_settings_to_json(const RunSettings& rs);

// Applies a "dotted.key=value" override onto a config document; the path
// must already exist (a leading "config." prefix is accepted and dropped).
void apply_override(json& doc, const std::string& assignment);

json scenario_to_json(const Scenario& sc);

json channel_to_json(const ChannelState& st);
ChannelState channel_from_json(const json& doc);

json association_to_json(const Association& assoc);  // sparse (k,m) pairs
Association association_from_json(const json& doc);

// +inf and NaN become null.
json report_to_json(const EvalReport& report);

json trace_to_json(const AoTrace& trace);

json sweep_result_to_json(const SweepResult& result);
SweepResult sweep_result_from_json(const json& doc);

json gain_table_to_json(const GainTable& table);

}  // namespace cfslice

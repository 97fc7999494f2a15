#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "dropoff/dynamics.hpp"
#include "dropoff/optimum.hpp"
#include "dropoff/pricing.hpp"

namespace dropoff {

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Accepts either a bare config object or a run manifest wrapping one under
// "config". Unknown keys are rejected by name; "neighbors" is accepted as an
// alias for "neighborhood"; s_max takes a number or the string "inf".
SimConfig parse_sim_config_json(const std::string& text);
SimConfig load_sim_config(const std::string& path);

struct CompareConfig {
  SimConfig base;
  std::vector<PriceSpec> prices;
};

// Same key set plus a "prices" array of {price, neighborhood} entries.
CompareConfig load_compare_config(const std::string& path);

// Canonical JSON echo; parse_sim_config_json inverts it exactly.
std::string sim_config_to_json(const SimConfig& config);

std::vector<std::string> config_warnings(const SimConfig& config);

PriceKind parse_price_kind(const std::string& name);
Schedule parse_schedule(const std::string& name);
SimMode parse_sim_mode(const std::string& name);
ObjectiveKind parse_objective_kind(const std::string& name);
std::string to_string(PriceKind kind);
std::string to_string(Schedule kind);
std::string to_string(SimMode mode);
std::string to_string(ObjectiveKind kind);

}  // namespace dropoff

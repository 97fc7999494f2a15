#include "dropoff/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

namespace dropoff {

namespace {

using nlohmann::json;

[[noreturn]] void bad_key(const std::string& key, const std::string& expect) {
  throw config_error("config: key '" + key + "' " + expect);
}

std::uint64_t get_uint(const json& j, const std::string& key,
                       std::uint64_t minimum) {
  const json& v = j.at(key);
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() &&
                                 v.get<long long>() < 0)) {
    bad_key(key, "must be a non-negative integer");
  }
  const std::uint64_t value = v.get<std::uint64_t>();
  if (value < minimum) {
    bad_key(key, "must be at least " + std::to_string(minimum));
  }
  return value;
}

double get_positive(const json& j, const std::string& key) {
  const json& v = j.at(key);
  if (!v.is_number()) {
    bad_key(key, "must be a number");
  }
  const double value = v.get<double>();
  if (!(value > 0.0)) {
    bad_key(key, "must be positive");
  }
  return value;
}

std::string get_string(const json& j, const std::string& key) {
  const json& v = j.at(key);
  if (!v.is_string()) {
    bad_key(key, "must be a string");
  }
  return v.get<std::string>();
}

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const char* where) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      throw config_error(std::string("config: unknown key '") + item.key() +
                         "' in " + where);
    }
  }
}

PriceSpec parse_price_spec(const json& obj) {
  check_keys(obj, {"price", "kind", "neighborhood", "neighbors"}, "price spec");
  PriceSpec spec;
  const std::string kind_key =
      obj.contains("price") ? "price" : (obj.contains("kind") ? "kind" : "");
  if (kind_key.empty()) {
    throw config_error("config: price spec needs a 'price' kind");
  }
  spec.kind = parse_price_kind(get_string(obj, kind_key));
  if (obj.contains("neighborhood")) {
    spec.neighborhood = static_cast<int>(get_uint(obj, "neighborhood", 1));
  } else if (obj.contains("neighbors")) {
    spec.neighborhood = static_cast<int>(get_uint(obj, "neighbors", 1));
  }
  return spec;
}

const std::set<std::string> kConfigKeys = {
    "price",       "neighborhood", "neighbors", "k",       "region",
    "schedule",    "mode",         "steps",     "s_max",   "seed",
    "record_every", "eps_fix",     "solver",    "init",    "prices"};

SimConfig parse_sim_config(const json& root, bool allow_prices) {
  if (!root.is_object()) {
    throw config_error("config: top level must be an object");
  }
  const json& obj = root.contains("config") ? root.at("config") : root;
  if (!obj.is_object()) {
    bad_key("config", "must be an object");
  }
  check_keys(obj, kConfigKeys, "config");
  if (!allow_prices && obj.contains("prices")) {
    throw config_error("config: key 'prices' is only valid for comparisons");
  }

  SimConfig c;
  if (obj.contains("price")) {
    c.price.kind = parse_price_kind(get_string(obj, "price"));
  }
  if (obj.contains("neighborhood")) {
    c.price.neighborhood = static_cast<int>(get_uint(obj, "neighborhood", 1));
  } else if (obj.contains("neighbors")) {
    c.price.neighborhood = static_cast<int>(get_uint(obj, "neighbors", 1));
  }
  if (obj.contains("k")) {
    c.k = get_uint(obj, "k", 1);
  }
  if (obj.contains("region")) {
    c.region = get_string(obj, "region");
  }
  if (obj.contains("schedule")) {
    c.schedule = parse_schedule(get_string(obj, "schedule"));
  }
  if (obj.contains("mode")) {
    c.mode = parse_sim_mode(get_string(obj, "mode"));
  }
  if (obj.contains("steps")) {
    c.steps = get_uint(obj, "steps", 0);
  }
  if (obj.contains("s_max")) {
    const json& v = obj.at("s_max");
    if (v.is_string()) {
      if (v.get<std::string>() != "inf") {
        bad_key("s_max", "must be a positive number or \"inf\"");
      }
      c.s_max = std::numeric_limits<double>::infinity();
    } else {
      c.s_max = get_positive(obj, "s_max");
    }
  }
  if (obj.contains("seed")) {
    c.seed = get_uint(obj, "seed", 0);
  }
  if (obj.contains("record_every")) {
    c.record_every = get_uint(obj, "record_every", 1);
  }
  if (obj.contains("eps_fix")) {
    c.eps_fix = get_positive(obj, "eps_fix");
  }
  if (obj.contains("solver")) {
    const json& s = obj.at("solver");
    if (!s.is_object()) {
      bad_key("solver", "must be an object");
    }
    check_keys(s, {"grid_resolution", "refine_tolerance", "max_refine_iters"},
               "solver");
    if (s.contains("grid_resolution")) {
      c.solver.grid_resolution =
          static_cast<int>(get_uint(s, "grid_resolution", 2));
    }
    if (s.contains("refine_tolerance")) {
      c.solver.refine_tolerance = get_positive(s, "refine_tolerance");
    }
    if (s.contains("max_refine_iters")) {
      c.solver.max_refine_iters =
          static_cast<int>(get_uint(s, "max_refine_iters", 1));
    }
  }
  if (obj.contains("init")) {
    c.init = get_string(obj, "init");
  }
  return c;
}

json parse_text(const std::string& text) {
  json root = json::parse(text, nullptr, false);
  if (root.is_discarded()) {
    throw config_error("config: not valid JSON");
  }
  return root;
}

}  // namespace

SimConfig parse_sim_config_json(const std::string& text) {
  return parse_sim_config(parse_text(text), false);
}

SimConfig load_sim_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw config_error("config: cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_sim_config_json(buf.str());
}

CompareConfig load_compare_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw config_error("config: cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  const json root = parse_text(buf.str());
  CompareConfig cc;
  cc.base = parse_sim_config(root, true);
  const json& obj = root.contains("config") ? root.at("config") : root;
  if (!obj.contains("prices")) {
    throw config_error("config: comparison needs a 'prices' array");
  }
  const json& prices = obj.at("prices");
  if (!prices.is_array() || prices.empty()) {
    bad_key("prices", "must be a non-empty array");
  }
  for (const json& entry : prices) {
    if (!entry.is_object()) {
      bad_key("prices", "entries must be objects");
    }
    cc.prices.push_back(parse_price_spec(entry));
  }
  return cc;
}

std::string sim_config_to_json(const SimConfig& config) {
  json j;
  j["price"] = to_string(config.price.kind);
  j["neighborhood"] = config.price.neighborhood;
  j["k"] = config.k;
  j["region"] = config.region;
  j["schedule"] = to_string(config.schedule);
  j["mode"] = to_string(config.mode);
  j["steps"] = config.steps;
  if (std::isinf(config.s_max)) {
    j["s_max"] = "inf";
  } else {
    j["s_max"] = config.s_max;
  }
  j["seed"] = config.seed;
  j["record_every"] = config.record_every;
  j["eps_fix"] = config.eps_fix;
  j["solver"] = {{"grid_resolution", config.solver.grid_resolution},
                 {"refine_tolerance", config.solver.refine_tolerance},
                 {"max_refine_iters", config.solver.max_refine_iters}};
  j["init"] = config.init;
  return j.dump(2);
}

std::vector<std::string> config_warnings(const SimConfig& config) {
  std::vector<std::string> warnings;
  if (config.price.kind != PriceKind::UstarLocal) {
    const int m = config.price.neighborhood;
    if (config.k >= 2 && m > static_cast<int>(config.k) - 1) {
      warnings.push_back("neighborhood " + std::to_string(m) +
                         " exceeds k-1, clamped to " +
                         std::to_string(config.k - 1));
    }
    if (config.k == 1) {
      warnings.push_back("single car: neighborhood prices use only the boundary term");
    }
  }
  return warnings;
}

PriceKind parse_price_kind(const std::string& name) {
  if (name == "USTAR_LOCAL") {
    return PriceKind::UstarLocal;
  }
  if (name == "V") {
    return PriceKind::V;
  }
  if (name == "W") {
    return PriceKind::W;
  }
  throw config_error("config: key 'price' has unknown value '" + name +
                     "' (expected USTAR_LOCAL, V, or W)");
}

Schedule parse_schedule(const std::string& name) {
  if (name == "PERMUTED") {
    return Schedule::Permuted;
  }
  if (name == "IID") {
    return Schedule::Iid;
  }
  if (name == "CYCLIC") {
    return Schedule::Cyclic;
  }
  throw config_error("config: key 'schedule' has unknown value '" + name +
                     "' (expected PERMUTED, IID, or CYCLIC)");
}

SimMode parse_sim_mode(const std::string& name) {
  if (name == "async") {
    return SimMode::Async;
  }
  if (name == "sync") {
    return SimMode::Sync;
  }
  throw config_error("config: key 'mode' has unknown value '" + name +
                     "' (expected async or sync)");
}

ObjectiveKind parse_objective_kind(const std::string& name) {
  if (name == "SOCIAL_MAX") {
    return ObjectiveKind::SocialMax;
  }
  if (name == "SUM_USTAR") {
    return ObjectiveKind::SumUstar;
  }
  if (name == "SUM_V") {
    return ObjectiveKind::SumV;
  }
  if (name == "SUM_W") {
    return ObjectiveKind::SumW;
  }
  throw config_error("config: unknown objective '" + name +
                     "' (expected SOCIAL_MAX, SUM_USTAR, SUM_V, or SUM_W)");
}

std::string to_string(PriceKind kind) {
  switch (kind) {
    case PriceKind::UstarLocal:
      return "USTAR_LOCAL";
    case PriceKind::V:
      return "V";
    case PriceKind::W:
      return "W";
  }
  return "USTAR_LOCAL";
}

std::string to_string(Schedule kind) {
  switch (kind) {
    case Schedule::Permuted:
      return "PERMUTED";
    case Schedule::Iid:
      return "IID";
    case Schedule::Cyclic:
      return "CYCLIC";
  }
  return "PERMUTED";
}

std::string to_string(SimMode mode) {
  return mode == SimMode::Sync ? "sync" : "async";
}

std::string to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::SocialMax:
      return "SOCIAL_MAX";
    case ObjectiveKind::SumUstar:
      return "SUM_USTAR";
    case ObjectiveKind::SumV:
      return "SUM_V";
    case ObjectiveKind::SumW:
      return "SUM_W";
  }
  return "SOCIAL_MAX";
}

}  // namespace dropoff

#include "mmon/config_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include "json.hpp"

#include "mmon/errors.hpp"

namespace mmon {
namespace {

using nlohmann::json;

void check_keys(const json& obj, const char* where,
                std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) known = known || it.key() == key;
    if (!known) {
      throw ValidationError("config: unknown key '" + it.key() + "' in " +
                            where);
    }
  }
}

double as_number(const json& value, const std::string& name) {
  if (!value.is_number()) {
    throw ValidationError("config: '" + name + "' must be a number");
  }
  return value.get<double>();
}

std::uint64_t as_count(const json& value, const std::string& name) {
  if (value.is_number_unsigned()) return value.get<std::uint64_t>();
  if (value.is_number_integer() && value.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(value.get<std::int64_t>());
  }
  throw ValidationError("config: '" + name +
                        "' must be a non-negative integer");
}

bool as_bool(const json& value, const std::string& name) {
  if (!value.is_boolean()) {
    throw ValidationError("config: '" + name + "' must be true or false");
  }
  return value.get<bool>();
}

std::string as_string(const json& value, const std::string& name) {
  if (!value.is_string()) {
    throw ValidationError("config: '" + name + "' must be a string");
  }
  return value.get<std::string>();
}

std::vector<double> as_number_array(const json& value,
                                    const std::string& name) {
  if (!value.is_array()) {
    throw ValidationError("config: '" + name + "' must be an array of numbers");
  }
  std::vector<double> out;
  out.reserve(value.size());
  for (const json& item : value) out.push_back(as_number(item, name));
  return out;
}

MachineParams parse_machine(const json& obj, std::size_t index) {
  const std::string where = "machines[" + std::to_string(index) + "]";
  if (!obj.is_object()) {
    throw ValidationError("config: " + where + " must be an object");
  }
  check_keys(obj, where.c_str(), {"alpha", "beta", "gamma", "lambda"});
  for (const char* required : {"alpha", "beta", "lambda"}) {
    if (!obj.contains(required)) {
      throw ValidationError("config: " + where + " is missing '" + required +
                            "'");
    }
  }
  MachineParams params;
  params.alpha = as_number(obj.at("alpha"), where + ".alpha");
  params.beta = as_number(obj.at("beta"), where + ".beta");
  params.lambda = as_number(obj.at("lambda"), where + ".lambda");
  params.gamma = obj.contains("gamma")
                     ? as_number(obj.at("gamma"), where + ".gamma")
                     : params.beta;
  return params;
}

SweepSpec parse_sweep(const json& obj) {
  if (!obj.is_object()) {
    throw ValidationError("config: 'sweep' must be an object");
  }
  check_keys(obj, "sweep", {"kind", "grid"});
  if (!obj.contains("kind") || !obj.contains("grid")) {
    throw ValidationError("config: 'sweep' needs both 'kind' and 'grid'");
  }
  SweepSpec sweep;
  const std::string kind = as_string(obj.at("kind"), "sweep.kind");
  if (kind == "mu") {
    sweep.kind = SweepSpec::Kind::kMu;
  } else if (kind == "budget") {
    sweep.kind = SweepSpec::Kind::kBudget;
  } else {
    throw ValidationError("config: sweep.kind must be 'mu' or 'budget'");
  }
  sweep.grid = as_number_array(obj.at("grid"), "sweep.grid");
  return sweep;
}

SimConfig parse_sim(const json& obj) {
  if (!obj.is_object()) {
    throw ValidationError("config: 'sim' must be an object");
  }
  check_keys(obj, "sim",
             {"horizon", "replications", "seed", "feedback", "warmup"});
  SimConfig sim;
  if (obj.contains("horizon")) {
    sim.horizon = as_number(obj.at("horizon"), "sim.horizon");
  }
  if (obj.contains("replications")) {
    sim.replications = as_count(obj.at("replications"), "sim.replications");
  }
  if (obj.contains("seed")) sim.seed = as_count(obj.at("seed"), "sim.seed");
  if (obj.contains("feedback")) {
    sim.feedback = as_bool(obj.at("feedback"), "sim.feedback");
  }
  if (obj.contains("warmup")) {
    sim.warmup = as_number(obj.at("warmup"), "sim.warmup");
  }
  return sim;
}

}  // namespace

const MachineParams& RunConfig::single_machine() const {
  if (machines.size() != 1) {
    throw ValidationError("config: this command needs exactly one machine, " +
                          std::string("got ") +
                          std::to_string(machines.size()));
  }
  return machines.front();
}

double RunConfig::require_mu() const {
  if (!mu) {
    throw ValidationError("config: this command needs a top-level 'mu' value");
  }
  return *mu;
}

FleetSpec RunConfig::fleet() const {
  FleetSpec spec;
  spec.machines = machines;
  if (weights.empty()) {
    spec.w.assign(machines.size(),
                  1.0 / static_cast<double>(machines.size()));
  } else {
    spec.w = weights;
  }
  spec.w_a = w_a;
  spec.w_r = w_r;
  spec.budget = budget;
  return spec;
}

SimilarityMap RunConfig::map() const {
  if (map_name == "exact") return SimilarityMap::exact();
  if (map_name == "busy_equiv") return SimilarityMap::busy_equiv();
  throw ValidationError("config: 'map' must be 'exact' or 'busy_equiv'");
}

std::vector<Policy> RunConfig::effective_policies() const {
  if (!policies.empty()) return policies;
  return {Policy::kUniform, Policy::kWeighted, Policy::kWarOpt,
          Policy::kWafOpt};
}

std::vector<double> RunConfig::mu_grid() const {
  if (sweep) {
    if (sweep->kind != SweepSpec::Kind::kMu) {
      throw ValidationError(
          "config: sweep.kind is 'budget' but this command sweeps μ");
    }
    return sweep->grid;
  }
  std::vector<double> grid;
  grid.reserve(201);
  for (int j = 0; j <= 200; ++j) grid.push_back(j / 20.0);
  return grid;
}

std::vector<double> RunConfig::budget_grid() const {
  if (sweep) {
    if (sweep->kind != SweepSpec::Kind::kBudget) {
      throw ValidationError(
          "config: sweep.kind is 'mu' but this command sweeps the budget");
    }
    return sweep->grid;
  }
  std::vector<double> grid;
  grid.reserve(20);
  for (int j = 0; j < 20; ++j) {
    grid.push_back(0.5 + (10.0 - 0.5) * j / 19.0);
  }
  return grid;
}

RunConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config parse error: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ValidationError("config: the document root must be an object");
  }
  check_keys(doc, "the top level",
             {"machines", "weights", "w_a", "w_r", "budget", "mu", "map",
              "sweep", "policies", "sim"});
  if (!doc.contains("machines")) {
    throw ValidationError("config: 'machines' is required");
  }
  if (!doc.at("machines").is_array() || doc.at("machines").empty()) {
    throw ValidationError("config: 'machines' must be a non-empty array");
  }

  RunConfig cfg;
  for (std::size_t i = 0; i < doc.at("machines").size(); ++i) {
    cfg.machines.push_back(parse_machine(doc.at("machines")[i], i));
  }
  if (doc.contains("weights")) {
    cfg.weights = as_number_array(doc.at("weights"), "weights");
  }
  if (doc.contains("w_a")) cfg.w_a = as_number(doc.at("w_a"), "w_a");
  if (doc.contains("w_r")) cfg.w_r = as_number(doc.at("w_r"), "w_r");
  if (doc.contains("budget")) {
    cfg.budget = as_number(doc.at("budget"), "budget");
  }
  if (doc.contains("mu")) cfg.mu = as_number(doc.at("mu"), "mu");
  if (doc.contains("map")) {
    cfg.map_name = as_string(doc.at("map"), "map");
    cfg.map();  // fail now on unknown names, not at first use
  }
  if (doc.contains("sweep")) cfg.sweep = parse_sweep(doc.at("sweep"));
  if (doc.contains("policies")) {
    if (!doc.at("policies").is_array()) {
      throw ValidationError("config: 'policies' must be an array of names");
    }
    for (const json& name : doc.at("policies")) {
      cfg.policies.push_back(
          policy_from_name(as_string(name, "policies entry")));
    }
  }
  if (doc.contains("sim")) cfg.sim = parse_sim(doc.at("sim"));
  cfg.pgd.seed = cfg.sim.seed;
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ValidationError("cannot open config file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

}  // namespace mmon

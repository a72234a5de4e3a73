#include "ck/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ck {

namespace {

using nlohmann::json;

const std::set<std::string> kKnownKeys = {
    "method",      "methods",       "N_p",
    "N_s",         "N_s_list",      "beta",
    "beta_grid",   "cost",          "W",
    "t_min",       "t_max",         "e_M",
    "kappa",       "r",             "samples",
    "seed",        "values",        "trim_alpha",
    "yes_no_cutoff", "forced_choice", "allow_even_groups",
    "common_random_numbers", "quad_nodes", "quad_tolerance",
};

[[noreturn]] void reject(const std::string& key, const std::string& why) {
  throw std::invalid_argument("config key \"" + key + "\": " + why);
}

rational parse_budget(const json& value) {
  if (value.is_string()) return rational::parse(value.get<std::string>());
  if (value.is_number_integer()) return rational(value.get<std::int64_t>());
  if (value.is_number_float()) {
    std::ostringstream text;
    text << value.get<double>();
    return rational::parse(text.str());
  }
  reject("W", "expected a number or a rational string like \"15\" or \"9/10\"");
}

std::vector<double> parse_beta_grid(const json& value) {
  std::vector<double> grid;
  if (value.is_array()) {
    for (const json& v : value) grid.push_back(v.get<double>());
  } else if (value.is_object()) {
    for (const auto& [k, v] : value.items()) {
      if (k != "from" && k != "to" && k != "step") reject("beta_grid." + k, "unknown key");
    }
    const double from = value.at("from").get<double>();
    const double to = value.at("to").get<double>();
    const double step = value.at("step").get<double>();
    if (step <= 0.0) reject("beta_grid.step", "must be > 0");
    for (double b = from; b <= to + 1e-9; b += step) grid.push_back(b);
  } else {
    reject("beta_grid", "expected an array or {from, to, step}");
  }
  if (grid.empty()) reject("beta_grid", "must be nonempty");
  for (double b : grid) {
    if (b < 0.0) reject("beta_grid", "beta must be >= 0");
  }
  return grid;
}

std::vector<aggregation_method> parse_methods(const json& root, double trim_alpha, double cutoff) {
  std::vector<std::string> names;
  if (root.contains("method") && root.contains("methods")) {
    reject("methods", "give either method or methods, not both");
  }
  if (root.contains("method")) {
    names.push_back(root.at("method").get<std::string>());
  } else if (root.contains("methods")) {
    const json& m = root.at("methods");
    if (m.is_string() && m.get<std::string>() == "all") {
      for (const aggregation_method& am : aggregation_method::all()) names.push_back(am.name());
    } else if (m.is_array()) {
      for (const json& v : m) names.push_back(v.get<std::string>());
    } else {
      reject("methods", "expected \"all\" or an array of method names");
    }
  } else {
    names.push_back("arithmetic_mean");
  }
  std::vector<aggregation_method> methods;
  for (const std::string& name : names) {
    aggregation_method m = aggregation_method::from_name(name);
    m.alpha = trim_alpha;
    m.cutoff = cutoff;
    methods.push_back(m);
  }
  return methods;
}

}  // namespace

run_spec parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw std::invalid_argument("config: top level must be an object");
  for (const auto& [key, value] : root.items()) {
    if (!kKnownKeys.count(key)) reject(key, "unknown key");
  }

  run_spec spec;
  scenario_config& base = spec.sweep.base;

  base.project_count = root.value("N_p", 30);
  if (base.project_count < 1) reject("N_p", "must be >= 1");

  if (root.contains("W")) {
    base.budget = parse_budget(root.at("W"));
  } else {
    base.budget = rational(base.project_count, 2);
  }
  if (!(base.budget > rational(0))) reject("W", "must be > 0");

  base.t_min = root.value("t_min", 0.0);
  base.t_max = root.value("t_max", 10.0);
  if (!(base.t_min < base.t_max)) reject("t_max", "must be > t_min");
  base.expertise_center = root.value("e_M", 5.0);
  base.noise_multiplier = root.value("kappa", 1.0);
  if (base.noise_multiplier < 0.0) reject("kappa", "must be >= 0");
  base.info_error = root.value("r", 0.0);
  if (base.info_error < 0.0 || base.info_error > 1.0) reject("r", "must be in [0, 1]");
  base.samples = root.value("samples", 20000);
  if (base.samples < 1) reject("samples", "must be >= 1");
  base.master_seed = root.value("seed", std::uint64_t{1});
  base.allow_even_groups = root.value("allow_even_groups", false);
  base.forced_choice = root.value("forced_choice", false);
  base.costs = cost_structure_from_name(root.value("cost", std::string("uniform")));

  if (root.contains("values")) {
    for (const json& v : root.at("values")) base.values.push_back(v.get<double>());
    if (static_cast<int>(base.values.size()) != base.project_count) {
      reject("values", "must have N_p entries");
    }
    for (double v : base.values) {
      if (!(v > 0.0)) reject("values", "must be positive");
    }
  }

  const double trim_alpha = root.value("trim_alpha", 0.2);
  if (trim_alpha < 0.0 || trim_alpha >= 0.5) reject("trim_alpha", "must be in [0, 0.5)");
  const double cutoff = root.value("yes_no_cutoff", 0.0);
  spec.sweep.methods = parse_methods(root, trim_alpha, cutoff);

  if (root.contains("N_s") && root.contains("N_s_list")) {
    reject("N_s_list", "give either N_s or N_s_list, not both");
  }
  if (root.contains("N_s_list")) {
    for (const json& v : root.at("N_s_list")) spec.sweep.group_counts.push_back(v.get<int>());
  } else {
    spec.sweep.group_counts.push_back(root.value("N_s", 3));
  }
  for (int ns : spec.sweep.group_counts) {
    if (ns < 1) reject("N_s", "must be >= 1");
    if (ns % 2 == 0 && !base.allow_even_groups) {
      reject("N_s", "must be odd (set allow_even_groups to override)");
    }
  }

  if (root.contains("beta") && root.contains("beta_grid")) {
    reject("beta_grid", "give either beta or beta_grid, not both");
  }
  if (root.contains("beta_grid")) {
    spec.sweep.beta_grid = parse_beta_grid(root.at("beta_grid"));
  } else {
    const double beta = root.value("beta", 0.0);
    if (beta < 0.0) reject("beta", "must be >= 0");
    spec.sweep.beta_grid.push_back(beta);
  }

  spec.sweep.common_random_numbers = root.value("common_random_numbers", false);
  spec.quadrature.nodes = root.value("quad_nodes", 16);
  if (spec.quadrature.nodes < 8) reject("quad_nodes", "must be >= 8");
  spec.quadrature.tolerance = root.value("quad_tolerance", 1e-4);
  if (!(spec.quadrature.tolerance > 0.0)) reject("quad_tolerance", "must be > 0");

  // surface scenario violations (trim counts, forced-choice shape) now
  for (const aggregation_method& method : spec.sweep.methods) {
    for (int ns : spec.sweep.group_counts) {
      scenario_config probe = base;
      probe.group_count = ns;
      probe.beta = spec.sweep.beta_grid.front();
      probe.method = method;
      probe.validate();
    }
  }
  return spec;
}

run_spec parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string write_config(const run_spec& spec) {
  const scenario_config& base = spec.sweep.base;
  json root;
  root["N_p"] = base.project_count;
  root["W"] = base.budget.str();
  root["t_min"] = base.t_min;
  root["t_max"] = base.t_max;
  root["e_M"] = base.expertise_center;
  root["kappa"] = base.noise_multiplier;
  root["r"] = base.info_error;
  root["samples"] = base.samples;
  root["seed"] = base.master_seed;
  root["cost"] = cost_structure_name(base.costs);
  if (!base.values.empty()) root["values"] = base.values;
  root["trim_alpha"] = spec.sweep.methods.front().alpha;
  root["yes_no_cutoff"] = spec.sweep.methods.front().cutoff;
  root["forced_choice"] = base.forced_choice;
  root["allow_even_groups"] = base.allow_even_groups;
  root["common_random_numbers"] = spec.sweep.common_random_numbers;
  std::vector<std::string> names;
  for (const aggregation_method& m : spec.sweep.methods) names.push_back(m.name());
  root["methods"] = names;
  root["N_s_list"] = spec.sweep.group_counts;
  root["beta_grid"] = spec.sweep.beta_grid;
  root["quad_nodes"] = spec.quadrature.nodes;
  root["quad_tolerance"] = spec.quadrature.tolerance;
  return root.dump(2) + "\n";
}

std::string config_digest(const run_spec& spec) {
  const std::string canonical = write_config(spec);
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return std::string(buf);
}

}  // namespace ck

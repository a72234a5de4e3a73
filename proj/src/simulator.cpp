#include "ck/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "ck/summation.hpp"

namespace ck {

void scenario_config::validate() const {
  if (project_count < 1) throw std::invalid_argument("config: N_p must be >= 1");
  if (group_count < 1) throw std::invalid_argument("config: N_s must be >= 1");
  if (group_count % 2 == 0 && !allow_even_groups) {
    throw std::invalid_argument("config: N_s must be odd (set allow_even_groups to override)");
  }
  if (!(t_min < t_max)) throw std::invalid_argument("config: t_min must be < t_max");
  if (beta < 0.0) throw std::invalid_argument("config: beta must be >= 0");
  if (!(budget > rational(0))) throw std::invalid_argument("config: W must be > 0");
  if (noise_multiplier < 0.0) throw std::invalid_argument("config: kappa must be >= 0");
  if (info_error < 0.0 || info_error > 1.0) throw std::invalid_argument("config: r must be in [0, 1]");
  if (samples < 1) throw std::invalid_argument("config: samples must be >= 1");
  if (!values.empty() && static_cast<int>(values.size()) != project_count) {
    throw std::invalid_argument("config: values override must have N_p entries");
  }
  if (forced_choice &&
      (project_count != 2 || costs != cost_structure::uniform || budget != rational(1))) {
    throw std::invalid_argument("config: forced_choice requires N_p = 2, uniform costs, W = 1");
  }
  if (method.kind == method_kind::trimmed_mean || method.kind == method_kind::winsorized_mean) {
    trim_count(method.alpha, group_count);
  }
}

std::vector<double> scenario_config::project_values() const {
  if (!values.empty()) return values;
  std::vector<double> v(project_count);
  for (int i = 0; i < project_count; ++i) v[i] = i + 1;
  return v;
}

int apply_info_error_delegation(int optimal_group, int group_count, double info_error,
                                stream_rng& stream) {
  if (info_error < 0.0 || info_error > 1.0) {
    throw std::invalid_argument("info_error must be in [0, 1]");
  }
  if (info_error == 0.0 || group_count == 1) return optimal_group;
  const double wrong_prob = (group_count - 1) * info_error / group_count;
  if (stream.next_uniform() >= wrong_prob) return optimal_group;
  int pick = static_cast<int>(stream.next_uniform() * (group_count - 1));
  pick = std::min(pick, group_count - 2);
  return pick < optimal_group ? pick : pick + 1;  // skip the optimal group
}

method_kind apply_info_error_minvar(double info_error, stream_rng& stream) {
  if (info_error < 0.0 || info_error > 1.0) {
    throw std::invalid_argument("info_error must be in [0, 1]");
  }
  if (info_error == 0.0) return method_kind::min_variance;
  return stream.next_uniform() < info_error ? method_kind::arithmetic_mean
                                            : method_kind::min_variance;
}

namespace {

project_set make_projects(const scenario_config& config, std::uint64_t replica) {
  project_set projects;
  projects.values = config.project_values();
  projects.costs = make_costs(config.costs, config.project_count);
  projects.t_min = config.t_min;
  projects.t_max = config.t_max;
  projects.types.resize(config.project_count);
  for (int i = 0; i < config.project_count; ++i) {
    stream_rng stream(config.master_seed, {purpose_tag(stream_purpose::project_type), replica,
                                           static_cast<std::uint64_t>(i)});
    projects.types[i] = stream.next_uniform(config.t_min, config.t_max);
  }
  return projects;
}

// Aggregated item values with the section-7 information-error variants:
// misdirected delegation or per-project fallback from minimum variance to
// the arithmetic mean, coins drawn independently per project.
std::vector<double> degraded_values(const scenario_config& config, const evaluation_matrix& evals,
                                    const project_set& projects, const expertise_panel& panel,
                                    std::uint64_t replica) {
  const int np = projects.count();
  const int ns = panel.size();
  std::vector<double> out(np);
  for (int i = 0; i < np; ++i) {
    stream_rng stream(config.master_seed, {purpose_tag(stream_purpose::info_error), replica,
                                           static_cast<std::uint64_t>(i)});
    if (config.method.kind == method_kind::delegation) {
      const int optimal = pick_delegate(projects.types[i], panel);
      const int chosen = apply_info_error_delegation(optimal, ns, config.info_error, stream);
      out[i] = evals.values.at(i, chosen);
    } else {  // min_variance degrading to the arithmetic mean
      std::vector<double> row(ns);
      for (int j = 0; j < ns; ++j) row[j] = evals.values.at(i, j);
      if (apply_info_error_minvar(config.info_error, stream) == method_kind::arithmetic_mean) {
        out[i] = aggregate_order_weighted(row, order_scheme::mean);
      } else {
        std::span<const double> sig(evals.sigmas.data.data() + static_cast<std::size_t>(i) * ns, ns);
        out[i] = aggregate_min_variance(row, sig);
      }
    }
  }
  return out;
}

bool uses_info_error(const scenario_config& config) {
  return config.info_error > 0.0 && (config.method.kind == method_kind::delegation ||
                                     config.method.kind == method_kind::min_variance);
}

}  // namespace

double run_replica(const scenario_config& config, std::uint64_t replica) {
  config.validate();
  const project_set projects = make_projects(config, replica);
  const expertise_panel panel =
      build_panel(config.expertise_center, config.beta, config.group_count);
  const noise_model noise{config.noise_multiplier};
  const random_source rng{config.master_seed};
  const evaluation_matrix evals = sample_evaluations(projects, panel, noise, rng, replica);

  knapsack_instance instance;
  if (uses_info_error(config)) {
    instance.item_values = degraded_values(config, evals, projects, panel, replica);
    instance.item_weights = projects.costs;
    instance.capacity = config.budget;
  } else {
    instance = collective_instance(config.method, evals, projects, panel, config.budget);
  }

  if (config.forced_choice) {
    // pick exactly one of the two projects, by aggregated value
    const int pick = instance.item_values[0] >= instance.item_values[1] ? 0 : 1;
    return projects.values[pick];
  }

  const selection chosen = solve(instance);
  double realized = 0.0;
  for (int i = 0; i < projects.count(); ++i) {
    if (chosen.chosen[i]) realized += projects.values[i];
  }
  return realized;
}

performance_estimate estimate_performance(const scenario_config& config, int threads) {
  config.validate();
  const int n = config.samples;
  std::vector<double> results(n);
  threads = std::max(1, threads);
  if (threads == 1 || n < 2 * threads) {
    for (int k = 0; k < n; ++k) results[k] = run_replica(config, static_cast<std::uint64_t>(k));
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (int k = t; k < n; k += threads) {
          results[k] = run_replica(config, static_cast<std::uint64_t>(k));
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }

  compensated_sum sum;
  for (double v : results) sum.add(v);
  const double mean = sum.value() / n;

  compensated_sum sq;
  for (double v : results) sq.add((v - mean) * (v - mean));
  const double sample_var = n > 1 ? sq.value() / (n - 1) : 0.0;

  performance_estimate est;
  est.mean = mean;
  est.std_error = std::sqrt(sample_var / n);
  est.samples = n;
  return est;
}

double max_portfolio_value(const scenario_config& config) {
  knapsack_instance instance;
  instance.item_values = config.project_values();
  instance.item_weights = make_costs(config.costs, config.project_count);
  instance.capacity = config.budget;
  return solve(instance).total_value;
}

scenario_config sweep_cell_config(const sweep_request& request, std::size_t method_index,
                                  std::size_t group_index, std::size_t beta_index) {
  scenario_config config = request.base;
  config.method = request.methods.at(method_index);
  config.group_count = request.group_counts.at(group_index);
  config.beta = request.beta_grid.at(beta_index);
  // independent seed per cell; under common random numbers the method index
  // is left out so methods share streams at equal (N_s, beta)
  const std::uint64_t method_part = request.common_random_numbers ? 0 : method_index + 1;
  config.master_seed = derive_stream_key(
      request.base.master_seed,
      {purpose_tag(stream_purpose::sweep_cell), method_part, group_index, beta_index});
  return config;
}

std::vector<sweep_row> run_sweep(const sweep_request& request, int threads) {
  if (request.methods.empty() || request.group_counts.empty() || request.beta_grid.empty()) {
    throw std::invalid_argument("sweep: methods, group counts and beta grid must be nonempty");
  }
  std::vector<sweep_row> rows;
  rows.reserve(request.methods.size() * request.group_counts.size() * request.beta_grid.size());
  for (std::size_t mi = 0; mi < request.methods.size(); ++mi) {
    for (std::size_t gi = 0; gi < request.group_counts.size(); ++gi) {
      for (std::size_t bi = 0; bi < request.beta_grid.size(); ++bi) {
        const scenario_config config = sweep_cell_config(request, mi, gi, bi);
        sweep_row row;
        row.method = config.method;
        row.group_count = config.group_count;
        row.beta = config.beta;
        row.costs = config.costs;
        row.noise_multiplier = config.noise_multiplier;
        row.info_error = config.info_error;
        row.estimate = estimate_performance(config, threads);
        rows.push_back(row);
      }
    }
  }
  return rows;
}

}  // namespace ck

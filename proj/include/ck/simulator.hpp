#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ck/aggregation.hpp"
#include "ck/model.hpp"
#include "ck/rational.hpp"

namespace ck {

// One Monte-Carlo scenario: the model parameters of Table-1 style runs plus
// sampling controls.
struct scenario_config {
  int project_count = 30;              // N_p
  int group_count = 3;                 // N_s (odd unless allow_even_groups)
  double t_min = 0.0;
  double t_max = 10.0;
  double expertise_center = 5.0;       // e_M
  double beta = 0.0;
  cost_structure costs = cost_structure::uniform;
  rational budget{15};                 // W, defaults to N_p / 2
  aggregation_method method;
  double noise_multiplier = 1.0;       // kappa
  double info_error = 0.0;             // r
  int samples = 20000;
  std::uint64_t master_seed = 1;
  std::vector<double> values;          // empty -> v_i = i
  // Two-project benchmark semantics: always fund the single affordable
  // project with the highest aggregated value. Only valid for N_p = 2,
  // uniform costs, W = 1; matches the closed-form analysis, which compares
  // the two aggregates directly instead of solving a knapsack that may
  // leave the budget unspent when both aggregates are negative.
  bool forced_choice = false;
  bool allow_even_groups = false;

  void validate() const;
  std::vector<double> project_values() const;  // resolved v_i
};

struct performance_estimate {
  double mean = 0.0;
  double std_error = 0.0;
  long samples = 0;
};

// True value sum(x_i * v_i) of the portfolio selected in one replica. Types
// t_i are drawn from the replica's streams, evaluations sampled, the method
// applied (with information error if r > 0), and the collective knapsack
// solved; the realized portfolio is always scored by the intrinsic v_i.
double run_replica(const scenario_config& config, std::uint64_t replica);

// Mean with standard error over config.samples independent replicas.
// Deterministic for a given master seed whatever the thread count: replica
// values land in a per-replica slot and are reduced in index order.
performance_estimate estimate_performance(const scenario_config& config, int threads = 1);

// Information-error delegation (probability r of a misdirected delegation):
// returns the optimal group with probability 1 - (N_s - 1) r / N_s, otherwise
// one of the N_s - 1 other groups uniformly.
int apply_info_error_delegation(int optimal_group, int group_count, double info_error,
                                stream_rng& stream);

// Information-error minimum variance: with probability r the project's
// aggregation degrades to the arithmetic mean. One coin per project per
// replica, so the degraded count is Binomial(N_p, r).
method_kind apply_info_error_minvar(double info_error, stream_rng& stream);

// Best achievable portfolio value of the noiseless instance (upper bound for
// every replica).
double max_portfolio_value(const scenario_config& config);

struct sweep_request {
  scenario_config base;
  std::vector<aggregation_method> methods;
  std::vector<int> group_counts;
  std::vector<double> beta_grid;
  // Shared streams across methods (variance reduction for comparisons);
  // off by default so the cells are independent estimates.
  bool common_random_numbers = false;
};

struct sweep_row {
  aggregation_method method;
  int group_count = 0;
  double beta = 0.0;
  cost_structure costs = cost_structure::uniform;
  double noise_multiplier = 1.0;
  double info_error = 0.0;
  performance_estimate estimate;
};

// Scenario for one sweep cell, with its independently derived seed; a sweep
// row equals estimate_performance(sweep_cell_config(...)).
scenario_config sweep_cell_config(const sweep_request& request, std::size_t method_index,
                                  std::size_t group_index, std::size_t beta_index);

// Cross product of methods x group counts x beta grid; each cell runs an
// independently seeded estimate_performance.
std::vector<sweep_row> run_sweep(const sweep_request& request, int threads = 1);

}  // namespace ck

#pragma once

#include <span>
#include <string>
#include <vector>

#include "ck/knapsack.hpp"
#include "ck/model.hpp"

namespace ck {

enum class method_kind {
  arithmetic_mean,
  median,
  trimmed_mean,
  winsorized_mean,
  min_variance,
  individual,
  delegation,
  borda,
  yes_no,
  minmax,
  zscore,
  stddev_scaling,
};

// One of the twelve aggregation methods with its parameters.
struct aggregation_method {
  method_kind kind = method_kind::arithmetic_mean;
  double alpha = 0.2;    // trimmed/winsorized trim fraction, in [0, 0.5)
  double cutoff = 0.0;   // yes/no voting threshold

  bool is_direct() const;
  std::string name() const;
  static aggregation_method from_name(const std::string& name);
  static std::vector<aggregation_method> all();
};

// p = round(alpha * N_s), round half up; throws unless 2p < N_s.
int trim_count(double alpha, int group_count);

enum class order_scheme { mean, median, trimmed, winsorized };

// Weighted order statistic over one evaluation row (sorted ascending
// internally): mean, median, p-trimmed or p-winsorized mean.
double aggregate_order_weighted(std::vector<double> row, order_scheme scheme, int p = 0);

// The z_(j) weight vector applied by aggregate_order_weighted (for the
// winsorized case with N_s - 2p = 1 the two boundary weights collapse onto
// the median, which then carries weight 1).
std::vector<double> order_weights(order_scheme scheme, int n, int p = 0);

// Inverse-variance weighting z_ij ∝ sigma_ij^-2; if any sigma is zero those
// evaluations are exact and their mean is returned.
double aggregate_min_variance(std::span<const double> row, std::span<const double> sigmas);

// Group with expertise closest to the project-type midpoint (ties toward the
// smallest index).
int pick_individual(const expertise_panel& panel, double t_min, double t_max);

// Group with expertise closest to t_i (ties toward the smallest index).
int pick_delegate(double project_type, const expertise_panel& panel);

// Column-wise Borda points: the best quality in a column earns N_p - 1, the
// worst 0; ties rank lower project indices higher. s_i sums points over groups.
std::vector<int> score_borda(const matrix& qualities);

// Count of groups with v_ij strictly above the cutoff.
std::vector<int> score_yes_no(const matrix& values, double cutoff);

enum class scaling_scheme { minmax, zscore, stddev };

// Column-wise rescaling of qualities, summed per project. Degenerate columns:
// minmax -> 0.5 everywhere, zscore -> 0, stddev -> raw quality.
std::vector<double> scale_qualities(const matrix& qualities, scaling_scheme scheme);

// Aggregated item values v'_i for a direct method.
std::vector<double> direct_values(const aggregation_method& method, const evaluation_matrix& evals,
                                  const project_set& projects, const expertise_panel& panel);

// Aggregated scores q'_i for an indirect method (qualities q_ij = v_ij / w_i
// computed internally; yes/no votes on the raw v_ij).
std::vector<double> indirect_scores(const aggregation_method& method, const evaluation_matrix& evals,
                                    const project_set& projects);

// The collective knapsack: direct methods feed v'_i, indirect methods feed
// q'_i * w_i, so one solver maximizes sum(x v') or sum(x q' w) respectively.
knapsack_instance collective_instance(const aggregation_method& method, const evaluation_matrix& evals,
                                      const project_set& projects, const expertise_panel& panel,
                                      const rational& budget);

}  // namespace ck

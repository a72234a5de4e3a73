#pragma once

#include <string>
#include <vector>

#include "ck/rational.hpp"
#include "ck/rng.hpp"

namespace ck {

struct matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  matrix() = default;
  matrix(int r, int c, double fill = 0.0) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, fill) {}

  double at(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }
  double& at(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
};

// The candidate projects: intrinsic values v_i > 0, costs w_i > 0 and types
// t_i inside the [t_min, t_max] interval they were drawn from.
struct project_set {
  std::vector<double> values;
  std::vector<rational> costs;
  std::vector<double> types;
  double t_min = 0.0;
  double t_max = 10.0;

  int count() const { return static_cast<int>(values.size()); }
  void validate() const;
};

// Expertise levels e_j, equally spaced on [center - breadth, center + breadth].
struct expertise_panel {
  double center = 5.0;   // e_M
  double breadth = 0.0;  // beta
  std::vector<double> levels;

  int size() const { return static_cast<int>(levels.size()); }
};

expertise_panel build_panel(double center, double breadth, int size);

// Perception error sigma_ij = multiplier * |t_i - e_j|.
double perception_sigma(double project_type, double expertise, double multiplier);

struct noise_model {
  double multiplier = 1.0;  // kappa; 1 is the baseline, 4 the quadrupled-error variant
};

// Sampled group evaluations v_ij together with the sigma_ij they were drawn with.
struct evaluation_matrix {
  matrix values;
  matrix sigmas;
};

// v_ij = v_i + N(0, sigma_ij), one independent stream per (replica, i, j) cell.
// Cells with sigma_ij = 0 are copied exactly and consume no draw.
evaluation_matrix sample_evaluations(const project_set& projects, const expertise_panel& panel,
                                     const noise_model& noise, const random_source& rng,
                                     std::uint64_t replica);

enum class cost_structure { uniform, decreasing, increasing };

std::string cost_structure_name(cost_structure kind);
cost_structure cost_structure_from_name(const std::string& name);

// uniform: w_i = 1; decreasing: w_i = 2(n+1-i)/(n+1); increasing: w_i = 2i/(n+1).
// The non-uniform vectors sum exactly to n.
std::vector<rational> make_costs(cost_structure kind, int n);

}  // namespace ck

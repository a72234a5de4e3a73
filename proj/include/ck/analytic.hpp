#pragma once

#include <string>
#include <vector>

#include "ck/model.hpp"

namespace ck {

// Gauss-Legendre nodes and weights on [-1, 1]; results are cached per n.
struct quadrature_rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const quadrature_rule& gauss_legendre(int n);

double normal_cdf(double z);
double normal_pdf(double z);

// Two projects of value a < b, unit costs and budget 1: the closed-form
// corner of the model.
struct two_project_scenario {
  double low_value = 1.0;   // a
  double high_value = 2.0;  // b
  expertise_panel panel;
  double t_min = 0.0;
  double t_max = 10.0;
};

enum class analytic_method { arithmetic_mean, individual, delegation, median };

std::string analytic_method_name(analytic_method m);
analytic_method analytic_method_from_name(const std::string& name);

// Standard deviation of the aggregate for one project of type t:
// mean -> sqrt(sum sigma_j^2)/N_s, individual -> |t - e_k*|,
// delegation -> min_j |t - e_j|, median -> sigma of the middle group
// (only meaningful inside the permutation integral).
double g_agg(analytic_method method, double t, const expertise_panel& panel);

// Expected knapsack value a + (b-a) * Phi((b-a)/sqrt(g1^2 + g2^2)); returns b
// when both aggregates are error-free.
double value_two(double t1, double t2, const two_project_scenario& scenario,
                 analytic_method method);

struct quadrature_spec {
  int nodes = 16;            // initial nodes per dimension (>= 8)
  double tolerance = 1e-4;
  int max_nodes = 1024;      // node-doubling ceiling
};

struct quadrature_result {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = false;
};

// N_s = 3 median: double integral over (y1, y2), y2 > y1, of the product of
// the two order-statistic densities, each the 3!-term permutation sum of
// phi/sigma * Phi * (1 - Phi) factors (36 permutation pairs in total). Zero
// sigmas are floored at 1e-6. Throws on non-convergence.
double value_two_median(double t1, double t2, const two_project_scenario& scenario,
                        const quadrature_spec& spec = {});

// Performance E_2: the t-average of value_two over [t_min, t_max]^2, by
// tensor-product Gauss-Legendre with node doubling until the change is below
// tolerance.
quadrature_result performance_two(const two_project_scenario& scenario, analytic_method method,
                                  const quadrature_spec& spec = {});

// Breadth maximizing Delegation performance: e_M - t_min - (t_max - t_min)/(2 N_s).
double beta_opt(int group_count, double expertise_center, double t_min, double t_max);

// Breadth beyond which Delegation and Individual coincide: e_M * (N_s - 1).
double beta_equiv(int group_count, double expertise_center);

}  // namespace ck

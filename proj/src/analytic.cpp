#include "ck/analytic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "ck/aggregation.hpp"
#include "ck/summation.hpp"

namespace ck {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

quadrature_rule compute_gauss_legendre(int n) {
  quadrature_rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 1; i <= n; ++i) {
    // Newton iteration from the Chebyshev estimate of the i-th root of P_n
    double x = std::cos(kPi * (i - 0.25) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i - 1] = x;
    rule.weights[i - 1] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace

const quadrature_rule& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  static std::map<int, quadrature_rule> cache;
  static std::mutex cache_mutex;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * kPi); }

std::string analytic_method_name(analytic_method m) {
  switch (m) {
    case analytic_method::arithmetic_mean: return "arithmetic_mean";
    case analytic_method::individual: return "individual";
    case analytic_method::delegation: return "delegation";
    case analytic_method::median: return "median";
  }
  throw std::logic_error("analytic_method_name: bad method");
}

analytic_method analytic_method_from_name(const std::string& name) {
  for (analytic_method m : {analytic_method::arithmetic_mean, analytic_method::individual,
                            analytic_method::delegation, analytic_method::median}) {
    if (analytic_method_name(m) == name) return m;
  }
  throw std::invalid_argument("unknown analytic method: " + name);
}

double g_agg(analytic_method method, double t, const expertise_panel& panel) {
  if (panel.size() == 0) throw std::invalid_argument("g_agg: empty panel");
  switch (method) {
    case analytic_method::arithmetic_mean: {
      double sq = 0.0;
      for (double e : panel.levels) sq += (t - e) * (t - e);
      return std::sqrt(sq) / panel.size();
    }
    case analytic_method::individual: {
      // the individual selector is fixed at the panel's center of reference;
      // t_M enters through the scenario, so for g we use the level nearest
      // the panel center (identical for the symmetric panels built here)
      const int k = pick_delegate(panel.center, panel);
      return std::abs(t - panel.levels[k]);
    }
    case analytic_method::delegation: {
      double best = std::abs(t - panel.levels[0]);
      for (double e : panel.levels) best = std::min(best, std::abs(t - e));
      return best;
    }
    case analytic_method::median: {
      std::vector<double> sig(panel.levels.size());
      for (std::size_t j = 0; j < sig.size(); ++j) sig[j] = std::abs(t - panel.levels[j]);
      std::sort(sig.begin(), sig.end());
      return sig[sig.size() / 2];
    }
  }
  throw std::logic_error("g_agg: bad method");
}

double value_two(double t1, double t2, const two_project_scenario& scenario,
                 analytic_method method) {
  const double a = scenario.low_value;
  const double b = scenario.high_value;
  const double g1 = g_agg(method, t1, scenario.panel);
  const double g2 = g_agg(method, t2, scenario.panel);
  const double spread = std::sqrt(g1 * g1 + g2 * g2);
  if (spread == 0.0) return b;
  return a + (b - a) * normal_cdf((b - a) / spread);
}

namespace {

// P(exactly one of the two other groups sits below y): the Phi * (1 - Phi)
// part of the middle-order permutation sum for the component whose density
// factor belongs to group l.
double middle_factor(double y, double mu, double sig_k, double sig_m) {
  const double fk = normal_cdf((y - mu) / sig_k);
  const double fm = normal_cdf((y - mu) / sig_m);
  return fk * (1.0 - fm) + fm * (1.0 - fk);
}

// One component of the median density: group l carries the density factor,
// the other two contribute the bounded middle factor.
double median_component(double y, double mu, const std::array<double, 3>& sigma, int l) {
  const double z = (y - mu) / sigma[l];
  return normal_pdf(z) / sigma[l] * middle_factor(y, mu, sigma[(l + 1) % 3], sigma[(l + 2) % 3]);
}

// Complement CDF of the median of project 2 past y1, by per-component
// quadrature under y2 = b + sigma_s * tan(theta). Both aggregates center all
// their sharp features on the project means, so each theta interval is split
// at y2 = b; within a segment the integrand is smooth and Gauss-Legendre
// converges fast.
double median_tail(double y1, double b, const std::array<double, 3>& sigma2,
                   const quadrature_rule& rule) {
  const int n = static_cast<int>(rule.nodes.size());
  compensated_sum tail;
  for (int s = 0; s < 3; ++s) {
    const double scale2 = sigma2[s];
    const double theta_lo = std::atan((y1 - b) / scale2);
    const double breaks[3] = {theta_lo, theta_lo < 0.0 ? 0.0 : theta_lo, 0.5 * kPi};
    for (int seg = 0; seg < 2; ++seg) {
      const double half = 0.5 * (breaks[seg + 1] - breaks[seg]);
      if (half <= 0.0) continue;
      for (int k = 0; k < n; ++k) {
        const double theta2 = breaks[seg] + half * (rule.nodes[k] + 1.0);
        const double cos2 = std::cos(theta2);
        const double y2 = b + scale2 * std::tan(theta2);
        const double jac2 = half * scale2 / (cos2 * cos2);
        tail.add(rule.weights[k] * median_component(y2, b, sigma2, s) * jac2);
      }
    }
  }
  return tail.value();
}

// Pr(median_1 < median_2): the double integral over y2 > y1 of the product
// of the two 3!-term order-statistic densities (36 permutation pairs). Each
// density component runs under its own substitution y = mu + sigma_l *
// tan(theta), with segment breaks at y1 ∈ {a, b}, so near-degenerate sigmas
// stay resolvable next to wide ones.
double median_probability(double a, double b, const std::array<double, 3>& sigma1,
                          const std::array<double, 3>& sigma2, int n) {
  const quadrature_rule& rule = gauss_legendre(n);
  compensated_sum total;
  for (int l = 0; l < 3; ++l) {
    const double scale1 = sigma1[l];
    const double theta_b = std::atan((b - a) / scale1);
    const double breaks[4] = {-0.5 * kPi, 0.0, theta_b, 0.5 * kPi};
    for (int seg = 0; seg < 3; ++seg) {
      const double half = 0.5 * (breaks[seg + 1] - breaks[seg]);
      if (half <= 0.0) continue;
      for (int i = 0; i < n; ++i) {
        const double theta1 = breaks[seg] + half * (rule.nodes[i] + 1.0);
        const double cos1 = std::cos(theta1);
        const double y1 = a + scale1 * std::tan(theta1);
        const double jac1 = half * scale1 / (cos1 * cos1);
        const double f1 = median_component(y1, a, sigma1, l);
        if (f1 * jac1 == 0.0) continue;
        total.add(rule.weights[i] * f1 * jac1 * median_tail(y1, b, sigma2, rule));
      }
    }
  }
  return total.value();
}

}  // namespace

double value_two_median(double t1, double t2, const two_project_scenario& scenario,
                        const quadrature_spec& spec) {
  if (scenario.panel.size() != 3) {
    throw std::invalid_argument("value_two_median: implemented for N_s = 3 only");
  }
  if (spec.nodes < 8) throw std::invalid_argument("quadrature: nodes must be >= 8");
  std::array<double, 3> sigma1;
  std::array<double, 3> sigma2;
  for (int j = 0; j < 3; ++j) {
    sigma1[j] = std::max(std::abs(t1 - scenario.panel.levels[j]), 1e-6);
    sigma2[j] = std::max(std::abs(t2 - scenario.panel.levels[j]), 1e-6);
  }
  const double a = scenario.low_value;
  const double b = scenario.high_value;
  double prev = median_probability(a, b, sigma1, sigma2, spec.nodes);
  for (int n = 2 * spec.nodes; n <= spec.max_nodes; n *= 2) {
    const double next = median_probability(a, b, sigma1, sigma2, n);
    if (std::abs(next - prev) < spec.tolerance) {
      return a + (b - a) * next;
    }
    prev = next;
  }
  throw std::runtime_error("value_two_median: quadrature did not converge");
}

namespace {

double performance_pass(const two_project_scenario& scenario, analytic_method method, int n,
                        const quadrature_spec& spec) {
  const quadrature_rule& rule = gauss_legendre(n);
  const double lo = scenario.t_min;
  const double len = scenario.t_max - scenario.t_min;
  compensated_sum total;
  // median: inner integral tolerance tightened so its error stays below the
  // outer target
  quadrature_spec inner = spec;
  inner.tolerance = spec.tolerance * 0.1;
  for (int i = 0; i < n; ++i) {
    const double t1 = lo + 0.5 * len * (rule.nodes[i] + 1.0);
    for (int k = 0; k < n; ++k) {
      const double t2 = lo + 0.5 * len * (rule.nodes[k] + 1.0);
      const double v = method == analytic_method::median
                           ? value_two_median(t1, t2, scenario, inner)
                           : value_two(t1, t2, scenario, method);
      total.add(rule.weights[i] * rule.weights[k] * v);
    }
  }
  return total.value() / 4.0;  // node weights sum to 2 per dimension
}

}  // namespace

quadrature_result performance_two(const two_project_scenario& scenario, analytic_method method,
                                  const quadrature_spec& spec) {
  if (!(scenario.low_value < scenario.high_value)) {
    throw std::invalid_argument("performance_two: requires a < b");
  }
  if (!(scenario.t_min < scenario.t_max)) {
    throw std::invalid_argument("performance_two: requires t_min < t_max");
  }
  if (spec.nodes < 8) throw std::invalid_argument("quadrature: nodes must be >= 8");
  quadrature_result result;
  double prev = performance_pass(scenario, method, spec.nodes, spec);
  for (int n = 2 * spec.nodes; n <= spec.max_nodes; n *= 2) {
    const double next = performance_pass(scenario, method, n, spec);
    result.error_estimate = std::abs(next - prev);
    result.value = next;
    if (result.error_estimate < spec.tolerance) {
      result.converged = true;
      return result;
    }
    prev = next;
  }
  result.converged = false;
  return result;
}

double beta_opt(int group_count, double expertise_center, double t_min, double t_max) {
  if (group_count < 1) throw std::invalid_argument("beta_opt: N_s must be >= 1");
  return expertise_center - t_min - (t_max - t_min) / (2.0 * group_count);
}

double beta_equiv(int group_count, double expertise_center) {
  if (group_count < 2) throw std::invalid_argument("beta_equiv: N_s must be >= 2");
  return expertise_center * (group_count - 1);
}

}  // namespace ck

#include "ck/aggregation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ck {

bool aggregation_method::is_direct() const {
  switch (kind) {
    case method_kind::arithmetic_mean:
    case method_kind::median:
    case method_kind::trimmed_mean:
    case method_kind::winsorized_mean:
    case method_kind::min_variance:
    case method_kind::individual:
    case method_kind::delegation:
      return true;
    default:
      return false;
  }
}

std::string aggregation_method::name() const {
  switch (kind) {
    case method_kind::arithmetic_mean: return "arithmetic_mean";
    case method_kind::median: return "median";
    case method_kind::trimmed_mean: return "trimmed_mean";
    case method_kind::winsorized_mean: return "winsorized_mean";
    case method_kind::min_variance: return "min_variance";
    case method_kind::individual: return "individual";
    case method_kind::delegation: return "delegation";
    case method_kind::borda: return "borda";
    case method_kind::yes_no: return "yes_no";
    case method_kind::minmax: return "minmax";
    case method_kind::zscore: return "zscore";
    case method_kind::stddev_scaling: return "stddev_scaling";
  }
  throw std::logic_error("aggregation_method::name: bad kind");
}

aggregation_method aggregation_method::from_name(const std::string& name) {
  for (const aggregation_method& m : all()) {
    if (m.name() == name) return m;
  }
  throw std::invalid_argument("unknown aggregation method: " + name);
}

std::vector<aggregation_method> aggregation_method::all() {
  std::vector<aggregation_method> out;
  for (method_kind k : {method_kind::arithmetic_mean, method_kind::median, method_kind::trimmed_mean,
                        method_kind::winsorized_mean, method_kind::min_variance, method_kind::individual,
                        method_kind::delegation, method_kind::borda, method_kind::yes_no,
                        method_kind::minmax, method_kind::zscore, method_kind::stddev_scaling}) {
    out.push_back(aggregation_method{k});
  }
  return out;
}

int trim_count(double alpha, int group_count) {
  if (alpha < 0.0 || alpha >= 0.5) throw std::invalid_argument("trim alpha must be in [0, 0.5)");
  const int p = static_cast<int>(std::floor(alpha * group_count + 0.5));  // round half up
  if (2 * p >= group_count) throw std::invalid_argument("trim count too large: 2p >= N_s");
  return p;
}

double aggregate_order_weighted(std::vector<double> row, order_scheme scheme, int p) {
  const int n = static_cast<int>(row.size());
  if (n == 0) throw std::invalid_argument("aggregate_order_weighted: empty row");
  if ((scheme == order_scheme::trimmed || scheme == order_scheme::winsorized) && 2 * p >= n) {
    throw std::invalid_argument("aggregate_order_weighted: 2p >= N_s");
  }
  std::sort(row.begin(), row.end());
  switch (scheme) {
    case order_scheme::mean: {
      double sum = 0.0;
      for (double v : row) sum += v;
      return sum / n;
    }
    case order_scheme::median: {
      if (n % 2 == 1) return row[n / 2];
      return 0.5 * (row[n / 2 - 1] + row[n / 2]);
    }
    case order_scheme::trimmed: {
      double sum = 0.0;
      for (int j = p; j < n - p; ++j) sum += row[j];
      return sum / (n - 2 * p);
    }
    case order_scheme::winsorized: {
      if (n - 2 * p == 1) return row[p];  // every entry collapses onto the median
      // replace the p evaluations on each tail with the nearest kept one
      for (int j = 0; j < p; ++j) {
        row[j] = row[p];
        row[n - 1 - j] = row[n - 1 - p];
      }
      double sum = 0.0;
      for (double v : row) sum += v;
      return sum / n;
    }
  }
  throw std::logic_error("aggregate_order_weighted: bad scheme");
}

std::vector<double> order_weights(order_scheme scheme, int n, int p) {
  if (n < 1) throw std::invalid_argument("order_weights: empty panel");
  std::vector<double> z(n, 0.0);
  switch (scheme) {
    case order_scheme::mean:
      std::fill(z.begin(), z.end(), 1.0 / n);
      break;
    case order_scheme::median:
      if (n % 2 == 1) {
        z[n / 2] = 1.0;
      } else {
        z[n / 2 - 1] = 0.5;
        z[n / 2] = 0.5;
      }
      break;
    case order_scheme::trimmed:
      if (2 * p >= n) throw std::invalid_argument("order_weights: 2p >= N_s");
      for (int j = p; j < n - p; ++j) z[j] = 1.0 / (n - 2 * p);
      break;
    case order_scheme::winsorized: {
      if (2 * p >= n) throw std::invalid_argument("order_weights: 2p >= N_s");
      // each kept position is used once, plus p tail replacements per side
      std::vector<int> uses(n, 0);
      for (int j = p; j < n - p; ++j) uses[j] = 1;
      uses[p] += p;
      uses[n - 1 - p] += p;
      for (int j = 0; j < n; ++j) z[j] = static_cast<double>(uses[j]) / n;
      break;
    }
  }
  return z;
}

double aggregate_min_variance(std::span<const double> row, std::span<const double> sigmas) {
  if (row.empty() || row.size() != sigmas.size()) {
    throw std::invalid_argument("aggregate_min_variance: bad row");
  }
  double exact_sum = 0.0;
  int exact_count = 0;
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (sigmas[j] == 0.0) {
      exact_sum += row[j];
      ++exact_count;
    }
  }
  if (exact_count > 0) return exact_sum / exact_count;

  double weight_sum = 0.0;
  double value_sum = 0.0;
  for (std::size_t j = 0; j < row.size(); ++j) {
    const double r = 1.0 / (sigmas[j] * sigmas[j]);
    weight_sum += r;
    value_sum += r * row[j];
  }
  return value_sum / weight_sum;
}

int pick_individual(const expertise_panel& panel, double t_min, double t_max) {
  if (panel.size() == 0) throw std::invalid_argument("pick_individual: empty panel");
  const double mid = 0.5 * (t_min + t_max);
  return pick_delegate(mid, panel);
}

int pick_delegate(double project_type, const expertise_panel& panel) {
  if (panel.size() == 0) throw std::invalid_argument("pick_delegate: empty panel");
  int best = 0;
  double best_dist = std::abs(project_type - panel.levels[0]);
  for (int j = 1; j < panel.size(); ++j) {
    const double d = std::abs(project_type - panel.levels[j]);
    if (d < best_dist) {
      best = j;
      best_dist = d;
    }
  }
  return best;
}

std::vector<int> score_borda(const matrix& qualities) {
  const int np = qualities.rows;
  const int ns = qualities.cols;
  if (np < 1 || ns < 1) throw std::invalid_argument("score_borda: empty matrix");
  std::vector<int> scores(np, 0);
  std::vector<int> order(np);
  for (int j = 0; j < ns; ++j) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return qualities.at(a, j) > qualities.at(b, j); });
    for (int rank = 0; rank < np; ++rank) {
      scores[order[rank]] += np - 1 - rank;
    }
  }
  return scores;
}

std::vector<int> score_yes_no(const matrix& values, double cutoff) {
  if (values.rows < 1 || values.cols < 1) throw std::invalid_argument("score_yes_no: empty matrix");
  std::vector<int> scores(values.rows, 0);
  for (int i = 0; i < values.rows; ++i) {
    for (int j = 0; j < values.cols; ++j) {
      if (values.at(i, j) > cutoff) ++scores[i];
    }
  }
  return scores;
}

std::vector<double> scale_qualities(const matrix& qualities, scaling_scheme scheme) {
  const int np = qualities.rows;
  const int ns = qualities.cols;
  if (np < 2 && scheme != scaling_scheme::stddev) {
    throw std::invalid_argument("scale_qualities: need at least two projects");
  }
  std::vector<double> scores(np, 0.0);
  for (int j = 0; j < ns; ++j) {
    switch (scheme) {
      case scaling_scheme::minmax: {
        double lo = qualities.at(0, j);
        double hi = lo;
        for (int i = 1; i < np; ++i) {
          lo = std::min(lo, qualities.at(i, j));
          hi = std::max(hi, qualities.at(i, j));
        }
        for (int i = 0; i < np; ++i) {
          scores[i] += hi == lo ? 0.5 : (qualities.at(i, j) - lo) / (hi - lo);
        }
        break;
      }
      case scaling_scheme::zscore:
      case scaling_scheme::stddev: {
        double mu = 0.0;
        for (int i = 0; i < np; ++i) mu += qualities.at(i, j);
        mu /= np;
        double var = 0.0;
        for (int i = 0; i < np; ++i) {
          const double d = qualities.at(i, j) - mu;
          var += d * d;
        }
        const double sd = std::sqrt(var / np);  // population form, divisor N_p
        for (int i = 0; i < np; ++i) {
          if (scheme == scaling_scheme::zscore) {
            scores[i] += sd == 0.0 ? 0.0 : (qualities.at(i, j) - mu) / sd;
          } else {
            scores[i] += sd == 0.0 ? qualities.at(i, j) : qualities.at(i, j) / sd;
          }
        }
        break;
      }
    }
  }
  return scores;
}

std::vector<double> direct_values(const aggregation_method& method, const evaluation_matrix& evals,
                                  const project_set& projects, const expertise_panel& panel) {
  const int np = evals.values.rows;
  const int ns = evals.values.cols;
  std::vector<double> out(np);
  std::vector<double> row(ns);
  const int p = (method.kind == method_kind::trimmed_mean || method.kind == method_kind::winsorized_mean)
                    ? trim_count(method.alpha, ns)
                    : 0;
  for (int i = 0; i < np; ++i) {
    for (int j = 0; j < ns; ++j) row[j] = evals.values.at(i, j);
    switch (method.kind) {
      case method_kind::arithmetic_mean:
        out[i] = aggregate_order_weighted(row, order_scheme::mean);
        break;
      case method_kind::median:
        out[i] = aggregate_order_weighted(row, order_scheme::median);
        break;
      case method_kind::trimmed_mean:
        out[i] = aggregate_order_weighted(row, order_scheme::trimmed, p);
        break;
      case method_kind::winsorized_mean:
        out[i] = aggregate_order_weighted(row, order_scheme::winsorized, p);
        break;
      case method_kind::min_variance: {
        std::span<const double> sig(evals.sigmas.data.data() + static_cast<std::size_t>(i) * ns, ns);
        out[i] = aggregate_min_variance(row, sig);
        break;
      }
      case method_kind::individual:
        out[i] = row[pick_individual(panel, projects.t_min, projects.t_max)];
        break;
      case method_kind::delegation:
        out[i] = row[pick_delegate(projects.types[i], panel)];
        break;
      default:
        throw std::invalid_argument("direct_values: not a direct method");
    }
  }
  return out;
}

std::vector<double> indirect_scores(const aggregation_method& method, const evaluation_matrix& evals,
                                    const project_set& projects) {
  const int np = evals.values.rows;
  const int ns = evals.values.cols;
  if (method.kind == method_kind::yes_no) {
    const std::vector<int> votes = score_yes_no(evals.values, method.cutoff);
    return std::vector<double>(votes.begin(), votes.end());
  }
  matrix qualities(np, ns);
  for (int i = 0; i < np; ++i) {
    const double w = projects.costs[i].to_double();
    for (int j = 0; j < ns; ++j) qualities.at(i, j) = evals.values.at(i, j) / w;
  }
  switch (method.kind) {
    case method_kind::borda: {
      const std::vector<int> s = score_borda(qualities);
      return std::vector<double>(s.begin(), s.end());
    }
    case method_kind::minmax:
      return scale_qualities(qualities, scaling_scheme::minmax);
    case method_kind::zscore:
      return scale_qualities(qualities, scaling_scheme::zscore);
    case method_kind::stddev_scaling:
      return scale_qualities(qualities, scaling_scheme::stddev);
    default:
      throw std::invalid_argument("indirect_scores: not an indirect method");
  }
}

knapsack_instance collective_instance(const aggregation_method& method, const evaluation_matrix& evals,
                                      const project_set& projects, const expertise_panel& panel,
                                      const rational& budget) {
  knapsack_instance out;
  out.item_weights = projects.costs;
  out.capacity = budget;
  if (method.is_direct()) {
    out.item_values = direct_values(method, evals, projects, panel);
  } else {
    const std::vector<double> scores = indirect_scores(method, evals, projects);
    out.item_values.resize(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) {
      out.item_values[i] = scores[i] * projects.costs[i].to_double();
    }
  }
  return out;
}

}  // namespace ck

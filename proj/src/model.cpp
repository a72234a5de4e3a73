#include "ck/model.hpp"

#include <cmath>
#include <stdexcept>

namespace ck {

void project_set::validate() const {
  const std::size_t n = values.size();
  if (costs.size() != n || types.size() != n) {
    throw std::invalid_argument("project_set: values, costs and types must have equal length");
  }
  if (!(t_min < t_max)) throw std::invalid_argument("project_set: t_min must be < t_max");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(values[i] > 0.0)) throw std::invalid_argument("project_set: values must be positive");
    if (!(costs[i] > rational(0))) throw std::invalid_argument("project_set: costs must be positive");
    if (types[i] < t_min || types[i] > t_max) {
      throw std::invalid_argument("project_set: type outside [t_min, t_max]");
    }
  }
}

expertise_panel build_panel(double center, double breadth, int size) {
  if (size < 1) throw std::invalid_argument("build_panel: size must be >= 1");
  if (breadth < 0.0) throw std::invalid_argument("build_panel: breadth must be >= 0");
  expertise_panel panel;
  panel.center = center;
  panel.breadth = breadth;
  panel.levels.resize(size);
  if (size == 1) {
    panel.levels[0] = center;
    return panel;
  }
  // e_j = e_M - (N_s + 1 - 2j) / (N_s - 1) * beta, j = 1..N_s
  for (int j = 1; j <= size; ++j) {
    panel.levels[j - 1] = center - static_cast<double>(size + 1 - 2 * j) / (size - 1) * breadth;
  }
  return panel;
}

double perception_sigma(double project_type, double expertise, double multiplier) {
  if (multiplier < 0.0) throw std::invalid_argument("perception_sigma: multiplier must be >= 0");
  return multiplier * std::abs(project_type - expertise);
}

evaluation_matrix sample_evaluations(const project_set& projects, const expertise_panel& panel,
                                     const noise_model& noise, const random_source& rng,
                                     std::uint64_t replica) {
  const int np = projects.count();
  const int ns = panel.size();
  evaluation_matrix out;
  out.values = matrix(np, ns);
  out.sigmas = matrix(np, ns);
  for (int i = 0; i < np; ++i) {
    for (int j = 0; j < ns; ++j) {
      const double sigma = perception_sigma(projects.types[i], panel.levels[j], noise.multiplier);
      out.sigmas.at(i, j) = sigma;
      if (sigma == 0.0) {
        out.values.at(i, j) = projects.values[i];
      } else {
        stream_rng stream(rng.master_seed, {purpose_tag(stream_purpose::evaluation), replica,
                                            static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)});
        out.values.at(i, j) = projects.values[i] + sigma * stream.next_normal();
      }
    }
  }
  return out;
}

std::string cost_structure_name(cost_structure kind) {
  switch (kind) {
    case cost_structure::uniform: return "uniform";
    case cost_structure::decreasing: return "decreasing";
    case cost_structure::increasing: return "increasing";
  }
  throw std::logic_error("cost_structure_name: bad kind");
}

cost_structure cost_structure_from_name(const std::string& name) {
  if (name == "uniform") return cost_structure::uniform;
  if (name == "decreasing") return cost_structure::decreasing;
  if (name == "increasing") return cost_structure::increasing;
  throw std::invalid_argument("unknown cost structure: " + name);
}

std::vector<rational> make_costs(cost_structure kind, int n) {
  if (n < 1) throw std::invalid_argument("make_costs: n must be >= 1");
  std::vector<rational> costs;
  costs.reserve(n);
  for (int i = 1; i <= n; ++i) {
    switch (kind) {
      case cost_structure::uniform: costs.emplace_back(1); break;
      case cost_structure::decreasing: costs.emplace_back(2 * (n + 1 - i), n + 1); break;
      case cost_structure::increasing: costs.emplace_back(2 * i, n + 1); break;
    }
  }
  return costs;
}

}  // namespace ck

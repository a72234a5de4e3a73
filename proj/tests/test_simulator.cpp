#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ck/simulator.hpp"

using namespace ck;

namespace {

scenario_config baseline30(cost_structure costs) {
  scenario_config config;
  config.project_count = 30;
  config.group_count = 3;
  config.costs = costs;
  config.budget = rational(15);
  config.beta = 4.0;
  config.samples = 100;
  config.master_seed = 99;
  return config;
}

scenario_config two_project(method_kind kind, double beta, std::uint64_t seed) {
  scenario_config config;
  config.project_count = 2;
  config.group_count = 3;
  config.costs = cost_structure::uniform;
  config.budget = rational(1);
  config.beta = beta;
  config.method = aggregation_method{kind};
  config.forced_choice = true;
  config.master_seed = seed;
  return config;
}

}  // namespace

TEST_CASE("noiseless replicas hit the exact optimum") {
  const double expected[] = {345.0, 420.0, 232.0};
  const cost_structure kinds[] = {cost_structure::uniform, cost_structure::decreasing,
                                  cost_structure::increasing};
  for (int k = 0; k < 3; ++k) {
    scenario_config config = baseline30(kinds[k]);
    config.noise_multiplier = 0.0;
    config.method = aggregation_method{method_kind::arithmetic_mean};
    CHECK(run_replica(config, 0) == expected[k]);
    CHECK(max_portfolio_value(config) == expected[k]);
  }
}

TEST_CASE("noiseless collapse: every direct method returns the same value") {
  scenario_config config = baseline30(cost_structure::decreasing);
  config.noise_multiplier = 0.0;
  for (const aggregation_method& m : aggregation_method::all()) {
    if (!m.is_direct()) continue;
    config.method = m;
    CHECK(run_replica(config, 5) == 420.0);
  }
}

TEST_CASE("estimates are reproducible and thread-count independent") {
  scenario_config config = baseline30(cost_structure::uniform);
  config.method = aggregation_method{method_kind::min_variance};
  const performance_estimate a = estimate_performance(config, 1);
  const performance_estimate b = estimate_performance(config, 2);
  const performance_estimate c = estimate_performance(config, 1);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
  CHECK(a.mean == c.mean);
  config.master_seed += 1;
  const performance_estimate d = estimate_performance(config, 1);
  CHECK(a.mean != d.mean);
}

TEST_CASE("replica values never exceed the noiseless optimum") {
  for (method_kind kind : {method_kind::borda, method_kind::zscore, method_kind::minmax,
                           method_kind::delegation}) {
    scenario_config config = baseline30(cost_structure::decreasing);
    config.method = aggregation_method{kind};
    const double cap = max_portfolio_value(config);
    for (int r = 0; r < 300; ++r) {
      CHECK(run_replica(config, r) <= cap);
    }
  }
}

TEST_CASE("individual and delegation coincide at beta = 0") {
  scenario_config ind = baseline30(cost_structure::uniform);
  ind.beta = 0.0;
  ind.method = aggregation_method{method_kind::individual};
  scenario_config del = ind;
  del.method = aggregation_method{method_kind::delegation};
  for (int r = 0; r < 200; ++r) {
    CHECK(run_replica(ind, r) == run_replica(del, r));
  }
}

TEST_CASE("individual and delegation merge once the breadth leaves the type range") {
  // beyond the equivalence breadth only the central group is ever nearest
  for (double beta : {10.0, 12.0, 15.0}) {
    scenario_config ind = baseline30(cost_structure::uniform);
    ind.beta = beta;
    ind.samples = 2000;
    ind.method = aggregation_method{method_kind::individual};
    scenario_config del = ind;
    del.method = aggregation_method{method_kind::delegation};
    const performance_estimate a = estimate_performance(ind, 2);
    const performance_estimate b = estimate_performance(del, 2);
    CHECK(std::abs(a.mean - b.mean) <=
          3 * std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error) + 1e-12);
  }
}

TEST_CASE("degenerate noiseless estimate has zero spread") {
  scenario_config config = baseline30(cost_structure::uniform);
  config.noise_multiplier = 0.0;
  config.method = aggregation_method{method_kind::median};
  config.samples = 50;
  const performance_estimate est = estimate_performance(config);
  CHECK(est.mean == 345.0);
  CHECK(est.std_error == 0.0);
  CHECK(est.samples == 50);
}

TEST_CASE("information-error delegation distribution") {
  stream_rng stream(7);
  for (int i = 0; i < 100; ++i) {
    CHECK(apply_info_error_delegation(1, 3, 0.0, stream) == 1);
  }

  // r = 1: uniform over the three groups (chi-squared, 2 dof, 99.9% = 13.8)
  const int n = 100000;
  int counts[3] = {0, 0, 0};
  for (int i = 0; i < n; ++i) ++counts[apply_info_error_delegation(1, 3, 1.0, stream)];
  double chi2 = 0.0;
  for (int c : counts) {
    const double expected = n / 3.0;
    chi2 += (c - expected) * (c - expected) / expected;
  }
  CHECK(chi2 < 13.8);

  // r = 0.5: optimal group selected with probability 2/3
  int optimal = 0;
  for (int i = 0; i < n; ++i) {
    if (apply_info_error_delegation(2, 3, 0.5, stream) == 2) ++optimal;
  }
  const double freq = static_cast<double>(optimal) / n;
  const double sigma = std::sqrt((2.0 / 3.0) * (1.0 / 3.0) / n);
  CHECK(std::abs(freq - 2.0 / 3.0) < 3 * sigma);
}

TEST_CASE("degradation coins are binomial per replica") {
  // one coin per (replica, project) from the simulator's info streams
  const double r = 0.5;
  const int np = 30, replicas = 4000;
  double sum = 0.0;
  for (int rep = 0; rep < replicas; ++rep) {
    int degraded = 0;
    for (int i = 0; i < np; ++i) {
      stream_rng stream(123, {purpose_tag(stream_purpose::info_error),
                              static_cast<std::uint64_t>(rep), static_cast<std::uint64_t>(i)});
      if (apply_info_error_minvar(r, stream) == method_kind::arithmetic_mean) ++degraded;
    }
    sum += degraded;
  }
  const double mean = sum / replicas;
  CHECK(std::abs(mean - 15.0) < 3 * std::sqrt(30 * 0.25 / replicas));

  stream_rng stream(9);
  for (int i = 0; i < 50; ++i) {
    CHECK(apply_info_error_minvar(0.0, stream) == method_kind::min_variance);
    CHECK(apply_info_error_minvar(1.0, stream) == method_kind::arithmetic_mean);
  }
  CHECK_THROWS(apply_info_error_minvar(1.5, stream));
}

TEST_CASE("min-variance with full information error equals the arithmetic mean") {
  scenario_config broken = baseline30(cost_structure::decreasing);
  broken.method = aggregation_method{method_kind::min_variance};
  broken.info_error = 1.0;
  scenario_config mean = baseline30(cost_structure::decreasing);
  mean.method = aggregation_method{method_kind::arithmetic_mean};
  // identical seed: the degraded path must reproduce the mean path replica by replica
  for (int rep = 0; rep < 100; ++rep) {
    CHECK(run_replica(broken, rep) == run_replica(mean, rep));
  }
}

TEST_CASE("error-free delegation ignores the info-error path") {
  scenario_config a = baseline30(cost_structure::uniform);
  a.method = aggregation_method{method_kind::delegation};
  a.info_error = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    scenario_config b = a;
    b.info_error = 0.0;
    CHECK(run_replica(a, rep) == run_replica(b, rep));
  }
}

TEST_CASE("two-project estimates match the closed-form values") {
  scenario_config ind = two_project(method_kind::individual, 4.0, 2024);
  ind.samples = 100000;
  const performance_estimate e_ind = estimate_performance(ind, 2);
  CHECK(std::abs(e_ind.mean - 1.6257) < 3 * e_ind.std_error + 0.001);

  scenario_config mean = two_project(method_kind::arithmetic_mean, 0.0, 2025);
  mean.samples = 100000;
  const performance_estimate e_mean = estimate_performance(mean, 2);
  CHECK(std::abs(e_mean.mean - 1.7004) < 3 * e_mean.std_error + 0.001);
}

TEST_CASE("arithmetic-mean performance grows with the group count at beta = 0") {
  performance_estimate previous{0.0, 0.0, 0};
  for (int ns : {3, 5, 7}) {
    scenario_config config = two_project(method_kind::arithmetic_mean, 0.0, 31337);
    config.group_count = ns;
    config.samples = 40000;
    const performance_estimate est = estimate_performance(config, 2);
    // beyond the combined error bars, not merely larger
    CHECK(est.mean - previous.mean > 3 * std::sqrt(est.std_error * est.std_error +
                                                   previous.std_error * previous.std_error));
    previous = est;
  }
}

TEST_CASE("sweep rows equal their cell estimates") {
  sweep_request request;
  request.base = baseline30(cost_structure::uniform);
  request.base.samples = 300;
  request.methods = {aggregation_method{method_kind::arithmetic_mean},
                     aggregation_method{method_kind::delegation}};
  request.group_counts = {3};
  request.beta_grid = {0.0, 4.0};
  const std::vector<sweep_row> rows = run_sweep(request, 2);
  REQUIRE(rows.size() == 4);
  const performance_estimate direct = estimate_performance(sweep_cell_config(request, 1, 0, 1), 1);
  CHECK(rows[3].estimate.mean == direct.mean);
  CHECK(rows[3].method.kind == method_kind::delegation);
  CHECK(rows[3].beta == 4.0);

  // single-cell sweep degenerates to one estimate
  sweep_request single = request;
  single.methods = {aggregation_method{method_kind::arithmetic_mean}};
  single.beta_grid = {4.0};
  const std::vector<sweep_row> one = run_sweep(single, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].estimate.mean ==
        estimate_performance(sweep_cell_config(single, 0, 0, 0), 2).mean);
}

TEST_CASE("common random numbers share streams across methods") {
  sweep_request request;
  request.base = two_project(method_kind::individual, 0.0, 555);
  request.base.samples = 500;
  request.methods = {aggregation_method{method_kind::individual},
                     aggregation_method{method_kind::delegation}};
  request.group_counts = {3};
  request.beta_grid = {0.0};
  request.common_random_numbers = true;
  const std::vector<sweep_row> rows = run_sweep(request, 1);
  // at beta = 0 the two methods are the same function of the same draws
  CHECK(rows[0].estimate.mean == rows[1].estimate.mean);
  request.common_random_numbers = false;
  const std::vector<sweep_row> indep = run_sweep(request, 1);
  CHECK(indep[0].estimate.mean != indep[1].estimate.mean);
}

TEST_CASE("delegation sweep peaks within one grid step of the predicted breadth") {
  sweep_request request;
  request.base = baseline30(cost_structure::uniform);
  request.base.samples = 20000;
  request.base.master_seed = 4242;
  request.methods = {aggregation_method{method_kind::delegation}};
  request.group_counts = {3};
  for (int b = 0; b <= 10; ++b) request.beta_grid.push_back(b);
  const std::vector<sweep_row> rows = run_sweep(request, 2);
  std::size_t best = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].estimate.mean > rows[best].estimate.mean) best = i;
  }
  CHECK(std::abs(rows[best].beta - 10.0 / 3.0) <= 1.0);
}

TEST_CASE("config validation rejects bad scenarios") {
  scenario_config config = baseline30(cost_structure::uniform);
  config.group_count = 4;
  CHECK_THROWS(config.validate());
  config.allow_even_groups = true;
  CHECK_NOTHROW(config.validate());

  config = baseline30(cost_structure::uniform);
  config.info_error = 1.5;
  CHECK_THROWS(config.validate());

  config = baseline30(cost_structure::uniform);
  config.forced_choice = true;  // N_p must be 2
  CHECK_THROWS(config.validate());

  config = two_project(method_kind::individual, 0.0, 1);
  config.costs = cost_structure::decreasing;
  CHECK_THROWS(config.validate());

  config = baseline30(cost_structure::uniform);
  config.values = {1.0, 2.0};
  CHECK_THROWS(config.validate());
}

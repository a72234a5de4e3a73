#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ck/analytic.hpp"
#include "ck/rng.hpp"
#include "ck/simulator.hpp"

using namespace ck;

namespace {

two_project_scenario standard_scenario(double beta, int groups) {
  two_project_scenario s;
  s.low_value = 1.0;
  s.high_value = 2.0;
  s.t_min = 0.0;
  s.t_max = 10.0;
  s.panel = build_panel(5.0, beta, groups);
  return s;
}

}  // namespace

TEST_CASE("gauss-legendre integrates low-degree polynomials exactly") {
  const quadrature_rule& rule = gauss_legendre(8);
  double total = 0.0, quad = 0.0;
  for (int i = 0; i < 8; ++i) {
    total += rule.weights[i];
    quad += rule.weights[i] * rule.nodes[i] * rule.nodes[i];
    CHECK(rule.nodes[i] == doctest::Approx(-rule.nodes[7 - i]).epsilon(1e-13));
  }
  CHECK(total == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(quad == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("normal cdf reference points") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(normal_cdf(1.959963985) == doctest::Approx(0.975).epsilon(1e-9));
  CHECK(normal_cdf(-1.0) + normal_cdf(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(normal_pdf(0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-13));
}

TEST_CASE("aggregate spreads g") {
  const expertise_panel centered = build_panel(5, 0, 3);
  CHECK(g_agg(analytic_method::individual, 5.0, centered) == 0.0);
  CHECK(g_agg(analytic_method::arithmetic_mean, 0.0, centered) ==
        doctest::Approx(5.0 / std::sqrt(3.0)));
  const expertise_panel spread = build_panel(5, 4, 5);  // [1,3,5,7,9]
  CHECK(g_agg(analytic_method::delegation, 2.0, spread) == 1.0);
  CHECK(g_agg(analytic_method::median, 0.0, spread) == 5.0);  // middle of |t-e|: {1,3,5,7,9}
}

TEST_CASE("two-project expected value") {
  two_project_scenario s = standard_scenario(0.0, 3);
  CHECK(value_two(5.0, 5.0, s, analytic_method::arithmetic_mean) == 2.0);  // g = 0 twice

  // vanishing gap: V -> a + (b - a)/2
  two_project_scenario close = s;
  close.low_value = 1.0;
  close.high_value = 1.0 + 1e-9;
  const double v = value_two(0.0, 10.0, close, analytic_method::individual);
  CHECK(v == doctest::Approx(1.0 + 0.5e-9).epsilon(1e-12));

  // dominant gap: V -> b
  two_project_scenario wide = s;
  wide.high_value = 1e4;
  CHECK(value_two(4.9, 5.1, wide, analytic_method::individual) ==
        doctest::Approx(1e4).epsilon(1e-9));

  // frozen spot value: g1 = 2, g2 = 3 under Individual
  CHECK(value_two(3.0, 8.0, s, analytic_method::individual) ==
        doctest::Approx(1.0 + normal_cdf(1.0 / std::sqrt(13.0))).epsilon(1e-12));
  CHECK(value_two(3.0, 8.0, s, analytic_method::individual) ==
        doctest::Approx(1.60924).epsilon(1e-4));
}

TEST_CASE("median integral agrees with a sampling oracle") {
  two_project_scenario s = standard_scenario(4.0, 3);  // levels [1,5,9]
  const double t1 = 2.0, t2 = 7.5;
  const double quadrature = value_two_median(t1, t2, s, {16, 1e-5, 2048});

  stream_rng gen(90210);
  const int n = 1000000;
  int wins = 0;
  for (int k = 0; k < n; ++k) {
    double draws1[3], draws2[3];
    for (int j = 0; j < 3; ++j) {
      draws1[j] = s.low_value + std::abs(t1 - s.panel.levels[j]) * gen.next_normal();
      draws2[j] = s.high_value + std::abs(t2 - s.panel.levels[j]) * gen.next_normal();
    }
    for (double* d : {draws1, draws2}) {
      if (d[0] > d[1]) std::swap(d[0], d[1]);
      if (d[1] > d[2]) std::swap(d[1], d[2]);
      if (d[0] > d[1]) std::swap(d[0], d[1]);
    }
    if (draws1[1] < draws2[1]) ++wins;
  }
  const double pr = static_cast<double>(wins) / n;
  const double mc = s.low_value + (s.high_value - s.low_value) * pr;
  const double se = std::sqrt(pr * (1 - pr) / n);
  CHECK(std::abs(quadrature - mc) < 3 * se + 1e-4);
}

TEST_CASE("median performance agrees with the simulator route") {
  const quadrature_spec spec{16, 2e-3, 256};
  const double quadrature =
      performance_two(standard_scenario(4.0, 3), analytic_method::median, spec).value;

  scenario_config config;
  config.project_count = 2;
  config.group_count = 3;
  config.budget = rational(1);
  config.beta = 4.0;
  config.method = aggregation_method{method_kind::median};
  config.forced_choice = true;
  config.samples = 100000;
  config.master_seed = 777;
  const performance_estimate est = estimate_performance(config, 2);
  CHECK(std::abs(est.mean - quadrature) < 3 * est.std_error + spec.tolerance);
}

TEST_CASE("median integral symmetric and noiseless limits") {
  // b -> a: probability tends to 1/2
  two_project_scenario close = standard_scenario(3.0, 3);
  close.low_value = 1.0;
  close.high_value = 1.0 + 1e-7;
  const double v = value_two_median(4.0, 4.0, close, {16, 1e-5, 2048});
  CHECK((v - close.low_value) / (close.high_value - close.low_value) ==
        doctest::Approx(0.5).epsilon(1e-3));

  // all sigma -> 0: the better project always wins
  two_project_scenario s = standard_scenario(0.0, 3);
  CHECK(value_two_median(5.0, 5.0, s, {16, 1e-5, 2048}) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("closed-form performances reproduce the reference values") {
  const quadrature_spec spec{16, 1e-5, 512};
  const quadrature_result ind =
      performance_two(standard_scenario(4.0, 3), analytic_method::individual, spec);
  CHECK(ind.converged);
  CHECK(ind.value == doctest::Approx(1.626).epsilon(0.005 / 1.626));

  const double expected[] = {1.700, 1.744, 1.776};
  const int groups[] = {3, 5, 7};
  for (int k = 0; k < 3; ++k) {
    const quadrature_result mean =
        performance_two(standard_scenario(0.0, groups[k]), analytic_method::arithmetic_mean, spec);
    CHECK(mean.converged);
    CHECK(std::abs(mean.value - expected[k]) < 0.005);
  }
}

TEST_CASE("error-free panel saturates at the best value") {
  // t-interval collapsed onto the central expert: all g vanish
  two_project_scenario s = standard_scenario(0.0, 3);
  s.t_min = 5.0 - 1e-12;
  s.t_max = 5.0 + 1e-12;
  const quadrature_result r = performance_two(s, analytic_method::delegation, {16, 1e-6, 64});
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("breadth formulas") {
  CHECK(beta_opt(3, 5, 0, 10) == doctest::Approx(10.0 / 3.0));
  CHECK(beta_opt(5, 5, 0, 10) == doctest::Approx(4.0));
  CHECK(beta_opt(7, 5, 0, 10) == doctest::Approx(30.0 / 7.0));
  CHECK(beta_equiv(3, 5) == 10.0);
  CHECK(beta_equiv(5, 5) == 20.0);
  CHECK(beta_equiv(2, 0) == 0.0);
  CHECK_THROWS(beta_opt(0, 5, 0, 10));
  CHECK_THROWS(beta_equiv(1, 5));
}

TEST_CASE("value bounds and monotonicity in the gap") {
  stream_rng gen(8080);
  for (int c = 0; c < 200; ++c) {
    two_project_scenario s = standard_scenario(gen.next_uniform(0, 8), 3);
    s.low_value = gen.next_uniform(0.1, 5.0);
    s.high_value = s.low_value + gen.next_uniform(0.01, 5.0);
    const double t1 = gen.next_uniform(0, 10);
    const double t2 = gen.next_uniform(0, 10);
    for (analytic_method m : {analytic_method::arithmetic_mean, analytic_method::individual,
                              analytic_method::delegation}) {
      const double v = value_two(t1, t2, s, m);
      CHECK(v >= s.low_value);
      CHECK(v <= s.high_value);
      two_project_scenario wider = s;
      wider.high_value = s.high_value + 1.0;
      CHECK(value_two(t1, t2, wider, m) >= v);
    }
  }
}

TEST_CASE("mean performance never improves with breadth") {
  const quadrature_spec spec{16, 1e-5, 512};
  double previous = 3.0;
  for (double beta : {0.0, 1.0, 2.0, 4.0, 6.0, 8.0}) {
    const quadrature_result r =
        performance_two(standard_scenario(beta, 3), analytic_method::arithmetic_mean, spec);
    CHECK(r.value < previous + 1e-6);
    previous = r.value;
  }
}

TEST_CASE("delegation has an interior maximum at the predicted breadth") {
  const quadrature_spec spec{16, 1e-5, 512};
  for (int groups : {3, 5, 7}) {
    const double opt = beta_opt(groups, 5, 0, 10);
    const double at_opt =
        performance_two(standard_scenario(opt, groups), analytic_method::delegation, spec).value;
    const double at_zero =
        performance_two(standard_scenario(0.0, groups), analytic_method::delegation, spec).value;
    const double at_double =
        performance_two(standard_scenario(2 * opt, groups), analytic_method::delegation, spec).value;
    CHECK(at_opt > at_zero);
    CHECK(at_opt > at_double);
  }
}

TEST_CASE("beta = 0 ordering across methods") {
  const quadrature_spec spec{16, 2e-3, 256};
  const double mean =
      performance_two(standard_scenario(0.0, 3), analytic_method::arithmetic_mean, spec).value;
  const double median =
      performance_two(standard_scenario(0.0, 3), analytic_method::median, spec).value;
  const double delegation =
      performance_two(standard_scenario(0.0, 3), analytic_method::delegation, spec).value;
  const double individual =
      performance_two(standard_scenario(0.0, 3), analytic_method::individual, spec).value;
  CHECK(mean > median);
  CHECK(median > delegation);
  CHECK(delegation == doctest::Approx(individual).epsilon(1e-9));
}

TEST_CASE("non-convergence is reported") {
  two_project_scenario s = standard_scenario(4.0, 3);
  const quadrature_result r = performance_two(s, analytic_method::delegation, {16, 1e-14, 32});
  CHECK_FALSE(r.converged);
  CHECK(r.error_estimate > 1e-14);
  CHECK_THROWS(performance_two(s, analytic_method::delegation, {4, 1e-4, 64}));
}

// Collective-knapsack command line:
//   ck simulate --config <json> --out <csv>   Monte-Carlo sweep
//   ck analytic --config <json> --out <csv>   two-project quadrature sweep
//   ck solve    --values ... --weights ... --capacity W
//   ck plot     --in <csv> --out <svg>
//
// CK_THREADS overrides --threads; --paper-scale raises the sample count to
// the full 500,000-replica preset.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "ck/analytic.hpp"
#include "ck/config.hpp"
#include "ck/csv.hpp"
#include "ck/knapsack.hpp"
#include "ck/simulator.hpp"
#include "ck/svg.hpp"

namespace {

constexpr int kPaperScaleSamples = 500000;

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int resolve_threads(int flag_value) {
  if (const char* env = std::getenv("CK_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  if (flag_value >= 1) return flag_value;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

struct run_flags {
  std::string config_path;
  std::string out_path = "results.csv";
  int threads = 0;
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
  bool paper_scale = false;
};

void apply_overrides(ck::run_spec& spec, const run_flags& flags) {
  if (flags.seed) spec.sweep.base.master_seed = *flags.seed;
  if (flags.samples) spec.sweep.base.samples = *flags.samples;
  if (flags.paper_scale) spec.sweep.base.samples = kPaperScaleSamples;
}

ck::run_manifest make_manifest(const ck::run_spec& spec) {
  ck::run_manifest manifest;
  manifest.config_digest = ck::config_digest(spec);
  manifest.seed = spec.sweep.base.master_seed;
  manifest.timestamp = utc_timestamp();
  return manifest;
}

void emit(const ck::run_spec& spec, const std::vector<ck::sweep_row>& rows,
          const std::string& out_path) {
  const ck::run_manifest manifest = make_manifest(spec);
  ck::write_sweep_csv(out_path, rows, manifest);
  ck::write_manifest_file(out_path, manifest, ck::write_config(spec));
  std::cout << "wrote " << rows.size() << " rows to " << out_path << "\n";
}

int run_simulate(const run_flags& flags) {
  ck::run_spec spec = ck::parse_config_file(flags.config_path);
  apply_overrides(spec, flags);
  const std::vector<ck::sweep_row> rows = ck::run_sweep(spec.sweep, resolve_threads(flags.threads));
  emit(spec, rows, flags.out_path);
  return 0;
}

int run_analytic(const run_flags& flags) {
  ck::run_spec spec = ck::parse_config_file(flags.config_path);
  apply_overrides(spec, flags);
  const ck::scenario_config& base = spec.sweep.base;
  if (base.project_count != 2) {
    throw std::invalid_argument("analytic mode requires N_p = 2");
  }
  const std::vector<double> values = base.project_values();

  std::vector<ck::sweep_row> rows;
  for (const ck::aggregation_method& method : spec.sweep.methods) {
    const ck::analytic_method am = ck::analytic_method_from_name(method.name());
    for (int ns : spec.sweep.group_counts) {
      for (double beta : spec.sweep.beta_grid) {
        ck::two_project_scenario scenario;
        scenario.low_value = values[0];
        scenario.high_value = values[1];
        scenario.t_min = base.t_min;
        scenario.t_max = base.t_max;
        scenario.panel = ck::build_panel(base.expertise_center, beta, ns);
        const ck::quadrature_result result =
            ck::performance_two(scenario, am, spec.quadrature);
        if (!result.converged) {
          throw std::runtime_error("quadrature did not converge at beta=" + std::to_string(beta) +
                                   " (error estimate " + std::to_string(result.error_estimate) +
                                   ")");
        }
        ck::sweep_row row;
        row.method = method;
        row.group_count = ns;
        row.beta = beta;
        row.costs = base.costs;
        row.noise_multiplier = base.noise_multiplier;
        row.info_error = 0.0;
        row.estimate.mean = result.value;
        row.estimate.std_error = result.error_estimate;
        row.estimate.samples = 0;  // quadrature row
        rows.push_back(row);
      }
    }
  }
  emit(spec, rows, flags.out_path);
  return 0;
}

int run_solve(const std::vector<double>& values, const std::vector<std::string>& weights,
              const std::string& capacity) {
  ck::knapsack_instance instance;
  instance.item_values = values;
  for (const std::string& w : weights) instance.item_weights.push_back(ck::rational::parse(w));
  instance.capacity = ck::rational::parse(capacity);
  const ck::selection best = ck::solve(instance);
  std::cout << "chosen:";
  for (std::size_t i = 0; i < best.chosen.size(); ++i) {
    if (best.chosen[i]) std::cout << ' ' << (i + 1);
  }
  std::cout << "\ntotal_value: " << best.total_value
            << "\ntotal_weight: " << best.total_weight.str() << "\n";
  return 0;
}

int run_plot(const std::string& in_path, const std::string& out_path, const std::string& y_range) {
  const std::vector<ck::sweep_row> rows = ck::read_sweep_csv(in_path);
  ck::plot_options options;
  if (!y_range.empty()) {
    const auto colon = y_range.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("--y-range expects lo:hi");
    }
    options.y_min = std::stod(y_range.substr(0, colon));
    options.y_max = std::stod(y_range.substr(colon + 1));
  }
  std::string provenance = "source: " + in_path;
  const std::string manifest = ck::read_manifest_comment(in_path);
  if (!manifest.empty()) provenance += "; " + manifest;
  const std::string svg = ck::render_chart(rows, options, provenance);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << svg;
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"collective knapsack: aggregation methods under perception noise"};
  app.require_subcommand(1);

  run_flags sim_flags;
  CLI::App* simulate = app.add_subcommand("simulate", "Monte-Carlo performance sweep");
  simulate->add_option("--config", sim_flags.config_path, "JSON scenario/sweep config")->required();
  simulate->add_option("--out", sim_flags.out_path, "output CSV path");
  simulate->add_option("--threads", sim_flags.threads, "worker threads (0 = all cores)");
  simulate->add_option("--seed", sim_flags.seed, "override the config seed");
  simulate->add_option("--samples", sim_flags.samples, "override the config sample count");
  simulate->add_flag("--paper-scale", sim_flags.paper_scale, "run the 500,000-sample preset");

  run_flags ana_flags;
  CLI::App* analytic = app.add_subcommand("analytic", "two-project quadrature sweep");
  analytic->add_option("--config", ana_flags.config_path, "JSON scenario/sweep config")->required();
  analytic->add_option("--out", ana_flags.out_path, "output CSV path");
  analytic->add_option("--threads", ana_flags.threads, "accepted for symmetry; quadrature is serial");
  analytic->add_option("--seed", ana_flags.seed, "override the config seed");

  std::vector<double> solve_values;
  std::vector<std::string> solve_weights;
  std::string solve_capacity;
  CLI::App* solve = app.add_subcommand("solve", "one-shot binary knapsack");
  solve->add_option("--values", solve_values, "item values")->required()->delimiter(',');
  solve->add_option("--weights", solve_weights, "item weights (rationals like 9/10)")
      ->required()
      ->delimiter(',');
  solve->add_option("--capacity", solve_capacity, "budget W (rational)")->required();

  std::string plot_in;
  std::string plot_out = "plot.svg";
  std::string plot_y_range;
  CLI::App* plot = app.add_subcommand("plot", "render a sweep CSV as an SVG chart");
  plot->add_option("--in", plot_in, "sweep CSV")->required();
  plot->add_option("--out", plot_out, "output SVG path");
  plot->add_option("--y-range", plot_y_range, "vertical range lo:hi");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return run_simulate(sim_flags);
    if (analytic->parsed()) return run_analytic(ana_flags);
    if (solve->parsed()) return run_solve(solve_values, solve_weights, solve_capacity);
    if (plot->parsed()) return run_plot(plot_in, plot_out, plot_y_range);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

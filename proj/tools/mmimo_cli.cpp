// Command-line harness: threshold reports, validation suite and CSV sweeps.
//
//   mmimo validate [--seed N]
//   mmimo thresholds --m 24 --k 20 --pt-db 0 --pu-db 0
//   mmimo sweep --axis power-db --axis-range -20:20:1 --curves zf-vec,mrt-mat --out dl.csv
//   mmimo reproduce-fig 6a --seed 7 --out fig6a.csv
//
// Options can also come from a "key = value" file given with --config;
// options on the command line take precedence.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "mmimo/harness.hpp"
#include "mmimo/types.hpp"

namespace {

struct Options {
  std::uint32_t m = 24;
  std::uint32_t k = 20;
  double pt_db = 0.0;
  double pu_db = 0.0;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string out;
  std::string axis = "users";
  std::string axis_range;
  std::string curves;
  std::string figure;
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw mmimo::ConfigError("out: cannot open '" + path + "' for writing");
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Massive MIMO ZF / MRT / MRC sum-rate analysis harness"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key = value file");

  Options o;
  CLI::Option* m_opt = app.add_option("--m", o.m, "Base-station antennas")->check(CLI::PositiveNumber);
  CLI::Option* k_opt = app.add_option("--k", o.k, "Single-antenna users")->check(CLI::PositiveNumber);
  CLI::Option* pt_opt = app.add_option("--pt-db", o.pt_db, "Downlink total SNR in dB");
  CLI::Option* pu_opt = app.add_option("--pu-db", o.pu_db, "Uplink per-user SNR in dB");
  CLI::Option* trials_opt =
      app.add_option("--trials", o.trials, "Monte-Carlo realizations")->check(CLI::PositiveNumber);
  CLI::Option* seed_opt = app.add_option("--seed", o.seed, "Random seed");
  app.add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  app.add_option("--out", o.out, "Output file (default: standard output)");
  CLI::Option* axis_opt =
      app.add_option("--axis", o.axis, "Sweep axis")->check(CLI::IsMember({"users", "power-db", "antennas"}));
  CLI::Option* range_opt = app.add_option("--axis-range", o.axis_range, "start:stop:step");
  CLI::Option* curves_opt = app.add_option("--curves", o.curves, "Comma-separated curve names");

  auto* validate = app.add_subcommand("validate", "Run the statistical and algebraic validation suite");
  auto* thresholds = app.add_subcommand("thresholds", "Print mode-selection thresholds");
  auto* sweep = app.add_subcommand("sweep", "Run a custom sweep and write CSV");
  auto* reproduce = app.add_subcommand("reproduce-fig", "Run a figure preset and write CSV");
  reproduce->add_option("figure", o.figure, "Figure id")
      ->required()
      ->check(CLI::IsMember(std::vector<std::string>(mmimo::harness::figure_ids().begin(),
                                                     mmimo::harness::figure_ids().end())));
  for (auto* sub : {validate, thresholds, sweep, reproduce}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  const unsigned threads = o.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : o.threads;
  const mmimo::MonteCarloOptions mc{threads};

  try {
    if (*validate) {
      mmimo::harness::ValidationOptions vo;
      vo.seed = o.seed;
      const auto report = mmimo::harness::run_validation(vo);
      emit(mmimo::harness::format_report(report), o.out);
      return report.passed() ? 0 : 1;
    }

    if (*thresholds) {
      std::optional<double> pt, pu;
      if (pt_opt->count() > 0 || pu_opt->count() == 0) pt = o.pt_db;
      if (pu_opt->count() > 0 || pt_opt->count() == 0) pu = o.pu_db;
      emit(mmimo::harness::print_thresholds(o.m, o.k, pt, pu), o.out);
      return 0;
    }

    mmimo::harness::SweepSpec spec;
    if (*reproduce) {
      spec = mmimo::harness::figure_spec(o.figure);
      if (m_opt->count() > 0) spec.fixed.m = o.m;
      if (k_opt->count() > 0) spec.fixed.k = o.k;
      if (pt_opt->count() > 0) spec.fixed.pt = mmimo::db_to_linear(o.pt_db);
      if (pu_opt->count() > 0) spec.fixed.pu = mmimo::db_to_linear(o.pu_db);
      if (axis_opt->count() > 0) spec.axis = mmimo::harness::parse_axis(o.axis);
      if (range_opt->count() > 0) spec.axis_values = mmimo::harness::parse_axis_range(o.axis_range);
      if (curves_opt->count() > 0) spec.curves = mmimo::harness::parse_curves(o.curves);
    } else {
      spec.axis = mmimo::harness::parse_axis(o.axis);
      spec.fixed = {o.m, o.k, mmimo::db_to_linear(o.pt_db), mmimo::db_to_linear(o.pu_db), o.trials, o.seed};
      if (range_opt->count() == 0) throw mmimo::ConfigError("axis-range is required for sweep");
      spec.axis_values = mmimo::harness::parse_axis_range(o.axis_range);
      if (curves_opt->count() == 0) throw mmimo::ConfigError("curves is required for sweep");
      spec.curves = mmimo::harness::parse_curves(o.curves);
    }
    if (trials_opt->count() > 0) spec.fixed.trials = o.trials;
    if (seed_opt->count() > 0) spec.fixed.seed = o.seed;

    emit(mmimo::harness::run_sweep(spec, mc), o.out);
    return 0;
  } catch (const mmimo::DegenerateChannel& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

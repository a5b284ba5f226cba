#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mmon/config_io.hpp"
#include "mmon/csv.hpp"
#include "mmon/errors.hpp"
#include "mmon/experiment.hpp"
#include "mmon/simulator.hpp"
#include "mmon/waf_allocator.hpp"
#include "mmon/war_allocator.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitReportFailure = 4;

struct Options {
  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
  std::string plot_script;
};

void add_common(CLI::App* sub, Options& opts, bool with_plot) {
  sub->add_option("--config", opts.config_path, "JSON configuration file")
      ->required();
  sub->add_option("--out", opts.out_path, "output CSV path (default: stdout)");
  sub->add_option("--seed", opts.seed, "override the config's RNG seed");
  sub->add_option("--format", opts.format, "output format (only 'csv')");
  if (with_plot) {
    sub->add_option("--plot-script", opts.plot_script,
                    "also write a gnuplot script (requires --out)");
  }
}

mmon::RunConfig load(const Options& opts) {
  if (opts.format != "csv") {
    throw mmon::ValidationError("unsupported output format '" + opts.format +
                                "' (only 'csv' is available)");
  }
  mmon::RunConfig cfg = mmon::load_config(opts.config_path);
  if (opts.seed) {
    cfg.sim.seed = *opts.seed;
    cfg.pgd.seed = *opts.seed;
  }
  return cfg;
}

void emit(const mmon::Table& table, const Options& opts) {
  if (opts.out_path.empty()) {
    mmon::write_csv(table, std::cout);
  } else {
    mmon::write_csv_file(table, opts.out_path);
  }
}

void emit_plot_script(const Options& opts, const std::string& body) {
  if (opts.plot_script.empty()) return;
  if (opts.out_path.empty()) {
    throw mmon::ValidationError(
        "--plot-script needs --out so the script can reference the CSV");
  }
  std::ofstream out(opts.plot_script, std::ios::binary);
  if (!out) {
    throw mmon::ValidationError("cannot open plot script path: " +
                                opts.plot_script);
  }
  out << body;
}

std::string mu_sweep_plot(const std::string& csv) {
  return "set datafile separator ','\n"
         "set key autotitle columnhead\n"
         "set xlabel 'sampling rate'\n"
         "plot '" +
         csv +
         "' using 1:2 with lines, '' using 1:3 with lines, "
         "'' using 1:4 with lines, '' using 1:5 with lines\n";
}

std::string budget_sweep_plot(const std::string& csv,
                              const std::vector<mmon::Policy>& policies) {
  std::string script =
      "set datafile separator ','\n"
      "set xlabel 'budget'\n"
      "set ylabel 'WAR'\n"
      "plot ";
  for (std::size_t i = 0; i < policies.size(); ++i) {
    const std::string name = mmon::policy_name(policies[i]);
    if (i > 0) script += ", ";
    script += "'" + csv + "' using (strcol(2) eq '" + name +
              "' ? $1 : NaN):3 with linespoints title '" + name + "'";
  }
  script += "\n";
  return script;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Monitoring quality of Markov machines under sampled state "
      "estimation: analytic metrics, Monte Carlo validation, and "
      "sampling-budget allocation"};
  app.require_subcommand(1);

  Options opts;
  int exit_code = 0;

  CLI::App* metrics = app.add_subcommand(
      "metrics", "freshness/FAR/FRR of one machine at one sampling rate");
  add_common(metrics, opts, false);
  metrics->callback([&] {
    const mmon::RunConfig cfg = load(opts);
    emit(mmon::run_mu_sweep(cfg.single_machine(), cfg.map(),
                            {cfg.require_mu()}),
         opts);
  });

  CLI::App* sweep_mu = app.add_subcommand(
      "sweep-mu", "metric profile of one machine across sampling rates");
  add_common(sweep_mu, opts, true);
  sweep_mu->callback([&] {
    const mmon::RunConfig cfg = load(opts);
    emit(mmon::run_mu_sweep(cfg.single_machine(), cfg.map(), cfg.mu_grid()),
         opts);
    emit_plot_script(opts, mu_sweep_plot(opts.out_path));
  });

  CLI::App* sweep_budget = app.add_subcommand(
      "sweep-budget", "policy comparison across sampling budgets");
  add_common(sweep_budget, opts, true);
  sweep_budget->callback([&] {
    const mmon::RunConfig cfg = load(opts);
    emit(mmon::run_budget_sweep(cfg.fleet(), cfg.budget_grid(),
                                cfg.effective_policies(), cfg.pgd),
         opts);
    emit_plot_script(
        opts, budget_sweep_plot(opts.out_path, cfg.effective_policies()));
  });

  CLI::App* allocate_war = app.add_subcommand(
      "allocate-war", "WAR-optimal sampling rates by water-filling");
  add_common(allocate_war, opts, false);
  allocate_war->callback([&] {
    const mmon::RunConfig cfg = load(opts);
    const mmon::FleetSpec fleet = cfg.fleet();
    const mmon::WaterFillResult result = mmon::water_fill(fleet);
    const double war = mmon::war_value(fleet, result.alloc);
    mmon::Table table;
    table.header = {"machine", "mu", "marginal", "psi", "war"};
    for (std::size_t i = 0; i < fleet.size(); ++i) {
      table.add_row({std::to_string(i + 1),
                     mmon::format_number(result.alloc.mu[i]),
                     mmon::format_number(result.marginals[i]),
                     mmon::format_number(result.psi),
                     mmon::format_number(war)});
    }
    emit(table, opts);
  });

  CLI::App* allocate_waf = app.add_subcommand(
      "allocate-waf",
      "WAF-optimal sampling rates by multi-start projected gradient descent");
  add_common(allocate_waf, opts, false);
  allocate_waf->callback([&] {
    const mmon::RunConfig cfg = load(opts);
    const mmon::FleetSpec fleet = cfg.fleet();
    const mmon::WafSolution solution = mmon::multi_start_waf(fleet, cfg.pgd);
    mmon::Table table;
    table.header = {"machine", "mu", "waf", "stationarity", "origin"};
    for (std::size_t i = 0; i < fleet.size(); ++i) {
      table.add_row({std::to_string(i + 1),
                     mmon::format_number(solution.alloc.mu[i]),
                     mmon::format_number(solution.waf),
                     mmon::format_number(solution.stationarity),
                     mmon::waf_origin_label(solution.origin, fleet.size())});
    }
    emit(table, opts);
  });

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Monte Carlo run of one machine plus its allocator");
  add_common(simulate, opts, false);
  simulate->callback([&] {
    const mmon::RunConfig cfg = load(opts);
    const mmon::SimResult result = mmon::simulate(
        cfg.single_machine(), cfg.require_mu(), cfg.map(), cfg.sim);
    mmon::Table table;
    table.header = {"replication", "far",  "frr",  "freshness",
                    "n_a",         "n_fa", "n_r",  "n_fr"};
    for (std::size_t i = 0; i < result.replication_stats.size(); ++i) {
      const mmon::ReplicationStats& stats = result.replication_stats[i];
      const mmon::MetricTriple& triple = result.replication_metrics[i];
      table.add_row({std::to_string(i), mmon::format_number(triple.far),
                     mmon::format_number(triple.frr),
                     mmon::format_number(triple.freshness),
                     std::to_string(stats.n_a), std::to_string(stats.n_fa),
                     std::to_string(stats.n_r), std::to_string(stats.n_fr)});
    }
    emit(table, opts);
  });

  CLI::App* validate = app.add_subcommand(
      "validate", "check the simulator against the analytic metrics");
  add_common(validate, opts, false);
  validate->callback([&] {
    const mmon::RunConfig cfg = load(opts);
    const mmon::ValidationReport report = mmon::run_validation(
        cfg.single_machine(), cfg.require_mu(), cfg.map(), cfg.sim);
    emit(report.to_table(), opts);
    if (!report.all_pass) exit_code = kExitReportFailure;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  } catch (const mmon::NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const mmon::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}

// Command-line front end: single solves, convergence studies, the
// simultaneous space/time refinement study, weight-table dumps, and the
// built-in property self-test.  All reports are CSV, to stdout or a
// file, byte-deterministic for a fixed configuration.

#include "fade/fractional.hpp"
#include "fade/manufactured.hpp"
#include "fade/pi_quadrature.hpp"
#include "fade/selftest.hpp"
#include "fade/solver.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace {

struct Options {
  double alpha = 0.4;
  double beta = 1.5;
  double gamma = 0.5;
  double kappa1 = 0.001;
  double kappa2 = 2.0;
  double horizon = 1.0;
  int n = 8;
  int m = 20;
  std::string case_name = "example1";
  std::string out = "-";
  std::vector<int> vary;
  std::string kind = "beta";
  std::optional<double> param;
};

int worker_count() {
  if (const char* env = std::getenv("FADE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) {
      return static_cast<int>(v);
    }
    std::cerr << "warning: ignoring invalid FADE_THREADS='" << env << "'\n";
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Writes `body(stream)` to the chosen destination; "-" means stdout.
int with_output(const std::string& path,
                const std::function<void(std::ostream&)>& body) {
  if (path == "-") {
    body(std::cout);
    return 0;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot open '" << path << "' for writing\n";
    return 1;
  }
  body(file);
  file.flush();
  if (!file) {
    std::cerr << "error: writing '" << path << "' failed\n";
    return 1;
  }
  return 0;
}

fade::ManufacturedCase make_case(const Options& opt) {
  return fade::build_case(opt.case_name, fade::FracOrder::temporal(opt.alpha),
                          fade::FracOrder::dispersive(opt.beta),
                          fade::FracOrder::advective(opt.gamma), opt.kappa1,
                          opt.kappa2, opt.horizon);
}

int run_solve(const Options& opt) {
  const fade::ManufacturedCase mcase = make_case(opt);
  fade::Grid grid{opt.n, opt.m};
  const fade::SolutionHistory history = fade::solve(mcase.problem, grid);
  const fade::ErrorNorms norms =
      fade::error_norms(history, mcase.exact, mcase.problem.horizon);

  // Single solve reported as a one-row study (no rates).
  fade::ConvergenceReport report;
  fade::ConvergenceRow row;
  row.param = opt.param.value_or(opt.beta);
  row.h = grid.h();
  row.tau = grid.tau(mcase.problem.horizon);
  row.e2 = norms.e2;
  row.einf = norms.einf;
  report.rows.push_back(row);
  return with_output(opt.out,
                     [&](std::ostream& os) { fade::write_csv(report, os); });
}

int run_convergence_cmd(const Options& opt) {
  const fade::ManufacturedCase mcase = make_case(opt);
  const fade::ConvergenceReport report = fade::run_convergence(
      mcase, fade::Vary::space, opt.vary, opt.m,
      opt.param.value_or(opt.beta), worker_count());
  return with_output(opt.out,
                     [&](std::ostream& os) { fade::write_csv(report, os); });
}

int run_table_cmd(const Options& opt) {
  const fade::ManufacturedCase mcase = make_case(opt);
  const fade::PairedReport report =
      fade::run_paired(mcase, fade::paired_levels(), worker_count());
  return with_output(opt.out,
                     [&](std::ostream& os) { fade::write_csv(report, os); });
}

int run_weights(const Options& opt) {
  const fade::FracOrder order = opt.kind == "beta"
                                    ? fade::FracOrder::dispersive(opt.beta)
                                    : fade::FracOrder::advective(opt.gamma);
  const fade::PIWeightTable table(order, opt.n);
  return with_output(opt.out, [&](std::ostream& os) {
    os << "r,j,w\n";
    char buf[40];
    for (int r = 1; r < opt.n; ++r) {
      const std::span<const double> row = table.row(r);
      for (std::size_t j = 0; j < row.size(); ++j) {
        std::snprintf(buf, sizeof(buf), "%.16e", row[j]);
        os << r << ',' << j << ',' << buf << '\n';
      }
    }
  });
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collocation solver for the space-time fractional "
               "advection-dispersion equation on [0,1]"};
  app.require_subcommand(1);

  Options opt;
  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--alpha", opt.alpha, "temporal order, in (0,1)");
    cmd->add_option("--beta", opt.beta, "dispersive order, in (1,2)");
    cmd->add_option("--gamma", opt.gamma, "advective order, in (0,1)");
    cmd->add_option("--kappa1", opt.kappa1, "dispersion coefficient, > 0");
    cmd->add_option("--kappa2", opt.kappa2, "advection coefficient, > 0");
    cmd->add_option("--T", opt.horizon, "final time, > 0");
    cmd->add_option("--N", opt.n, "space cells, >= 2");
    cmd->add_option("--M", opt.m, "time steps, >= 1");
    cmd->add_option("--case", opt.case_name, "manufactured case")
        ->check(CLI::IsMember({"example1", "example2"}));
    cmd->add_option("--out", opt.out, "output path, '-' for stdout");
  };

  CLI::App* solve = app.add_subcommand(
      "solve", "single solve; reports errors against the exact solution");
  add_common(solve);
  solve->add_option("--param", opt.param,
                    "value echoed into the CSV param column (default: beta)");

  CLI::App* conv = app.add_subcommand(
      "convergence", "space-refinement study at fixed time step");
  add_common(conv);
  conv->add_option("--vary", opt.vary,
                   "doubling sequence of space cell counts, e.g. 4,8,16")
      ->required()
      ->delimiter(',');
  conv->add_option("--param", opt.param,
                   "value echoed into the CSV param column (default: beta)");

  CLI::App* table = app.add_subcommand(
      "table", "simultaneous space/time refinement study "
               "(h,tau) = (1/4,1/10), (1/6,1/20), (1/8,1/30), (1/10,1/40)");
  add_common(table);

  CLI::App* weights = app.add_subcommand(
      "weights", "dump a product-integration weight table as CSV");
  add_common(weights);
  weights->add_option("--kind", opt.kind,
                      "which spatial operator's weights to dump")
      ->check(CLI::IsMember({"beta", "gamma"}));

  CLI::App* selftest =
      app.add_subcommand("selftest", "run the built-in property suites");
  (void)selftest;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2; // help/version exit clean, usage errors as 2
  }

  try {
    if (solve->parsed()) {
      return run_solve(opt);
    }
    if (conv->parsed()) {
      return run_convergence_cmd(opt);
    }
    if (table->parsed()) {
      return run_table_cmd(opt);
    }
    if (weights->parsed()) {
      return run_weights(opt);
    }
    return fade::run_selftest(std::cout) ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

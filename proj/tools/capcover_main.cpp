// capcover: random spherical cap coverage experiments.
//
// Exit codes: 0 success, 1 check failure, 2 usage or domain error, 3 I/O error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "capcover/check.hpp"
#include "capcover/errors.hpp"
#include "capcover/estimation.hpp"
#include "capcover/moments.hpp"
#include "capcover/sweep.hpp"

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

// Parameter given as exactly one of --p, --a, or --c.
struct CapSize {
  std::vector<double> p;
  std::vector<double> a;
  std::vector<double> c;

  void add_options(CLI::App& cmd, bool many) {
    auto* op = cmd.add_option("--p", p, "cap area fraction");
    auto* oa = cmd.add_option("--a", a, "cap angular radius (radians)");
    auto* oc = cmd.add_option("--c", c, "threshold constant, p = c ln N / N");
    for (auto* o : {op, oa, oc}) {
      if (!many) o->expected(1);
    }
    op->excludes(oa, oc);
    oa->excludes(oc);
  }

  std::vector<capcover::ModelParams> grid(std::int64_t n) const {
    std::vector<capcover::ModelParams> out;
    for (double v : p) out.push_back(capcover::ModelParams::from_fraction(n, v));
    for (double v : a) out.push_back(capcover::ModelParams::from_radius(n, v));
    for (double v : c) out.push_back(capcover::ModelParams::from_fraction(n, capcover::threshold_p(n, v)));
    if (out.empty()) throw CLI::ValidationError("one of --p, --a, --c is required");
    return out;
  }
};

template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw capcover::IoError("cannot open '" + path + "' for writing");
  fn(out);
  out.flush();
  if (!out) throw capcover::IoError("failed writing '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random spherical cap coverage: exact coverage decisions, Monte Carlo "
               "moments, analytic bounds and threshold sweeps"};
  app.require_subcommand(1);

  // analytic
  auto* analytic = app.add_subcommand("analytic", "E[u0] and the second-moment bounds/integral");
  std::vector<std::int64_t> analytic_n;
  CapSize analytic_size;
  double analytic_tol = capcover::kDefaultMomentTolerance;
  std::string analytic_out;
  analytic->add_option("--n", analytic_n, "cap counts")->required();
  analytic_size.add_options(*analytic, true);
  analytic->add_option("--tol", analytic_tol, "absolute quadrature tolerance");
  analytic->add_option("--out", analytic_out, "output file (default stdout)");

  // qtheta
  auto* qtheta = app.add_subcommand("qtheta", "tabulate the overlap fraction q(theta)");
  double qtheta_a = 0.0;
  int qtheta_points = 181;
  std::string qtheta_out;
  qtheta->add_option("--a", qtheta_a, "cap angular radius (radians)")->required();
  qtheta->add_option("--points", qtheta_points, "theta grid points over [0, pi]");
  qtheta->add_option("--out", qtheta_out, "output file (default stdout)");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "single (N, p) cell, verbose");
  std::int64_t sim_n = 0;
  CapSize sim_size;
  std::int64_t sim_reps = 200;
  std::int64_t sim_points = 2000;
  std::uint64_t sim_seed = 0;
  unsigned sim_threads = 1;
  simulate->add_option("--n", sim_n, "cap count")->required();
  sim_size.add_options(*simulate, false);
  simulate->add_option("--replications", sim_reps, "configurations R");
  simulate->add_option("--test-points", sim_points, "test points M per configuration");
  simulate->add_option("--seed", sim_seed, "master seed");
  simulate->add_option("--threads", sim_threads, "worker threads (speed only)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "coverage sweep over an (N, c) grid");
  capcover::SweepConfig sweep_config;
  std::string sweep_format = "csv";
  sweep->add_option("--n-values", sweep_config.n_values, "cap counts")->required();
  sweep->add_option("--c-values", sweep_config.c_values, "threshold constants c")->required();
  sweep->add_option("--replications", sweep_config.replications, "configurations per cell");
  sweep->add_option("--test-points", sweep_config.test_points, "test points per configuration");
  sweep->add_option("--seed", sweep_config.seed, "master seed");
  sweep->add_option("--out", sweep_config.output_path, "output file (default stdout)");
  sweep->add_option("--format", sweep_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--threads", sweep_config.threads, "worker threads (speed only)");
  sweep->add_flag("--timing", sweep_config.record_timing, "fill the wall_ms column");

  // check
  auto* check = app.add_subcommand("check", "run the cross-check suites");
  std::string check_level = "fast";
  capcover::CheckContext check_context;
  check->add_option("--level", check_level, "fast or full")->check(CLI::IsMember({"fast", "full"}));
  check->add_option("--seed", check_context.seed, "seed for the randomized checks");
  check->add_option("--threads", check_context.threads, "worker threads (speed only)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (analytic->parsed()) {
      std::vector<capcover::ModelParams> grid;
      for (auto n : analytic_n) {
        const auto cells = analytic_size.grid(n);
        grid.insert(grid.end(), cells.begin(), cells.end());
      }
      const auto rows = capcover::analytic_table(grid, analytic_tol);
      with_output(analytic_out, [&](std::ostream& out) { capcover::write_analytic_csv(out, rows); });
    } else if (qtheta->parsed()) {
      with_output(qtheta_out,
                  [&](std::ostream& out) { capcover::write_qtheta_csv(out, qtheta_a, qtheta_points); });
    } else if (simulate->parsed()) {
      const capcover::ModelParams params = sim_size.grid(sim_n).front();
      const capcover::TrialPlan plan{params.n(), params.a(), sim_points, sim_reps,
                                     capcover::Seed{sim_seed, 0}};
      const auto joint = capcover::estimate_coverage_and_first_moment(plan, sim_threads);
      std::cout << "N = " << params.n() << "\n"
                << "p = " << capcover::format_real(params.p()) << "\n"
                << "a = " << capcover::format_real(params.a()) << "\n"
                << "replications = " << sim_reps << ", test points = " << sim_points << "\n"
                << "coverage_freq = " << capcover::format_real(joint.coverage.probability.mean)
                << " +/- " << capcover::format_real(joint.coverage.probability.std_error) << " ("
                << joint.coverage.covered_count << " covered)\n"
                << "u0_mean = " << capcover::format_real(joint.first_moment.mean) << " +/- "
                << capcover::format_real(joint.first_moment.std_error) << "\n"
                << "E[u0] analytic = " << capcover::format_real(capcover::expected_u0(params))
                << "\n";
      if (sim_points >= 2) {
        const auto second = capcover::estimate_second_moment(plan, sim_threads);
        std::cout << "u0^2 estimate = " << capcover::format_real(second.mean) << " +/- "
                  << capcover::format_real(second.std_error) << "\n";
      }
      if (params.p() <= 0.5) {
        const auto m = capcover::moment_report(params);
        std::cout << "E[u0^2] lower / integral / upper = "
                  << capcover::format_real(m.e_u0sq_lower) << " / "
                  << capcover::format_real(m.e_u0sq_integral) << " / "
                  << capcover::format_real(m.e_u0sq_upper) << "\n";
      } else {
        std::cout << "E[u0^2] bounds: p > 1/2, out of domain\n";
      }
      if (joint.coverage.witness_failures > 0 || joint.coverage.marginal > 0) {
        std::cerr << "warning: " << joint.coverage.witness_failures
                  << " witness construction failure(s), " << joint.coverage.marginal
                  << " marginal verdict(s)\n";
      }
    } else if (sweep->parsed()) {
      sweep_config.format =
          sweep_format == "json" ? capcover::OutputFormat::json : capcover::OutputFormat::csv;
      const auto records = capcover::run_sweep(sweep_config);
      if (sweep_config.output_path.empty() || sweep_config.output_path == "-") {
        if (sweep_config.format == capcover::OutputFormat::json) {
          capcover::write_sweep_json(std::cout, records);
        } else {
          capcover::write_sweep_csv(std::cout, records);
        }
      } else {
        capcover::write_sweep_file(sweep_config, records);
      }
    } else if (check->parsed()) {
      const auto level = check_level == "full" ? capcover::CheckLevel::full : capcover::CheckLevel::fast;
      const auto report = capcover::run_check(level, check_context);
      capcover::print_check_report(std::cout, report);
      return report.all_passed() ? 0 : kExitCheckFailed;
    }
  } catch (const capcover::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::logic_error& e) {
    // DomainError, DegenerateCapError, out_of_range
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}

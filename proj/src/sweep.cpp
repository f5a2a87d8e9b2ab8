#include "capcover/sweep.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "capcover/errors.hpp"
#include "capcover/estimation.hpp"
#include "capcover/geometry.hpp"
#include "capcover/random.hpp"
#include "json.hpp"

namespace capcover {
namespace {

constexpr double kRecordTolerance = 1e-12;

void write_optional(std::ostream& out, const std::optional<double>& v) {
  if (v) out << format_real(*v);
}

nlohmann::ordered_json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

std::string format_real(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  return buffer;
}

void SweepConfig::validate() const {
  if (n_values.empty() || c_values.empty()) {
    throw DomainError("sweep: need at least one N and one c value");
  }
  for (auto n : n_values) {
    if (n < 2) throw DomainError("sweep: N = " + std::to_string(n) + " < 2");
  }
  for (double c : c_values) {
    if (!(c >= 0.0)) throw DomainError("sweep: c = " + std::to_string(c) + " is negative");
  }
  if (replications < 1) throw DomainError("sweep: replications must be >= 1");
  if (test_points < 1) throw DomainError("sweep: test points must be >= 1");
  // Surfaces p > 1 before any simulation runs.
  for (auto n : n_values) {
    for (double c : c_values) threshold_p(n, c);
  }
}

std::uint64_t cell_seed(std::uint64_t master, std::int64_t n, double c) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ static_cast<std::uint64_t>(n));
  return splitmix64(h ^ std::bit_cast<std::uint64_t>(c));
}

void validate_record(const SweepRecord& r) {
  auto fail = [&r](const std::string& what) {
    throw DomainError("sweep record N=" + std::to_string(r.n) + " c=" + format_real(r.c) +
                      ": " + what);
  };
  if (r.covered_count < 0 || r.covered_count > r.replications) fail("covered_count > replications");
  if (r.coverage_freq !=
      static_cast<double>(r.covered_count) / static_cast<double>(r.replications)) {
    fail("coverage_freq != covered_count / replications");
  }
  if (!(std::abs(r.p - p_from_a(r.a)) <= kRecordTolerance)) fail("p != sin^2(a/2)");
  const double expected = std::pow(1.0 - r.p, static_cast<double>(r.n));
  if (!(std::abs(r.eu0_analytic - expected) <= kRecordTolerance)) fail("eu0_analytic != (1-p)^N");
  if (r.out_of_domain == r.eu0sq_integral.has_value()) fail("moment fields inconsistent with flag");
}

std::vector<SweepRecord> run_sweep(const SweepConfig& config) {
  config.validate();
  std::vector<SweepRecord> records;
  records.reserve(config.n_values.size() * config.c_values.size());
  for (const auto n : config.n_values) {
    for (const double c : config.c_values) {
      const auto start = std::chrono::steady_clock::now();
      const ModelParams params = ModelParams::from_fraction(n, threshold_p(n, c));

      SweepRecord r;
      r.n = n;
      r.c = c;
      r.p = params.p();
      r.a = params.a();
      r.replications = config.replications;
      r.seed = cell_seed(config.seed, n, c);

      const TrialPlan plan{n, params.a(), config.test_points, config.replications, Seed{r.seed, 0}};
      const JointEstimate sim = estimate_coverage_and_first_moment(plan, config.threads);
      r.covered_count = sim.coverage.covered_count;
      r.coverage_freq = sim.coverage.probability.mean;
      r.coverage_stderr = sim.coverage.probability.std_error;
      r.u0_mean = sim.first_moment.mean;
      r.u0_stderr = sim.first_moment.std_error;
      r.eu0_analytic = expected_u0(params);

      r.out_of_domain = params.p() > 0.5;
      if (!r.out_of_domain) {
        const MomentReport m = moment_report(params);
        r.eu0sq_lower = m.e_u0sq_lower;
        r.eu0sq_integral = m.e_u0sq_integral;
        r.eu0sq_upper = m.e_u0sq_upper;
      }
      if (config.record_timing) {
        r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                              start)
                        .count();
      }
      validate_record(r);
      records.push_back(r);
    }
  }
  return records;
}

std::string sweep_csv_header() {
  return "N,c,p,a,replications,covered_count,coverage_freq,coverage_stderr,u0_mean,u0_stderr,"
         "eu0_analytic,eu0sq_lower,eu0sq_integral,eu0sq_upper,wall_ms,seed,out_of_domain";
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records) {
  out << sweep_csv_header() << '\n';
  for (const auto& r : records) {
    out << r.n << ',' << format_real(r.c) << ',' << format_real(r.p) << ',' << format_real(r.a)
        << ',' << r.replications << ',' << r.covered_count << ',' << format_real(r.coverage_freq)
        << ',' << format_real(r.coverage_stderr) << ',' << format_real(r.u0_mean) << ','
        << format_real(r.u0_stderr) << ',' << format_real(r.eu0_analytic) << ',';
    write_optional(out, r.eu0sq_lower);
    out << ',';
    write_optional(out, r.eu0sq_integral);
    out << ',';
    write_optional(out, r.eu0sq_upper);
    out << ',';
    write_optional(out, r.wall_ms);
    out << ',' << r.seed << ',' << (r.out_of_domain ? 1 : 0) << '\n';
  }
}

void write_sweep_json(std::ostream& out, const std::vector<SweepRecord>& records) {
  auto array = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["N"] = r.n;
    j["c"] = r.c;
    j["p"] = r.p;
    j["a"] = r.a;
    j["replications"] = r.replications;
    j["covered_count"] = r.covered_count;
    j["coverage_freq"] = r.coverage_freq;
    j["coverage_stderr"] = r.coverage_stderr;
    j["u0_mean"] = r.u0_mean;
    j["u0_stderr"] = r.u0_stderr;
    j["eu0_analytic"] = r.eu0_analytic;
    j["eu0sq_lower"] = optional_json(r.eu0sq_lower);
    j["eu0sq_integral"] = optional_json(r.eu0sq_integral);
    j["eu0sq_upper"] = optional_json(r.eu0sq_upper);
    j["wall_ms"] = optional_json(r.wall_ms);
    j["seed"] = r.seed;
    j["out_of_domain"] = r.out_of_domain ? 1 : 0;
    array.push_back(std::move(j));
  }
  out << array.dump(2) << '\n';
}

void write_sweep_file(const SweepConfig& config, const std::vector<SweepRecord>& records) {
  std::ofstream out(config.output_path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + config.output_path + "' for writing");
  if (config.format == OutputFormat::json) {
    write_sweep_json(out, records);
  } else {
    write_sweep_csv(out, records);
  }
  out.flush();
  if (!out) throw IoError("failed writing '" + config.output_path + "'");
}

std::vector<AnalyticRow> analytic_table(const std::vector<ModelParams>& grid, double tol) {
  std::vector<AnalyticRow> rows;
  rows.reserve(grid.size());
  for (const auto& params : grid) {
    AnalyticRow row{params, expected_u0(params), std::nullopt};
    if (params.p() <= 0.5) row.moments = moment_report(params, tol);
    rows.push_back(row);
  }
  return rows;
}

void write_analytic_csv(std::ostream& out, const std::vector<AnalyticRow>& rows) {
  out << "N,p,a,eu0,eu0sq_lower,eu0sq_integral,eu0sq_upper,quadrature_error,out_of_domain\n";
  for (const auto& row : rows) {
    out << row.params.n() << ',' << format_real(row.params.p()) << ','
        << format_real(row.params.a()) << ',' << format_real(row.eu0) << ',';
    if (row.moments) {
      out << format_real(row.moments->e_u0sq_lower) << ','
          << format_real(row.moments->e_u0sq_integral) << ','
          << format_real(row.moments->e_u0sq_upper) << ','
          << format_real(row.moments->quadrature_error) << ",0\n";
    } else {
      out << ",,,,1\n";
    }
  }
}

void write_qtheta_csv(std::ostream& out, double a, int points) {
  if (points < 2) throw DomainError("qtheta: need at least 2 points");
  out << "theta,q\n";
  for (int k = 0; k < points; ++k) {
    const double theta = k == points - 1 ? kPi : kPi * k / (points - 1);
    out << format_real(theta) << ',' << format_real(overlap_fraction_q(theta, a)) << '\n';
  }
}

}  // namespace capcover

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "capcover/moments.hpp"

namespace capcover {

enum class OutputFormat { csv, json };

struct SweepConfig {
  std::vector<std::int64_t> n_values;
  std::vector<double> c_values;
  std::int64_t replications = 100;
  std::int64_t test_points = 2000;
  std::uint64_t seed = 0;
  std::string output_path;  // empty: caller decides (stdout for the CLI)
  OutputFormat format = OutputFormat::csv;
  unsigned threads = 1;
  // Wall-clock timings differ run to run; they are only written when asked.
  bool record_timing = false;

  void validate() const;
};

struct SweepRecord {
  std::int64_t n = 0;
  double c = 0.0;
  double p = 0.0;
  double a = 0.0;
  std::int64_t replications = 0;
  std::int64_t covered_count = 0;
  double coverage_freq = 0.0;
  double coverage_stderr = 0.0;
  double u0_mean = 0.0;
  double u0_stderr = 0.0;
  double eu0_analytic = 0.0;
  // Absent when p > 1/2.
  std::optional<double> eu0sq_lower;
  std::optional<double> eu0sq_integral;
  std::optional<double> eu0sq_upper;
  std::optional<double> wall_ms;
  std::uint64_t seed = 0;
  bool out_of_domain = false;
};

// Seed of the (N, c) cell; depends only on the master seed and the cell's
// own parameters.
std::uint64_t cell_seed(std::uint64_t master, std::int64_t n, double c);

// Throws DomainError if the record breaks a SweepRecord invariant.
void validate_record(const SweepRecord& record);

// One record per (N, c) cell, N-major, c-minor.
std::vector<SweepRecord> run_sweep(const SweepConfig& config);

std::string sweep_csv_header();
void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records);
void write_sweep_json(std::ostream& out, const std::vector<SweepRecord>& records);
// Writes to config.output_path, throwing IoError on failure.
void write_sweep_file(const SweepConfig& config, const std::vector<SweepRecord>& records);

struct AnalyticRow {
  ModelParams params;
  double eu0 = 0.0;
  std::optional<MomentReport> moments;  // absent when p > 1/2
};

std::vector<AnalyticRow> analytic_table(const std::vector<ModelParams>& grid,
                                        double tol = kDefaultMomentTolerance);
void write_analytic_csv(std::ostream& out, const std::vector<AnalyticRow>& rows);

void write_qtheta_csv(std::ostream& out, double a, int points);

// printf("%.17g"): round-trips every double.
std::string format_real(double v);

}  // namespace capcover

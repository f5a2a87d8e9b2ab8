#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "capcover/errors.hpp"
#include "capcover/geometry.hpp"
#include "capcover/sweep.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace capcover;

namespace {

std::string to_csv(const std::vector<SweepRecord>& records) {
  std::ostringstream out;
  write_sweep_csv(out, records);
  return out.str();
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) fields.push_back(field);
  if (!line.empty() && line.back() == sep) fields.emplace_back();
  return fields;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("p = 0 cell") {
  SweepConfig config;
  config.n_values = {10};
  config.c_values = {0.0};
  config.replications = 20;
  config.test_points = 50;
  const auto records = run_sweep(config);
  REQUIRE(records.size() == 1);
  CHECK(records[0].coverage_freq == 0.0);
  CHECK(records[0].u0_mean == 1.0);
  CHECK(records[0].eu0_analytic == 1.0);
  CHECK(records[0].eu0sq_integral.value() == 1.0);
}

TEST_CASE("coverage frequency rises with c at N = 1000") {
  SweepConfig config;
  config.n_values = {1000};
  config.c_values = {0.3, 1.5};
  config.replications = 200;
  config.test_points = 20;
  config.seed = 11;
  const auto records = run_sweep(config);
  REQUIRE(records.size() == 2);
  CHECK(records[1].coverage_freq > records[0].coverage_freq);
}

TEST_CASE("records come out N-major, c-minor, and are byte-deterministic") {
  SweepConfig config;
  config.n_values = {20, 8};
  config.c_values = {0.5, 1.0, 2.0};
  config.replications = 30;
  config.test_points = 100;
  config.seed = 5;
  const auto first = run_sweep(config);
  REQUIRE(first.size() == 6);
  CHECK(first[0].n == 20);
  CHECK(first[2].c == 2.0);
  CHECK(first[3].n == 8);
  CHECK(first[3].c == 0.5);

  const std::string reference = to_csv(first);
  CHECK(to_csv(run_sweep(config)) == reference);
  config.threads = 8;
  CHECK(to_csv(run_sweep(config)) == reference);
}

TEST_CASE("cell seeds depend on the cell, not on the grid") {
  SweepConfig wide;
  wide.n_values = {6, 9};
  wide.c_values = {0.4, 0.9};
  wide.replications = 10;
  wide.test_points = 10;
  SweepConfig narrow = wide;
  narrow.n_values = {9};
  narrow.c_values = {0.9};
  const auto a = run_sweep(wide);
  const auto b = run_sweep(narrow);
  CHECK(a[3].seed == b[0].seed);
  CHECK(a[3].u0_mean == b[0].u0_mean);
  CHECK(cell_seed(1, 9, 0.9) != cell_seed(2, 9, 0.9));
}

TEST_CASE("CSV schema and number format") {
  CHECK(sweep_csv_header() ==
        "N,c,p,a,replications,covered_count,coverage_freq,coverage_stderr,u0_mean,u0_stderr,"
        "eu0_analytic,eu0sq_lower,eu0sq_integral,eu0sq_upper,wall_ms,seed,out_of_domain");
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_real(1.0) == "1");
  CHECK(std::stod(format_real(M_PI)) == M_PI);

  SweepConfig config;
  config.n_values = {3};
  config.c_values = {1.0, 1.5};
  config.replications = 10;
  config.test_points = 10;
  const std::string csv = to_csv(run_sweep(config));
  CHECK(csv.find('\r') == std::string::npos);
  const auto lines = lines_of(csv);
  REQUIRE(lines.size() == 3);
  const auto header = split(lines[0], ',');
  for (std::size_t k = 1; k < lines.size(); ++k) CHECK(split(lines[k], ',').size() == header.size());

  // 1.5 ln 3 / 3 > 1/2: moment fields blank, flag set.
  const auto row = split(lines[2], ',');
  CHECK(row[11].empty());
  CHECK(row[12].empty());
  CHECK(row[13].empty());
  CHECK(row[16] == "1");
  CHECK(split(lines[1], ',')[16] == "0");
  // wall_ms is only filled on request.
  CHECK(row[14].empty());
}

TEST_CASE("JSON mirrors the CSV records") {
  SweepConfig config;
  config.n_values = {3, 12};
  config.c_values = {0.7, 1.5};
  config.replications = 15;
  config.test_points = 40;
  const auto records = run_sweep(config);
  std::ostringstream json_out;
  write_sweep_json(json_out, records);
  const auto parsed = nlohmann::json::parse(json_out.str());
  const auto lines = lines_of(to_csv(records));
  const auto header = split(lines[0], ',');
  REQUIRE(parsed.size() == records.size());
  for (std::size_t r = 0; r < records.size(); ++r) {
    const auto& obj = parsed[r];
    std::vector<std::string> keys;
    for (auto it = obj.begin(); it != obj.end(); ++it) keys.push_back(it.key());
    // nlohmann::json (unordered) sorts keys; compare as sets.
    auto sorted_header = header;
    std::sort(sorted_header.begin(), sorted_header.end());
    CHECK(keys == sorted_header);
    const auto row = split(lines[r + 1], ',');
    for (std::size_t k = 0; k < header.size(); ++k) {
      const auto& value = obj[header[k]];
      if (value.is_null()) {
        CHECK(row[k].empty());
      } else if (value.is_number_float()) {
        CHECK(value.get<double>() == std::stod(row[k]));
      } else {
        CHECK(value.dump() == row[k]);
      }
    }
  }
}

TEST_CASE("sweep validation") {
  SweepConfig config;
  config.n_values = {1};
  config.c_values = {1.0};
  CHECK_THROWS_AS(run_sweep(config), DomainError);
  config.n_values = {2};
  config.c_values = {-1.0};
  CHECK_THROWS_AS(run_sweep(config), DomainError);
  config.c_values = {3.0};  // 3 ln 2 / 2 > 1
  CHECK_THROWS_AS(run_sweep(config), DomainError);
  config.c_values = {};
  CHECK_THROWS_AS(run_sweep(config), DomainError);
}

TEST_CASE("validate_record rejects broken invariants") {
  SweepConfig config;
  config.n_values = {10};
  config.c_values = {1.0};
  config.replications = 10;
  config.test_points = 10;
  const SweepRecord good = run_sweep(config).front();
  CHECK_NOTHROW(validate_record(good));
  SweepRecord bad = good;
  bad.covered_count = 11;
  CHECK_THROWS_AS(validate_record(bad), DomainError);
  bad = good;
  bad.p += 1e-9;
  CHECK_THROWS_AS(validate_record(bad), DomainError);
  bad = good;
  bad.eu0_analytic *= 1.001;
  CHECK_THROWS_AS(validate_record(bad), DomainError);
  bad = good;
  bad.coverage_freq = 0.5;
  CHECK_THROWS_AS(validate_record(bad), DomainError);
}

TEST_CASE("write_sweep_file reports I/O failures") {
  SweepConfig config;
  config.output_path = "/nonexistent-dir/out.csv";
  CHECK_THROWS_AS(write_sweep_file(config, {}), IoError);
}

TEST_CASE("analytic table") {
  const std::vector<ModelParams> grid{ModelParams::from_fraction(1, 0.25),
                                      ModelParams::from_fraction(7, 0.0),
                                      ModelParams::from_radius(10, 0.6),
                                      ModelParams::from_fraction(4, 0.7)};
  const auto rows = analytic_table(grid);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].eu0 == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(rows[0].moments->e_u0sq_lower == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(rows[0].moments->e_u0sq_upper == doctest::Approx(1.0625).epsilon(1e-15));
  CHECK(rows[1].eu0 == 1.0);
  CHECK(rows[1].moments->e_u0sq_lower == 1.0);
  CHECK(rows[1].moments->e_u0sq_integral == 1.0);
  CHECK(rows[1].moments->e_u0sq_upper == 1.0);
  CHECK_FALSE(rows[3].moments);

  std::ostringstream out;
  write_analytic_csv(out, rows);
  const auto lines = lines_of(out.str());
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "N,p,a,eu0,eu0sq_lower,eu0sq_integral,eu0sq_upper,quadrature_error,out_of_domain");
  const auto row = split(lines[3], ',');
  CHECK(row[5] == format_real(u0_sq_integral(ModelParams::from_radius(10, 0.6)).value));
  CHECK(split(lines[4], ',')[8] == "1");
}

TEST_CASE("qtheta table") {
  std::ostringstream out;
  write_qtheta_csv(out, 0.5, 11);
  const auto lines = lines_of(out.str());
  REQUIRE(lines.size() == 12);
  CHECK(lines[0] == "theta,q");
  CHECK(lines[1] == "0," + format_real(p_from_a(0.5)));
  CHECK(split(lines[11], ',')[1] == "0");
  CHECK_THROWS_AS(write_qtheta_csv(out, 0.5, 1), DomainError);
}

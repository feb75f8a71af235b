#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "jtent/errors.hpp"
#include "jtent/sweep_io.hpp"
#include "jtent/sweeps.hpp"

using namespace jtent;

namespace {

SweepSpec narrowed(std::string_view name, double lo, double hi, double step) {
  SweepSpec s = builtin_sweep(name);
  s.grid = {lo, hi, step};
  return s;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("grid") {
  const Grid g{-2.0, 2.0, 0.05};
  CHECK(g.count() == 81);
  CHECK(g.at(0) == -2.0);
  CHECK(g.at(40) == 0.0);
  CHECK(g.at(80) == 2.0);
  CHECK(g.at(1) == doctest::Approx(-1.95).epsilon(1e-15));
  CHECK(Grid{0.0, 1.0, 0.3}.count() == 4);
  CHECK(Grid{0.0, 1.0, 0.3}.at(3) == doctest::Approx(0.9));
  CHECK(Grid{0.5, 0.5, 0.1}.count() == 1);
}

TEST_CASE("built-in sweeps") {
  const std::vector<std::pair<std::string, std::size_t>> expected{
      {"fig1", 81}, {"fig2", 81}, {"fig3", 41}, {"fig4", 41}, {"fig5", 41}, {"fig6", 41}};
  CHECK(builtin_sweep_names().size() == expected.size());
  for (const auto& [name, count] : expected) {
    CAPTURE(name);
    const auto s = builtin_sweep(name);
    CHECK_NOTHROW(validate(s));
    CHECK(s.grid.count() == count);
    CHECK(s.N == 10);
  }
  CHECK_THROWS_AS(builtin_sweep("fig7"), SpecError);

  const auto f3 = builtin_sweep("fig3").rule(0.5);
  CHECK(f3.k_1 == doctest::Approx(0.25));
  CHECK(f3.k_2 == doctest::Approx(0.75));
  CHECK(f3.omega_1 == doctest::Approx(0.1));
  const auto f5 = builtin_sweep("fig5").rule(1.5);
  CHECK(f5.k_1 == 1.5);
  CHECK(f5.k_2 == 1.5);
  CHECK(f5.omega_2 == doctest::Approx(0.25));
  const auto f6 = builtin_sweep("fig6").rule(0.04);
  CHECK(f6.J == 0.04);
  CHECK(f6.k_1 == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("spec validation") {
  SweepSpec s = builtin_sweep("fig1");
  s.grid.step = 0.0;
  CHECK_THROWS_AS(validate(s), SpecError);
  s = builtin_sweep("fig1");
  s.grid.t_max = -3.0;
  CHECK_THROWS_AS(validate(s), SpecError);
  s = builtin_sweep("fig1");
  s.rule = nullptr;
  CHECK_THROWS_AS(validate(s), SpecError);
  s = builtin_sweep("fig1");
  s.grid.step = 1e-6;
  CHECK_THROWS_AS(validate(s), SpecError);
  s = builtin_sweep("fig1");
  s.N = kMaxCutoff;
  CHECK_THROWS_AS(validate(s), SpecError);
  CHECK_THROWS_AS(run_sweep_serial(s), SpecError);
}

TEST_CASE("single points") {
  SUBCASE("decoupled") {
    const auto row = run_point(SystemParams{}, Basis::Transformed);
    CHECK_FALSE(row.failed());
    CHECK(row.basis_used == Basis::Lab);
    CHECK_FALSE(row.validity_available);
    for (Bipartition b : kAllBipartitions) CHECK(row.report[b] == 0.0);
  }
  SUBCASE("errors are captured") {
    SystemParams p;
    p.N = 1;
    const auto row = run_point(p, Basis::Lab);
    CHECK(row.failed());
    CHECK(row.flagged());
    CHECK(std::isnan(row.energy));
  }
  SUBCASE("stable under a larger cutoff") {
    auto p = builtin_sweep("fig2").rule(0.4);
    const auto small = run_point(p, Basis::Transformed);
    p.N += 4;
    const auto large = run_point(p, Basis::Transformed);
    CHECK(small.report.max_abs_diff(large.report) < 5e-3);
  }
}

TEST_CASE("fig1 rows") {
  const auto result = run_sweep(narrowed("fig1", -1.9, 1.9, 0.95));
  REQUIRE(result.rows.size() == 5);
  const auto& mid = result.rows[2];
  CHECK(mid.t == 0.0);
  CHECK(mid.report.en_s_b2 < 1e-6);
  CHECK(mid.report.en_b1_b2 < 1e-6);
  // Delta -> -Delta swaps the roles of the two lab modes only, which the
  // rotated description absorbs
  CHECK(result.rows[0].report.max_abs_diff(result.rows[4].report) < 1e-8);
  CHECK(result.rows[1].report.max_abs_diff(result.rows[3].report) < 1e-8);
  for (const auto& r : result.rows) {
    CHECK_FALSE(r.flagged());
    CHECK(r.report.en_s_b1 <= r.report.en_s_b1b2 + 1e-9);
    CHECK(r.report.en_s_b2 <= r.report.en_s_b1b2 + 1e-9);
  }
}

TEST_CASE("fig5 rows near unit negativity") {
  const auto result = run_sweep(narrowed("fig5", 1.5, 1.95, 0.15));
  for (const auto& r : result.rows) {
    CAPTURE(r.t);
    CHECK(std::abs(r.report.en_s_b1b2 - 1.0) < 0.1);
  }
}

TEST_CASE("serial and parallel sweeps agree byte for byte") {
  auto spec = narrowed("fig4", -0.6, 0.9, 0.25);
  spec.verify_points = 3;
  const auto serial = run_sweep_serial(spec);
  const auto again = run_sweep_serial(spec);
  const auto par2 = run_sweep_parallel(spec, 2);
  const auto par3 = run_sweep_parallel(spec, 3);
  CHECK(to_csv(serial) == to_csv(again));
  CHECK(to_csv(serial) == to_csv(par2));
  CHECK(to_csv(serial) == to_csv(par3));
  CHECK(par3.manifest.jobs == 3);
  std::size_t verified = 0;
  for (const auto& r : serial.rows)
    if (!std::isnan(r.verify_diff)) ++verified;
  CHECK(verified == 3);
}

TEST_CASE("CSV and manifest output") {
  auto spec = narrowed("fig6", 0.0, 0.1, 0.05);
  spec.verify_increment = 0;
  const auto result = run_sweep(spec);
  const auto csv = to_csv(result);
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(csv.rfind(csv_header() + "\n", 0) == 0);
  std::size_t lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == 4);
  CHECK(csv_line(result.rows[1]).rfind("0.05,0.2,0.1,", 0) == 0);
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(std::nan("")) == "nan");

  const auto m = manifest_json(result);
  CHECK(m["rows"] == 3);
  CHECK(m["cutoff"] == 10);
  CHECK(m["basis"] == "transformed");
  CHECK(m["spec"]["name"] == "fig6");
  CHECK(m["row_errors"].empty());

  const auto dir = std::filesystem::temp_directory_path() / "jtent_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "fig6.csv";
  write_file_atomically(path, csv);
  CHECK(read_file(path) == csv);
  CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  CHECK(manifest_path_for(path) == dir / "fig6.csv.manifest.json");
  std::filesystem::remove_all(dir);
}

TEST_CASE("lab versus rotated basis") {
  SUBCASE("identity rotation gives zero divergence") {
    SystemParams p;
    p.omega_1 = 0.9;
    p.omega_2 = 0.4;
    p.k_1 = 0.3;
    p.N = 6;
    // same matrix, so only rounding noise in the odd-B2 amplitudes differs
    const auto c = compare_bases(p);
    CHECK(c.energy_diff == 0.0);
    CHECK(c.discarded_weight == 0.0);
    CHECK(c.report_diff < 1e-14);
  }
  SUBCASE("weak coupling agrees at N = 16") {
    auto p = builtin_sweep("fig1").rule(0.05);
    p.N = 16;
    const auto c = compare_bases(p);
    CHECK(c.energy_diff < 1e-6);
    CHECK(c.report_diff < 1e-6);
  }
  SUBCASE("strong coupling divergence shrinks with N") {
    auto p = builtin_sweep("fig2").rule(1.0);
    p.N = 10;
    const double coarse = compare_bases(p).divergence();
    p.N = 16;
    const double fine = compare_bases(p).divergence();
    CHECK(fine < coarse);
  }
  SUBCASE("undefined rotation") {
    CHECK_THROWS_AS(compare_bases(SystemParams{}), DegenerateTransformError);
  }
}

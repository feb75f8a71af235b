#include "jtent/sweeps.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>

#include "jtent/errors.hpp"
#include "jtent/groundstate.hpp"

#ifdef JTENT_HAVE_OPENMP
#include <omp.h>
#endif

#ifndef JTENT_VERSION
#define JTENT_VERSION "unknown"
#endif

namespace jtent {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Relative slack when deciding whether the grid span is a whole number of steps.
constexpr double kGridSlack = 1e-9;

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void set_nan_report(EntanglementReport& r) {
  r.en_s_b1b2 = r.en_s_b1 = r.en_s_b2 = r.en_b1_b2 = kNaN;
}

std::vector<bool> verification_mask(const SweepSpec& spec, std::size_t count) {
  std::vector<bool> mask(count, false);
  if (spec.verify_increment == 0 || spec.verify_points == 0 || count == 0) return mask;
  if (spec.verify_points >= count || count == 1) {
    mask.assign(count, true);
    return mask;
  }
  for (std::size_t j = 0; j < spec.verify_points; ++j) {
    const std::size_t idx = (j * (count - 1) + (spec.verify_points - 1) / 2) / (spec.verify_points - 1);
    mask[idx] = true;
  }
  return mask;
}

SweepRow compute_row(const SweepSpec& spec, std::size_t i, bool verify) {
  const double t = spec.grid.at(i);
  SystemParams p;
  try {
    p = spec.rule(t);
    p.N = spec.N;
  } catch (const std::exception& e) {
    SweepRow row;
    row.t = t;
    row.error = e.what();
    set_nan_report(row.report);
    row.energy = row.gap = kNaN;
    return row;
  }
  SweepRow row = run_point(p, spec.basis, spec.emit_validity);
  row.t = t;
  if (verify && !row.failed()) {
    try {
      SystemParams bigger = p;
      bigger.N = p.N + spec.verify_increment;
      const auto gs = ground_state(bigger, row.basis_used);
      row.verify_diff = report_from_state(gs.state).max_abs_diff(row.report);
    } catch (const std::exception& e) {
      row.error = std::string("verification pass: ") + e.what();
    }
  }
  return row;
}

SweepResult start_result(const SweepSpec& spec) {
  validate(spec);
  SweepResult result;
  result.spec = spec;
  result.manifest.code_version = JTENT_VERSION;
  result.manifest.timestamp = utc_timestamp();
  return result;
}

}  // namespace

std::size_t Grid::count() const {
  const double intervals = (t_max - t_min) / step;
  return static_cast<std::size_t>(std::floor(intervals + kGridSlack)) + 1;
}

double Grid::at(std::size_t i) const {
  const std::size_t n = count() - 1;
  if (n == 0) return t_min;
  const double intervals = (t_max - t_min) / step;
  const bool whole = std::abs(intervals - std::round(intervals)) <= kGridSlack * std::max(1.0, intervals);
  const double last = whole ? t_max : t_min + static_cast<double>(n) * step;
  // Interpolating between exact endpoints keeps symmetric grids symmetric
  // (e.g. the midpoint of [-2, 2] is exactly 0).
  const double a = static_cast<double>(n - i);
  const double b = static_cast<double>(i);
  return (t_min * a + last * b) / static_cast<double>(n);
}

void validate(const SweepSpec& spec) {
  const auto& g = spec.grid;
  if (!std::isfinite(g.t_min) || !std::isfinite(g.t_max) || !std::isfinite(g.step))
    throw SpecError("sweep grid values must be finite");
  if (!(g.t_min < g.t_max)) throw SpecError("sweep grid needs t_min < t_max");
  if (!(g.step > 0.0)) throw SpecError("sweep grid needs step > 0");
  if ((g.t_max - g.t_min) / g.step > static_cast<double>(kMaxGridIntervals))
    throw SpecError("sweep grid has more than 10000 intervals");
  if (!spec.rule) throw SpecError("sweep has no parameter rule");
  if (spec.N < 2) throw SpecError("cutoff must be ≥ 2");
  if (spec.N + spec.verify_increment > kMaxCutoff)
    throw SpecError("sweep cutoff plus verification increment exceeds the maximum cutoff");
}

SweepRow::SweepRow() : verify_diff(kNaN) {}

std::size_t SweepResult::flagged_count() const {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.flagged() ? 1 : 0;
  return n;
}

SweepRow run_point(const SystemParams& p, Basis basis, bool emit_validity) {
  SweepRow row;
  row.params = p;
  row.validity.r1 = row.validity.r2 = kNaN;
  try {
    validate(p);
    row.basis_used = resolve_basis(p, basis);
    const auto gs = ground_state(p, row.basis_used);
    row.energy = gs.energy;
    row.gap = gs.gap;
    row.report = report_from_state(gs.state);
    row.report.degeneracy_caveat = gs.caveat();
    if (emit_validity && (p.k_1 > 0.0 || p.k_2 > 0.0)) {
      row.validity = privileged_validity(p);
      row.validity_available = true;
    }
  } catch (const std::exception& e) {
    row.error = e.what();
    set_nan_report(row.report);
    row.energy = row.gap = kNaN;
  }
  return row;
}

SweepResult run_sweep_serial(const SweepSpec& spec) {
  auto result = start_result(spec);
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t count = spec.grid.count();
  const auto verify = verification_mask(spec, count);
  result.rows.reserve(count);
  for (std::size_t i = 0; i < count; ++i) result.rows.push_back(compute_row(spec, i, verify[i]));
  result.manifest.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  result.manifest.jobs = 1;
  return result;
}

SweepResult run_sweep_parallel(const SweepSpec& spec, int jobs) {
  auto result = start_result(spec);
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t count = spec.grid.count();
  const auto verify = verification_mask(spec, count);
  result.rows.resize(count);
  const long n = static_cast<long>(count);
  const int threads = jobs < 1 ? 1 : jobs;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    result.rows[idx] = compute_row(spec, idx, verify[idx]);
  }
  result.manifest.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  result.manifest.jobs = threads;
  return result;
}

SweepResult run_sweep(const SweepSpec& spec, int jobs) {
  return jobs <= 1 ? run_sweep_serial(spec) : run_sweep_parallel(spec, jobs);
}

SystemParams apply_delta(SystemParams p, double delta) {
  p.omega_1 = 1.0 + delta / 2.0;
  p.omega_2 = 1.0 - delta / 2.0;
  return p;
}

SystemParams apply_kappa(SystemParams p, double kappa) {
  p.k_1 = (1.0 - kappa) / 2.0;
  p.k_2 = (1.0 + kappa) / 2.0;
  return p;
}

std::vector<std::string> builtin_sweep_names() {
  return {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6"};
}

SweepSpec builtin_sweep(std::string_view name) {
  SweepSpec s;
  s.name = std::string(name);
  s.basis = Basis::Transformed;
  s.N = 10;

  auto delta_sweep = [&s](double k, const char* k_text) {
    s.control = "Delta";
    s.rule_description = std::string("omega_1/2 = 1 +- Delta/2; k_1 = k_2 = ") + k_text + "; J = 0";
    s.grid = {-2.0, 2.0, 0.05};
    s.rule = [k](double t) {
      SystemParams p = apply_delta(SystemParams{}, t);
      p.k_1 = p.k_2 = k;
      p.J = 0.0;
      return p;
    };
  };
  auto kappa_sweep = [&s](double w1, double w2, const char* text) {
    s.control = "kappa";
    s.rule_description = std::string("k_2/1 = (1 +- kappa)/2; ") + text + "; J = 0";
    s.grid = {-1.0, 1.0, 0.05};
    s.rule = [w1, w2](double t) {
      SystemParams p = apply_kappa(SystemParams{}, t);
      p.omega_1 = w1;
      p.omega_2 = w2;
      p.J = 0.0;
      return p;
    };
  };

  if (name == "fig1") {
    delta_sweep(0.1 / std::sqrt(2.0), "0.1/sqrt(2)");
  } else if (name == "fig2") {
    delta_sweep(1.0 / std::sqrt(2.0), "1/sqrt(2)");
  } else if (name == "fig3") {
    kappa_sweep(0.1, 0.05, "omega_1 = 0.1, omega_2 = 0.05");
  } else if (name == "fig4") {
    kappa_sweep(1.0, 0.5, "omega_1 = 1, omega_2 = 0.5");
  } else if (name == "fig5") {
    s.control = "Delta";
    s.rule_description = "omega_1/2 = 1 +- Delta/2; k_1 = k_2 = Delta; J = 0";
    s.grid = {0.0, 2.0, 0.05};
    s.rule = [](double t) {
      SystemParams p = apply_delta(SystemParams{}, t);
      p.k_1 = p.k_2 = t;
      p.J = 0.0;
      return p;
    };
  } else if (name == "fig6") {
    s.control = "J";
    s.rule_description = "k_1 = k_2 = 1/sqrt(2); omega_1 = 0.2, omega_2 = 0.1";
    s.grid = {0.0, 0.1, 0.0025};
    s.rule = [](double t) {
      SystemParams p;
      p.omega_1 = 0.2;
      p.omega_2 = 0.1;
      p.k_1 = p.k_2 = 1.0 / std::sqrt(2.0);
      p.J = t;
      return p;
    };
  } else {
    throw SpecError("unknown sweep '" + std::string(name) + "' (expected fig1 ... fig6)");
  }
  return s;
}

double BasisComparison::divergence() const { return std::max(energy_diff, report_diff); }

BasisComparison compare_bases(const SystemParams& p) {
  const auto lab = ground_state(p, Basis::Lab);
  const auto tr = ground_state(p, Basis::Transformed);
  BasisComparison c;
  c.energy_lab = lab.energy;
  c.energy_transformed = tr.energy;
  c.energy_diff = std::abs(lab.energy - tr.energy);
  const auto rotated = rotate_to_privileged_basis(lab.state, p);
  c.discarded_weight = rotated.discarded_weight;
  c.lab_rotated = report_from_state(rotated.state);
  c.transformed = report_from_state(tr.state);
  c.report_diff = c.lab_rotated.max_abs_diff(c.transformed);
  c.caveat = lab.caveat() || tr.caveat();
  c.lab_rotated.degeneracy_caveat = lab.caveat();
  c.transformed.degeneracy_caveat = tr.caveat();
  return c;
}

}  // namespace jtent

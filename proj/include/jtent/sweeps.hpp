#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "jtent/entanglement.hpp"
#include "jtent/model.hpp"

namespace jtent {

/// Evenly spaced control-variable grid. Points are t_min + i * step for
/// i = 0 .. count() - 1; when (t_max - t_min) / step is integral the last
/// point is exactly t_max.
struct Grid {
  double t_min = 0.0;
  double t_max = 1.0;
  double step = 0.1;

  std::size_t count() const;
  double at(std::size_t i) const;
};

inline constexpr std::size_t kMaxGridIntervals = 10'000;

using ParameterRule = std::function<SystemParams(double t)>;

struct SweepSpec {
  std::string name;
  std::string control;           ///< name of the control variable (e.g. "Delta")
  std::string rule_description;  ///< human-readable mapping t -> params, echoed in manifests
  ParameterRule rule;
  Grid grid;
  Basis basis = Basis::Transformed;
  std::size_t N = 10;
  bool emit_validity = true;
  /// Rows on an evenly spaced subsample are recomputed at N + verify_increment
  /// and the largest negativity change is stored. 0 disables the pass.
  std::size_t verify_increment = 4;
  std::size_t verify_points = 10;
};

/// Throws SpecError on a malformed grid or missing rule.
void validate(const SweepSpec& spec);

struct SweepRow {
  double t = 0.0;
  SystemParams params;
  Basis basis_used = Basis::Transformed;
  EntanglementReport report;
  double energy = 0.0;
  double gap = 0.0;
  ValidityDiagnostics validity;
  bool validity_available = false;
  double verify_diff;  ///< NaN when the row is not in the verification subsample
  std::string error;   ///< non-empty when the point failed

  SweepRow();
  bool failed() const { return !error.empty(); }
  bool flagged() const { return failed() || report.degeneracy_caveat; }
};

struct SweepManifest {
  std::string code_version;
  std::string timestamp;  ///< UTC, ISO 8601
  double runtime_seconds = 0.0;
  int jobs = 1;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;
  SweepManifest manifest;

  std::size_t flagged_count() const;
};

/// Evaluates one parameter point. Library errors are captured in row.error,
/// never thrown, so a sweep always completes.
SweepRow run_point(const SystemParams& p, Basis basis, bool emit_validity = true);

/// Serial reference implementation.
SweepResult run_sweep_serial(const SweepSpec& spec);

/// OpenMP implementation; grid points are distributed over `jobs` threads
/// and rows are stored by grid index.
SweepResult run_sweep_parallel(const SweepSpec& spec, int jobs);

/// Dispatches to the serial path for jobs <= 1. Output rows are identical
/// for every job count.
SweepResult run_sweep(const SweepSpec& spec, int jobs = 1);

/// Names of the built-in figure sweeps: fig1 ... fig6.
std::vector<std::string> builtin_sweep_names();

/// Throws SpecError for an unknown name.
SweepSpec builtin_sweep(std::string_view name);

/// Parameter rule helpers shared by the presets and the CLI.
/// omega_{1/2} = 1 +- Delta/2
SystemParams apply_delta(SystemParams p, double delta);
/// k_{2/1} = (1 +- kappa)/2
SystemParams apply_kappa(SystemParams p, double kappa);

/// Lab vs rotated-basis diagnostic for one parameter point.
struct BasisComparison {
  double energy_lab = 0.0;
  double energy_transformed = 0.0;
  double energy_diff = 0.0;
  EntanglementReport lab_rotated;  ///< lab ground state mapped into (S, B1, B2)
  EntanglementReport transformed;
  double report_diff = 0.0;        ///< max over bipartitions
  double discarded_weight = 0.0;   ///< lab weight lost by the rotation into the truncated box
  bool caveat = false;

  /// max(energy_diff, report_diff)
  double divergence() const;
};

/// Throws like the builders (e.g. DegenerateTransformError for k_1 = k_2 = 0).
BasisComparison compare_bases(const SystemParams& p);

}  // namespace jtent

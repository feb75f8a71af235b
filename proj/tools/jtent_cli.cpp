// jtent: ground-state entanglement of the two-mode qubit-resonator Jahn-Teller model.
//
// Exit codes: 0 success, 2 usage/parameter error, 3 completed with caveats,
// 4 threshold failure, 1 unexpected internal error.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "jtent/convergence.hpp"
#include "jtent/entanglement.hpp"
#include "jtent/errors.hpp"
#include "jtent/sweep_io.hpp"
#include "jtent/sweeps.hpp"

namespace {

using namespace jtent;

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kCaveats = 3,
  kThreshold = 4,
};

constexpr const char* kOutputDirEnv = "JTENT_OUTPUT_DIR";

// Parameter flags shared by point / converge / xcheck / custom sweeps.
struct ParamFlags {
  double omega_q = 1.0;
  std::optional<double> omega_1, omega_2, k_1, k_2, J;
  std::optional<double> delta, kappa;
  std::optional<std::size_t> N;
  std::string preset;
  std::optional<double> at;
  std::optional<std::string> basis;

  void attach(CLI::App* cmd, bool with_basis = true) {
    cmd->add_option("--omega-q", omega_q, "Qubit splitting (frequency unit)")->capture_default_str();
    auto* o1 = cmd->add_option("--omega1", omega_1, "Mode 1 frequency [default 1]");
    auto* o2 = cmd->add_option("--omega2", omega_2, "Mode 2 frequency [default 1]");
    auto* k1 = cmd->add_option("--k1", k_1, "Mode 1 coupling scale, g_1 = omega_1 k_1 [default 0.1/sqrt(2)]");
    auto* k2 = cmd->add_option("--k2", k_2, "Mode 2 coupling scale, g_2 = omega_2 k_2 [default 0.1/sqrt(2)]");
    cmd->add_option("--J", J, "Mode-mode hopping [default 0]");
    auto* d = cmd->add_option("--delta", delta, "Set omega_1/2 = 1 +- delta/2");
    auto* k = cmd->add_option("--kappa", kappa, "Set k_2/1 = (1 +- kappa)/2");
    d->excludes(o1)->excludes(o2);
    k->excludes(k1)->excludes(k2);
    cmd->add_option("--N", N, "Fock cutoff per mode [default 10]");
    auto* pr = cmd->add_option("--preset", preset, "Take parameters from a built-in sweep (fig1 ... fig6)");
    cmd->add_option("--at", at, "Control-variable value for --preset")->needs(pr);
    if (with_basis)
      cmd->add_option("--basis", basis, "Hamiltonian basis [default transformed]")
          ->check(CLI::IsMember({"lab", "transformed"}));
  }

  Basis resolved_basis() const { return basis ? parse_basis(*basis) : Basis::Transformed; }

  bool overrides_model() const {
    return omega_1 || omega_2 || k_1 || k_2 || J || delta || kappa || !preset.empty() ||
           omega_q != 1.0;
  }

  SystemParams resolve() const {
    SystemParams p;
    p.k_1 = p.k_2 = 0.1 / std::sqrt(2.0);
    if (!preset.empty()) {
      if (!at) throw ParameterError("--preset needs --at <control value>");
      p = builtin_sweep(preset).rule(*at);
    }
    p.omega_q = omega_q;
    if (omega_1) p.omega_1 = *omega_1;
    if (omega_2) p.omega_2 = *omega_2;
    if (k_1) p.k_1 = *k_1;
    if (k_2) p.k_2 = *k_2;
    if (J) p.J = *J;
    if (delta) p = apply_delta(p, *delta);
    if (kappa) p = apply_kappa(p, *kappa);
    p.N = N.value_or(10);
    validate(p);
    return p;
  }
};

std::string describe(const SystemParams& p) {
  return "omega_q=" + format_number(p.omega_q) + " omega_1=" + format_number(p.omega_1) +
         " omega_2=" + format_number(p.omega_2) + " k_1=" + format_number(p.k_1) +
         " k_2=" + format_number(p.k_2) + " J=" + format_number(p.J) + " N=" + std::to_string(p.N);
}

void print_report(const EntanglementReport& r) {
  std::printf("  E_N(S|B1B2) = %s\n", format_number(r.en_s_b1b2).c_str());
  std::printf("  E_N(S|B1)   = %s\n", format_number(r.en_s_b1).c_str());
  std::printf("  E_N(S|B2)   = %s\n", format_number(r.en_s_b2).c_str());
  std::printf("  E_N(B1|B2)  = %s\n", format_number(r.en_b1_b2).c_str());
}

std::filesystem::path default_output(const std::string& name, const std::string& ext) {
  const char* dir = std::getenv(kOutputDirEnv);
  std::filesystem::path base = dir != nullptr && *dir != '\0' ? dir : ".";
  return base / (name + ext);
}

// ---------------------------------------------------------------- point

struct PointCmd {
  ParamFlags params;
  std::string format;
  std::string output;

  int run() const {
    const auto p = params.resolve();
    const auto row = run_point(p, params.resolved_basis());
    if (row.failed()) {
      std::fprintf(stderr, "error: %s\n", row.error.c_str());
      return kInternal;
    }
    std::printf("point  %s  basis=%s\n", describe(p).c_str(), to_string(row.basis_used));
    print_report(row.report);
    std::printf("  energy = %s  gap = %s\n", format_number(row.energy).c_str(),
                format_number(row.gap).c_str());
    if (row.validity_available)
      std::printf("  privileged-mode validity: r1 = %s  r2 = %s  -> %s\n",
                  format_number(row.validity.r1).c_str(), format_number(row.validity.r2).c_str(),
                  row.validity.valid ? "valid" : "not valid");
    else
      std::printf("  privileged-mode validity: undefined (k_1 = k_2 = 0)\n");
    if (row.report.degeneracy_caveat)
      std::printf("  caveat: ground state is degenerate or a mode has zero frequency\n");

    if (!format.empty()) {
      std::string text;
      if (format == "csv")
        text = csv_header() + '\n' + csv_line(row) + '\n';
      else
        text = row_json(row).dump(2) + '\n';
      if (output.empty())
        std::fputs(text.c_str(), stdout);
      else
        write_file_atomically(output, text);
    }
    return kOk;
  }
};

// ---------------------------------------------------------------- sweep

struct SweepCmd {
  std::string name;
  std::string output;
  std::string format = "csv";
  int jobs = 1;
  std::optional<double> t_min, t_max, step;
  bool no_verify = false;
  bool no_validity = false;
  bool quiet = false;
  // custom sweeps
  std::string vary;
  ParamFlags base;

  SweepSpec build_custom() const {
    if (vary.empty()) throw ParameterError("custom sweep needs --vary");
    if (!t_min || !t_max || !step) throw ParameterError("custom sweep needs --from, --to and --step");
    SweepSpec s;
    s.name = "custom";
    s.control = vary;
    const SystemParams p0 = base.resolve();
    s.rule_description = "vary " + vary + " from " + describe(p0);
    const std::string v = vary;
    s.rule = [p0, v](double t) {
      SystemParams p = p0;
      if (v == "omega1") p.omega_1 = t;
      else if (v == "omega2") p.omega_2 = t;
      else if (v == "k1") p.k_1 = t;
      else if (v == "k2") p.k_2 = t;
      else if (v == "k") p.k_1 = p.k_2 = t;
      else if (v == "J") p.J = t;
      else if (v == "delta") p = apply_delta(p, t);
      else if (v == "kappa") p = apply_kappa(p, t);
      return p;
    };
    s.N = p0.N;
    s.basis = base.resolved_basis();
    return s;
  }

  int run() const {
    SweepSpec spec = name == "custom" ? build_custom() : builtin_sweep(name);
    if (name != "custom" && base.overrides_model())
      throw ParameterError("model parameter flags apply to custom sweeps only");
    if (base.N) spec.N = *base.N;
    if (base.basis) spec.basis = parse_basis(*base.basis);
    if (name != "custom") {
      if (t_min) spec.grid.t_min = *t_min;
      if (t_max) spec.grid.t_max = *t_max;
      if (step) spec.grid.step = *step;
    } else {
      spec.grid = {*t_min, *t_max, *step};
    }
    if (no_verify) spec.verify_increment = 0;
    spec.emit_validity = !no_validity;
    try {
      validate(spec);
    } catch (const SpecError& e) {
      throw ParameterError(e.what());
    }

    const auto result = run_sweep(spec, jobs);
    const bool json = format == "json";
    const std::filesystem::path out =
        output.empty() ? default_output(spec.name, json ? ".json" : ".csv") : std::filesystem::path(output);
    if (json) {
      write_file_atomically(out, to_json(result).dump(2) + '\n');
    } else {
      write_file_atomically(out, to_csv(result));
      write_file_atomically(manifest_path_for(out), manifest_json(result).dump(2) + '\n');
    }
    const auto flagged = result.flagged_count();
    if (!quiet) {
      std::fprintf(stderr, "%s: %zu rows (%zu flagged) in %.2f s -> %s\n", spec.name.c_str(),
                   result.rows.size(), flagged, result.manifest.runtime_seconds, out.string().c_str());
      for (const auto& row : result.rows)
        if (row.failed()) std::fprintf(stderr, "  t=%s: %s\n", format_number(row.t).c_str(), row.error.c_str());
    }
    return flagged > 0 ? kCaveats : kOk;
  }
};

// ---------------------------------------------------------------- converge

struct ConvergeCmd {
  ParamFlags params;
  std::vector<std::size_t> cutoffs = default_cutoffs();
  double tolerance = 5e-3;

  int run() const {
    const auto p = params.resolve();
    const auto study = convergence_study(p, cutoffs, params.resolved_basis());
    std::printf("converge  %s  basis=%s\n", describe(p).c_str(), to_string(study.basis));
    std::printf("%4s %16s %14s %14s %14s %14s %12s %12s\n", "N", "energy", "E_N(S|B1B2)", "E_N(S|B1)",
                "E_N(S|B2)", "E_N(B1|B2)", "|dE|", "max|dE_N|");
    for (const auto& row : study.rows) {
      const auto& r = row.report;
      std::printf("%4zu %16.10f %14.8f %14.8f %14.8f %14.8f %12s %12s%s\n", row.N, row.energy, r.en_s_b1b2,
                  r.en_s_b1, r.en_s_b2, r.en_b1_b2, format_number(row.energy_diff).c_str(),
                  format_number(row.en_diff).c_str(), r.degeneracy_caveat ? "  (caveat)" : "");
    }
    const double last = study.final_en_diff();
    const bool ok = last < tolerance;
    std::printf("final successive E_N difference %s %s tolerance %s\n", format_number(last).c_str(),
                ok ? "<" : ">=", format_number(tolerance).c_str());
    return ok ? kOk : kThreshold;
  }
};

// ---------------------------------------------------------------- xcheck

struct XcheckCmd {
  ParamFlags params;
  double threshold = 1e-4;

  int run() const {
    const auto p = params.resolve();
    const auto c = compare_bases(p);
    std::printf("xcheck  %s\n", describe(p).c_str());
    std::printf("  ground energy  lab = %.12f  transformed = %.12f  |diff| = %s\n", c.energy_lab,
                c.energy_transformed, format_number(c.energy_diff).c_str());
    std::printf("  rotated lab state:\n");
    print_report(c.lab_rotated);
    std::printf("  transformed ground state:\n");
    print_report(c.transformed);
    std::printf("  report |diff| = %s  weight lost in rotation = %s\n", format_number(c.report_diff).c_str(),
                format_number(c.discarded_weight).c_str());
    if (c.caveat) std::printf("  caveat: degenerate ground state or zero-frequency mode\n");
    const bool ok = c.divergence() < threshold;
    std::printf("divergence %s %s threshold %s\n", format_number(c.divergence()).c_str(), ok ? "<" : ">=",
                format_number(threshold).c_str());
    return ok ? kOk : kThreshold;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ground-state logarithmic negativity of the two-mode Jahn-Teller circuit model"};
  app.require_subcommand(1);
  app.set_version_flag("--version", JTENT_VERSION_STRING);

  PointCmd point;
  auto* point_cmd = app.add_subcommand("point", "Evaluate one parameter point");
  point.params.attach(point_cmd);
  point_cmd->add_option("--format", point.format, "Also emit a machine-readable record")
      ->check(CLI::IsMember({"csv", "json"}));
  point_cmd->add_option("-o,--output", point.output, "Write the machine-readable record here");

  SweepCmd sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a built-in figure sweep or a custom one");
  sweep_cmd->add_option("name", sweep.name, "fig1 ... fig6, or custom")->required();
  sweep_cmd->add_option("-o,--output", sweep.output,
                        std::string("Output file [default $") + kOutputDirEnv + "/<name>.csv]");
  sweep_cmd->add_option("--format", sweep.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  sweep_cmd->add_option("-j,--jobs", sweep.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  sweep_cmd->add_option("--from", sweep.t_min, "Grid start");
  sweep_cmd->add_option("--to", sweep.t_max, "Grid end");
  sweep_cmd->add_option("--step", sweep.step, "Grid step");
  sweep_cmd->add_flag("--no-verify", sweep.no_verify, "Skip the N+4 verification pass");
  sweep_cmd->add_flag("--no-validity", sweep.no_validity, "Do not compute privileged-mode ratios");
  sweep_cmd->add_flag("-q,--quiet", sweep.quiet, "No summary on stderr");
  sweep_cmd->add_option("--vary", sweep.vary, "Custom sweep control variable")
      ->check(CLI::IsMember({"omega1", "omega2", "k1", "k2", "k", "J", "delta", "kappa"}));
  sweep.base.attach(sweep_cmd);

  ConvergeCmd converge;
  auto* converge_cmd = app.add_subcommand("converge", "Fock-cutoff convergence study");
  converge.params.attach(converge_cmd);
  converge_cmd->add_option("--cutoffs", converge.cutoffs, "Ascending cutoff list")->delimiter(',');
  converge_cmd->add_option("--tol", converge.tolerance, "Pass threshold on the final E_N difference")
      ->capture_default_str();

  XcheckCmd xcheck;
  auto* xcheck_cmd = app.add_subcommand("xcheck", "Compare the lab and rotated-basis Hamiltonians");
  xcheck.params.attach(xcheck_cmd, false);
  xcheck_cmd->add_option("--threshold", xcheck.threshold, "Divergence threshold")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (point_cmd->parsed()) return point.run();
    if (sweep_cmd->parsed()) return sweep.run();
    if (converge_cmd->parsed()) return converge.run();
    if (xcheck_cmd->parsed()) return xcheck.run();
  } catch (const ParameterError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const SpecError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kInternal;
  }
  return kUsage;
}

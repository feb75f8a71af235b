#include "jtent/convergence.hpp"

#include <cmath>
#include <limits>

#include "jtent/errors.hpp"
#include "jtent/groundstate.hpp"

namespace jtent {

double ConvergenceStudy::final_en_diff() const {
  return rows.size() < 2 ? 0.0 : rows.back().en_diff;
}

std::vector<std::size_t> default_cutoffs() { return {6, 8, 10, 12, 14, 16}; }

ConvergenceStudy convergence_study(const SystemParams& p, const std::vector<std::size_t>& cutoffs,
                                   Basis basis) {
  if (cutoffs.empty()) throw ParameterError("convergence_study: no cutoffs given");
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    if (cutoffs[i] < 2) throw ParameterError("cutoff must be ≥ 2");
    if (i > 0 && cutoffs[i] <= cutoffs[i - 1])
      throw ParameterError("convergence_study: cutoffs must be strictly ascending");
  }

  ConvergenceStudy study;
  study.basis = resolve_basis(p, basis);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (auto n : cutoffs) {
    SystemParams q = p;
    q.N = n;
    const auto gs = ground_state(q, study.basis);
    ConvergenceRow row;
    row.N = n;
    row.energy = gs.energy;
    row.report = report_from_state(gs.state);
    row.report.degeneracy_caveat = gs.caveat();
    if (study.rows.empty()) {
      row.energy_diff = nan;
      row.en_diff = nan;
    } else {
      const auto& prev = study.rows.back();
      row.energy_diff = std::abs(row.energy - prev.energy);
      row.en_diff = row.report.max_abs_diff(prev.report);
    }
    study.rows.push_back(row);
    study.params = q;
  }
  return study;
}

}  // namespace jtent

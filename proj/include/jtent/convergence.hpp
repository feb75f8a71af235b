#pragma once

#include <cstddef>
#include <vector>

#include "jtent/entanglement.hpp"
#include "jtent/model.hpp"

namespace jtent {

struct ConvergenceRow {
  std::size_t N = 0;
  double energy = 0.0;
  EntanglementReport report;
  // Differences to the previous (smaller) cutoff; NaN on the first row.
  double energy_diff = 0.0;
  double en_diff = 0.0;  ///< max over the four bipartitions
};

struct ConvergenceStudy {
  SystemParams params;  ///< N is the last cutoff studied
  Basis basis = Basis::Transformed;
  std::vector<ConvergenceRow> rows;

  /// en_diff of the final row (0 with fewer than two rows).
  double final_en_diff() const;
};

/// Default cutoff list 6, 8, ..., 16.
std::vector<std::size_t> default_cutoffs();

/// Recomputes the ground state and report at each cutoff. Throws
/// ParameterError unless cutoffs are strictly ascending and each >= 2.
ConvergenceStudy convergence_study(const SystemParams& p, const std::vector<std::size_t>& cutoffs,
                                   Basis basis = Basis::Transformed);

}  // namespace jtent

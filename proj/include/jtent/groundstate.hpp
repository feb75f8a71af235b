#pragma once

#include "jtent/hilbert_ops.hpp"
#include "jtent/model.hpp"

namespace jtent {

/// Gap below which the ground state is reported as degenerate.
inline constexpr double kDegeneracyTolerance = 1e-10;

struct GroundStateResult {
  double energy = 0.0;
  StateVector state;  ///< largest-magnitude amplitude is real and positive
  double gap = 0.0;   ///< E1 - E0
  double parity_expectation = 0.0;
  bool degenerate_flag = false;  ///< gap < kDegeneracyTolerance
  bool zero_frequency_warning = false;

  /// Results at this point need a caveat: ground vector is not unique (or nearly so).
  bool caveat() const { return degenerate_flag || zero_frequency_warning; }
};

/// Lowest eigenpair of an arbitrary Hermitian operator. Parity is evaluated
/// when the operator lives on the [2, N, N] space and left at 0 otherwise.
GroundStateResult lowest_eigenpair(const OperatorMatrix& h);

/// Ground state of the selected Hamiltonian builder.
GroundStateResult ground_state(const SystemParams& p, Basis basis);

/// <psi| sz (x) (-1)^(n1+n2) |psi> for a state on [2, N, N].
double parity_expectation(const StateVector& psi);

}  // namespace jtent

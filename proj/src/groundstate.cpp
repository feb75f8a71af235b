#include "jtent/groundstate.hpp"

#include <algorithm>
#include <cmath>

#include "jtent/eigensolver.hpp"
#include "jtent/errors.hpp"

namespace jtent {

double parity_expectation(const StateVector& psi) {
  const auto& dims = psi.factor_dims;
  if (dims.size() != 3 || dims[0] != 2 || dims[1] != dims[2])
    throw ShapeError("parity_expectation: state is not on the [2, N, N] space");
  const std::size_t n = dims[1];
  double acc = 0.0;
  for (std::size_t s = 0; s < 2; ++s)
    for (std::size_t n1 = 0; n1 < n; ++n1)
      for (std::size_t n2 = 0; n2 < n; ++n2) {
        const double sign = (s == 0 ? -1.0 : 1.0) * ((n1 + n2) % 2 == 0 ? 1.0 : -1.0);
        acc += sign * std::norm(psi.amplitudes[flat_index(s, n1, n2, n)]);
      }
  return acc;
}

GroundStateResult lowest_eigenpair(const OperatorMatrix& h) {
  const auto eig = eig_hermitian(h.matrix);
  const std::size_t dim = h.dim();

  std::vector<Complex> amps(dim);
  std::size_t pivot = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < dim; ++i) {
    amps[i] = eig.vectors(i, 0);
    const double mag = std::abs(amps[i]);
    if (mag > best) {
      best = mag;
      pivot = i;
    }
  }
  // Fix the global phase, then renormalize against accumulated rounding.
  const Complex phase = std::conj(amps[pivot]) / std::abs(amps[pivot]);
  double norm = 0.0;
  for (auto& a : amps) {
    a *= phase;
    norm += std::norm(a);
  }
  norm = std::sqrt(norm);
  for (auto& a : amps) a /= norm;
  amps[pivot] = Complex{amps[pivot].real(), 0.0};

  GroundStateResult r;
  r.energy = eig.values[0];
  r.gap = dim > 1 ? std::max(0.0, eig.values[1] - eig.values[0]) : 0.0;
  r.degenerate_flag = dim > 1 && r.gap < kDegeneracyTolerance;
  r.state = StateVector(h.factor_dims, std::move(amps));
  const auto& d = h.factor_dims;
  if (d.size() == 3 && d[0] == 2 && d[1] == d[2]) r.parity_expectation = parity_expectation(r.state);
  return r;
}

GroundStateResult ground_state(const SystemParams& p, Basis basis) {
  auto r = lowest_eigenpair(build_hamiltonian(p, basis));
  r.zero_frequency_warning = zero_frequency_mode(p);
  return r;
}

}  // namespace jtent

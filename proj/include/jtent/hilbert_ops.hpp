#pragma once

#include <cstddef>
#include <vector>

#include "jtent/matrix.hpp"

namespace jtent {

// Basis ordering used by every module:
//   tensor order (qubit S, mode 1, mode 2), flat index = s*N*N + n1*N + n2.
// s = 0 is the lower qubit level (sigma_z eigenvalue -1), s = 1 the upper one.
// The rotated (S, B1, B2) basis uses the same layout.

using FactorDims = std::vector<std::size_t>;

std::size_t product(const FactorDims& dims);

/// Square operator together with its tensor-factor shape.
struct OperatorMatrix {
  FactorDims factor_dims;
  CMatrix matrix;

  OperatorMatrix() = default;
  /// Throws ShapeError unless matrix is square with side product(factor_dims).
  OperatorMatrix(FactorDims dims, CMatrix m);

  std::size_t dim() const { return matrix.rows(); }
  bool is_hermitian(double tol = 1e-12) const { return matrix.hermiticity_error() < tol; }
};

struct StateVector {
  FactorDims factor_dims;
  std::vector<Complex> amplitudes;

  StateVector() = default;
  StateVector(FactorDims dims, std::vector<Complex> amps);

  std::size_t dim() const { return amplitudes.size(); }
  double norm() const { return norm2(amplitudes); }
  bool is_normalized(double tol = 1e-10) const;
};

enum class Slot { S, M1, M2 };

enum class PauliAxis { X, Z };

/// Truncated bosonic lowering operator, (a)_{m,n} = sqrt(n) delta_{m,n-1}.
/// Throws ParameterError for cutoff < 2.
OperatorMatrix annihilation(std::size_t cutoff);
OperatorMatrix creation(std::size_t cutoff);
OperatorMatrix number_operator(std::size_t cutoff);

/// sigma_z = diag(-1, +1), sigma_x = [[0,1],[1,0]] in the (lower, upper) order.
OperatorMatrix pauli(PauliAxis which);

/// Lift a single-factor operator into the factor `index` of `dims`.
OperatorMatrix embed_factor(const OperatorMatrix& op, std::size_t index, const FactorDims& dims);

/// Lift an operator into the [2, N, N] qubit-mode-mode space.
OperatorMatrix embed(const OperatorMatrix& op, Slot slot, std::size_t cutoff);

inline std::size_t flat_index(std::size_t s, std::size_t n1, std::size_t n2, std::size_t cutoff) {
  return (s * cutoff + n1) * cutoff + n2;
}

}  // namespace jtent

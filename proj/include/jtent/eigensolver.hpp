#pragma once

#include <vector>

#include "jtent/matrix.hpp"

namespace jtent {

struct EigenDecomposition {
  std::vector<double> values;  ///< ascending
  CMatrix vectors;             ///< column j is the eigenvector of values[j]
};

/// Full spectral decomposition of a dense Hermitian matrix.
///
/// Householder reduction to a complex tridiagonal form, a diagonal phase
/// similarity that makes the off-diagonal real, then implicit-shift QL on the
/// real symmetric tridiagonal matrix with the rotations accumulated into the
/// (complex) reduction basis.
///
/// Throws ContractViolation if `h` is not square or not Hermitian to
/// 1e-12 * max(1, max|h_ij|).
EigenDecomposition eig_hermitian(const CMatrix& h);

/// Eigenvalues only (ascending); skips all eigenvector work.
std::vector<double> eigvalsh(const CMatrix& h);

}  // namespace jtent

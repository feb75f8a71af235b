#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "jtent/groundstate.hpp"
#include "jtent/hilbert_ops.hpp"
#include "jtent/matrix.hpp"
#include "jtent/model.hpp"

namespace jtent {

struct DensityMatrix {
  FactorDims factor_dims;
  CMatrix entries;

  DensityMatrix() = default;
  /// Throws ShapeError unless entries is square with side product(factor_dims).
  DensityMatrix(FactorDims dims, CMatrix m);

  std::size_t dim() const { return entries.rows(); }
};

/// Values within this distance below zero are treated as rounding noise.
inline constexpr double kNegativityClampTolerance = 1e-9;

/// |psi><psi|. Throws NormalizationError unless | ||psi|| - 1 | < 1e-10.
DensityMatrix density_from_state(const StateVector& psi);

/// Traces out every factor not listed in `keep`. Kept factors stay in their
/// original relative order. Throws ShapeError for an empty, unsorted or
/// out-of-range `keep`.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::size_t>& keep);

/// Transposes the indices of the listed factors only.
CMatrix partial_transpose(const DensityMatrix& rho, const std::vector<std::size_t>& factors);
CMatrix partial_transpose(const DensityMatrix& rho, std::size_t factor);

/// Sum of absolute eigenvalues of a Hermitian matrix. Throws ContractViolation otherwise.
double trace_norm(const CMatrix& m);

/// log2 || rho^{T_A} ||_1 with A = `group_a`, a nonempty proper subset of
/// the factors of rho. PPT states, including those whose negative
/// eigenvalues sit at the eigensolver's rounding floor, give exactly 0; values slightly below
/// zero are clamped and larger negatives raise NumericalIntegrityError.
double log_negativity(const DensityMatrix& rho, const std::vector<std::size_t>& group_a);

enum class Bipartition { S_B1B2, S_B1, S_B2, B1_B2 };

inline constexpr std::array<Bipartition, 4> kAllBipartitions{
    Bipartition::S_B1B2, Bipartition::S_B1, Bipartition::S_B2, Bipartition::B1_B2};

std::string_view to_string(Bipartition b);

struct EntanglementReport {
  double en_s_b1b2 = 0.0;
  double en_s_b1 = 0.0;
  double en_s_b2 = 0.0;
  double en_b1_b2 = 0.0;
  bool degeneracy_caveat = false;

  double operator[](Bipartition b) const;
  /// Largest per-bipartition absolute difference.
  double max_abs_diff(const EntanglementReport& other) const;
};

/// The four negativities of a pure state on [2, N, N]. The mode factors are
/// whatever basis the state is written in (B1/B2 or lab M1/M2).
EntanglementReport report_from_state(const StateVector& psi);

/// Ground-state report of the selected Hamiltonian.
EntanglementReport report(const SystemParams& p, Basis basis);

}  // namespace jtent

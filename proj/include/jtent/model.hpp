#pragma once

#include <cstddef>
#include <string>

#include "jtent/hilbert_ops.hpp"

namespace jtent {

/// One instance of the two-mode qubit-resonator model. Frequencies are in
/// units of the qubit splitting (omega_q = 1 in every built-in sweep); the
/// couplings are g_i = omega_i * k_i.
struct SystemParams {
  double omega_q = 1.0;
  double omega_1 = 1.0;
  double omega_2 = 1.0;
  double k_1 = 0.0;
  double k_2 = 0.0;
  double J = 0.0;
  std::size_t N = 10;

  double g_1() const { return omega_1 * k_1; }
  double g_2() const { return omega_2 * k_2; }

  bool operator==(const SystemParams&) const = default;
};

/// Largest accepted Fock cutoff; keeps the dense 2N^2 space below ~1 GB of work memory.
inline constexpr std::size_t kMaxCutoff = 40;

/// Throws ParameterError naming the first violated constraint.
void validate(const SystemParams& p);

/// True when a mode frequency is exactly zero. The decoupled zero-frequency
/// mode makes the ground state degenerate, so downstream results carry a caveat.
bool zero_frequency_mode(const SystemParams& p);

/// Quantities of the privileged / disadvantaged mode rotation
///   b1 = (k1 a1 + k2 a2)/k_p,  b2 = (k2 a1 - k1 a2)/k_p.
struct PrivilegedParams {
  double k_p = 0.0;
  double omega_p = 0.0;
  double omega_p_tilde = 0.0;
  double c = 0.0;      ///< b1-b2 exchange from the frequency mismatch, Delta k1 k2 / k_p^2
  double g_p = 0.0;    ///< omega_p * k_p
  double Delta = 0.0;  ///< omega_1 - omega_2
};

/// Throws DegenerateTransformError when k_1 = k_2 = 0.
PrivilegedParams privileged_params(const SystemParams& p);

/// Coefficients of the Hamiltonian in the rotated (S, B1, B2) basis.
struct TransformedCoefficients {
  double mode_1 = 0.0;   ///< on b1^dag b1: omega_p + 2 J k1 k2 / k_p^2
  double mode_2 = 0.0;   ///< on b2^dag b2: omega_p_tilde - 2 J k1 k2 / k_p^2
  double hopping = 0.0;  ///< on b1^dag b2 + h.c.: c + J (k2^2 - k1^2) / k_p^2
  double coupling_1 = 0.0;  ///< on (b1 + b1^dag) sigma_x: k_p omega_p
  double coupling_2 = 0.0;  ///< on (b2 + b2^dag) sigma_x: k_p c
};

TransformedCoefficients transformed_coefficients(const SystemParams& p);

enum class Basis { Lab, Transformed };

const char* to_string(Basis basis);
/// Accepts "lab" and "transformed"; throws ParameterError otherwise.
Basis parse_basis(const std::string& name);

/// (omega_q/2) sz + sum_i omega_i a_i^dag a_i + sum_i g_i (a_i + a_i^dag) sx + J (a1^dag a2 + h.c.)
OperatorMatrix build_lab_hamiltonian(const SystemParams& p);

/// The same Hamiltonian rewritten exactly in the privileged / disadvantaged
/// modes, then truncated to N levels per rotated mode.
OperatorMatrix build_transformed_hamiltonian(const SystemParams& p);

/// (omega_q/2) sz + omega_p b^dag b + g_p (b + b^dag) sx on the [2, N] space.
OperatorMatrix build_single_mode_jt(const SystemParams& p);

OperatorMatrix build_hamiltonian(const SystemParams& p, Basis basis);

/// Basis actually used by the point/sweep pipeline. With k_1 = k_2 = 0 there
/// is no privileged direction and the qubit is decoupled, so the rotated
/// basis falls back to the identity rotation (b_i = a_i), i.e. the lab basis.
Basis resolve_basis(const SystemParams& p, Basis requested);

/// sz (x) (-1)^(n1 + n2). Commutes with every Hamiltonian above.
OperatorMatrix parity_operator(std::size_t cutoff);

struct ValidityDiagnostics {
  double r1 = 0.0;  ///< qubit-B2 coupling over qubit-B1 coupling
  double r2 = 0.0;  ///< B1-B2 hopping over qubit-B1 coupling
  bool valid = false;
};

inline constexpr double kValidityThreshold = 0.1;

/// Ratios quantifying how well the single privileged mode captures the model.
ValidityDiagnostics privileged_validity(const SystemParams& p);

/// Lab-basis state re-expressed in the (S, B1, B2) Fock basis.
struct RotatedState {
  StateVector state;
  double discarded_weight = 0.0;  ///< norm^2 that fell outside the N x N rotated box
};

/// Applies the exact mode rotation to a state on [2, N, N]. The rotation
/// conserves n1 + n2, so only lab components with n1 + n2 >= N can leak out
/// of the truncated box; the result is renormalized when they do.
RotatedState rotate_to_privileged_basis(const StateVector& lab_state, const SystemParams& p);

}  // namespace jtent

#include "jtent/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "jtent/errors.hpp"

namespace jtent {

void validate(const SystemParams& p) {
  auto finite = [](double x) { return std::isfinite(x); };
  if (!finite(p.omega_q) || !finite(p.omega_1) || !finite(p.omega_2) || !finite(p.k_1) ||
      !finite(p.k_2) || !finite(p.J))
    throw ParameterError("parameters must be finite numbers");
  if (p.N < 2) throw ParameterError("cutoff must be ≥ 2");
  if (p.N > kMaxCutoff)
    throw ParameterError("cutoff must be ≤ " + std::to_string(kMaxCutoff));
  if (!(p.omega_q > 0.0)) throw ParameterError("omega_q must be > 0");
  if (p.omega_1 < 0.0) throw ParameterError("omega_1 must be ≥ 0");
  if (p.omega_2 < 0.0) throw ParameterError("omega_2 must be ≥ 0");
  if (p.k_1 < 0.0) throw ParameterError("k_1 must be ≥ 0");
  if (p.k_2 < 0.0) throw ParameterError("k_2 must be ≥ 0");
}

bool zero_frequency_mode(const SystemParams& p) { return p.omega_1 == 0.0 || p.omega_2 == 0.0; }

PrivilegedParams privileged_params(const SystemParams& p) {
  validate(p);
  const double kp2 = p.k_1 * p.k_1 + p.k_2 * p.k_2;
  if (!(kp2 > 0.0))
    throw DegenerateTransformError("mode rotation undefined for k_1 = k_2 = 0");
  PrivilegedParams out;
  out.k_p = std::sqrt(kp2);
  out.Delta = p.omega_1 - p.omega_2;
  out.omega_p = (p.omega_1 * p.k_1 * p.k_1 + p.omega_2 * p.k_2 * p.k_2) / kp2;
  out.omega_p_tilde = (p.omega_1 * p.k_2 * p.k_2 + p.omega_2 * p.k_1 * p.k_1) / kp2;
  out.c = out.Delta * p.k_1 * p.k_2 / kp2;
  out.g_p = out.omega_p * out.k_p;
  return out;
}

TransformedCoefficients transformed_coefficients(const SystemParams& p) {
  const auto pp = privileged_params(p);
  const double kp2 = pp.k_p * pp.k_p;
  // a1^dag a2 + a2^dag a1 rotates into
  //   (2 k1 k2 (b1^dag b1 - b2^dag b2) + (k2^2 - k1^2)(b1^dag b2 + b2^dag b1)) / k_p^2
  const double j_number = 2.0 * p.J * p.k_1 * p.k_2 / kp2;
  TransformedCoefficients t;
  t.mode_1 = pp.omega_p + j_number;
  t.mode_2 = pp.omega_p_tilde - j_number;
  t.hopping = pp.c + p.J * (p.k_2 * p.k_2 - p.k_1 * p.k_1) / kp2;
  t.coupling_1 = pp.k_p * pp.omega_p;
  t.coupling_2 = pp.k_p * pp.c;
  return t;
}

const char* to_string(Basis basis) { return basis == Basis::Lab ? "lab" : "transformed"; }

Basis parse_basis(const std::string& name) {
  if (name == "lab") return Basis::Lab;
  if (name == "transformed") return Basis::Transformed;
  throw ParameterError("unknown basis '" + name + "' (expected lab or transformed)");
}

namespace {

// Generic qubit + two-mode Hamiltonian
//   (wq/2) sz + w1 n1 + w2 n2 + hop (m1^dag m2 + h.c.) + (c1 (m1 + m1^dag) + c2 (m2 + m2^dag)) sx
// assembled element by element in the (S, M1, M2) layout.
struct TwoModeTerms {
  double half_splitting;
  double w1, w2;
  double hop;
  double c1, c2;
};

OperatorMatrix assemble_two_mode(const TwoModeTerms& t, std::size_t n) {
  const std::size_t dim = 2 * n * n;
  CMatrix h(dim, dim);
  std::vector<double> sq(n + 1);
  for (std::size_t i = 0; i <= n; ++i) sq[i] = std::sqrt(static_cast<double>(i));

  for (std::size_t s = 0; s < 2; ++s) {
    const double qubit = s == 0 ? -t.half_splitting : t.half_splitting;
    const std::size_t flip = 1 - s;
    for (std::size_t n1 = 0; n1 < n; ++n1) {
      for (std::size_t n2 = 0; n2 < n; ++n2) {
        const std::size_t col = flat_index(s, n1, n2, n);
        h(col, col) = qubit + t.w1 * static_cast<double>(n1) + t.w2 * static_cast<double>(n2);

        // sigma_x (m_i + m_i^dag): flips the qubit and moves one quantum.
        if (n1 > 0) h(flat_index(flip, n1 - 1, n2, n), col) += t.c1 * sq[n1];
        if (n1 + 1 < n) h(flat_index(flip, n1 + 1, n2, n), col) += t.c1 * sq[n1 + 1];
        if (n2 > 0) h(flat_index(flip, n1, n2 - 1, n), col) += t.c2 * sq[n2];
        if (n2 + 1 < n) h(flat_index(flip, n1, n2 + 1, n), col) += t.c2 * sq[n2 + 1];

        // m1^dag m2 |n1, n2> = sqrt(n1 + 1) sqrt(n2) |n1 + 1, n2 - 1>, plus its adjoint.
        if (n2 > 0 && n1 + 1 < n)
          h(flat_index(s, n1 + 1, n2 - 1, n), col) += t.hop * sq[n1 + 1] * sq[n2];
        if (n1 > 0 && n2 + 1 < n)
          h(flat_index(s, n1 - 1, n2 + 1, n), col) += t.hop * sq[n1] * sq[n2 + 1];
      }
    }
  }
  return {{2, n, n}, std::move(h)};
}

}  // namespace

OperatorMatrix build_lab_hamiltonian(const SystemParams& p) {
  validate(p);
  return assemble_two_mode(
      {p.omega_q / 2.0, p.omega_1, p.omega_2, p.J, p.g_1(), p.g_2()}, p.N);
}

OperatorMatrix build_transformed_hamiltonian(const SystemParams& p) {
  const auto t = transformed_coefficients(p);
  return assemble_two_mode(
      {p.omega_q / 2.0, t.mode_1, t.mode_2, t.hopping, t.coupling_1, t.coupling_2}, p.N);
}

OperatorMatrix build_single_mode_jt(const SystemParams& p) {
  const auto pp = privileged_params(p);
  const std::size_t n = p.N;
  CMatrix h(2 * n, 2 * n);
  for (std::size_t s = 0; s < 2; ++s) {
    const std::size_t flip = 1 - s;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t col = s * n + k;
      h(col, col) = (s == 0 ? -0.5 : 0.5) * p.omega_q + pp.omega_p * static_cast<double>(k);
      if (k > 0) h(flip * n + k - 1, col) = pp.g_p * std::sqrt(static_cast<double>(k));
      if (k + 1 < n) h(flip * n + k + 1, col) = pp.g_p * std::sqrt(static_cast<double>(k + 1));
    }
  }
  return {{2, n}, std::move(h)};
}

OperatorMatrix build_hamiltonian(const SystemParams& p, Basis basis) {
  return basis == Basis::Lab ? build_lab_hamiltonian(p) : build_transformed_hamiltonian(p);
}

Basis resolve_basis(const SystemParams& p, Basis requested) {
  if (requested == Basis::Transformed && p.k_1 == 0.0 && p.k_2 == 0.0) return Basis::Lab;
  return requested;
}

OperatorMatrix parity_operator(std::size_t cutoff) {
  if (cutoff < 2) throw ParameterError("cutoff must be ≥ 2");
  const std::size_t n = cutoff;
  CMatrix m(2 * n * n, 2 * n * n);
  for (std::size_t s = 0; s < 2; ++s)
    for (std::size_t n1 = 0; n1 < n; ++n1)
      for (std::size_t n2 = 0; n2 < n; ++n2) {
        const double qubit = s == 0 ? -1.0 : 1.0;
        const double bosons = (n1 + n2) % 2 == 0 ? 1.0 : -1.0;
        const auto i = flat_index(s, n1, n2, n);
        m(i, i) = qubit * bosons;
      }
  return {{2, n, n}, std::move(m)};
}

ValidityDiagnostics privileged_validity(const SystemParams& p) {
  const auto pp = privileged_params(p);
  const double hop = pp.c + p.J * (p.k_2 * p.k_2 - p.k_1 * p.k_1) / (pp.k_p * pp.k_p);
  const double gp = std::abs(pp.g_p);
  ValidityDiagnostics d;
  auto ratio = [gp](double x) {
    if (gp > 0.0) return std::abs(x) / gp;
    return x == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  };
  d.r1 = ratio(pp.k_p * pp.c);
  d.r2 = ratio(hop);
  d.valid = gp > 0.0 && d.r1 <= kValidityThreshold && d.r2 <= kValidityThreshold;
  return d;
}

RotatedState rotate_to_privileged_basis(const StateVector& lab_state, const SystemParams& p) {
  validate(p);
  const std::size_t n = p.N;
  if (lab_state.factor_dims != FactorDims{2, n, n})
    throw ShapeError("rotate_to_privileged_basis: state is not on the [2, N, N] space");
  const auto pp = privileged_params(p);
  // a1^dag = u b1^dag + v b2^dag,  a2^dag = v b1^dag - u b2^dag
  const double u = p.k_1 / pp.k_p;
  const double v = p.k_2 / pp.k_p;

  std::vector<double> fact(2 * n, 1.0);
  for (std::size_t i = 1; i < fact.size(); ++i) fact[i] = fact[i - 1] * static_cast<double>(i);
  auto binom = [&](std::size_t a, std::size_t b) { return fact[a] / (fact[b] * fact[a - b]); };

  std::vector<Complex> out(lab_state.dim());
  bool truncated = false;
  for (std::size_t n1 = 0; n1 < n; ++n1) {
    for (std::size_t n2 = 0; n2 < n; ++n2) {
      const double norm_in = std::sqrt(fact[n1] * fact[n2]);
      const std::size_t total = n1 + n2;
      for (std::size_t j = 0; j <= n1; ++j) {
        for (std::size_t l = 0; l <= n2; ++l) {
          const std::size_t m1 = j + l;
          const std::size_t m2 = total - m1;
          double coef = binom(n1, j) * binom(n2, l) * std::pow(u, static_cast<double>(j)) *
                        std::pow(v, static_cast<double>(n1 - j)) *
                        std::pow(v, static_cast<double>(l)) *
                        std::pow(-u, static_cast<double>(n2 - l));
          if (coef == 0.0) continue;
          if (m1 >= n || m2 >= n) {
            truncated = true;
            continue;
          }
          coef *= std::sqrt(fact[m1] * fact[m2]) / norm_in;
          for (std::size_t s = 0; s < 2; ++s)
            out[flat_index(s, m1, m2, n)] += coef * lab_state.amplitudes[flat_index(s, n1, n2, n)];
        }
      }
    }
  }

  const double in_norm2 = std::pow(lab_state.norm(), 2);
  const double kept = std::pow(norm2(out), 2);
  RotatedState r;
  if (!truncated) {
    r.state = StateVector({2, n, n}, std::move(out));
    return r;
  }
  r.discarded_weight = std::max(0.0, in_norm2 - kept);
  if (kept > 0.0) {
    const double scale = 1.0 / std::sqrt(kept);
    for (auto& x : out) x *= scale;
  }
  r.state = StateVector({2, n, n}, std::move(out));
  return r;
}

}  // namespace jtent

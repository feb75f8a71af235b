#include "jtent/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "jtent/eigensolver.hpp"
#include "jtent/errors.hpp"

namespace jtent {

DensityMatrix::DensityMatrix(FactorDims dims, CMatrix m)
    : factor_dims(std::move(dims)), entries(std::move(m)) {
  if (factor_dims.empty()) throw ShapeError("density matrix needs at least one factor");
  if (!entries.square() || entries.rows() != product(factor_dims))
    throw ShapeError("density matrix shape does not match its factor dimensions");
}

DensityMatrix density_from_state(const StateVector& psi) {
  if (!psi.is_normalized(1e-10))
    throw NormalizationError("density_from_state: state norm deviates from 1 by more than 1e-10");
  const std::size_t d = psi.dim();
  CMatrix rho(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    const Complex a = psi.amplitudes[i];
    if (a == Complex{}) continue;
    for (std::size_t j = 0; j < d; ++j) rho(i, j) = a * std::conj(psi.amplitudes[j]);
  }
  return {psi.factor_dims, std::move(rho)};
}

namespace {

std::vector<std::size_t> strides_of(const FactorDims& dims) {
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) strides[i - 1] = strides[i] * dims[i];
  return strides;
}

// Flat offsets contributed by every multi-index over the selected factors.
// Enumeration order is row-major over the selection, so position k in the
// result is the flat index of the reduced space.
std::vector<std::size_t> offsets_over(const FactorDims& dims, const std::vector<std::size_t>& strides,
                                      const std::vector<std::size_t>& selected) {
  std::vector<std::size_t> out{0};
  for (auto f : selected) {
    std::vector<std::size_t> next;
    next.reserve(out.size() * dims[f]);
    for (auto base : out)
      for (std::size_t i = 0; i < dims[f]; ++i) next.push_back(base + i * strides[f]);
    out = std::move(next);
  }
  return out;
}

void check_factor_list(const std::vector<std::size_t>& factors, std::size_t count, const char* what) {
  if (factors.empty()) throw ShapeError(std::string(what) + ": factor list is empty");
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i] >= count) throw ShapeError(std::string(what) + ": factor index out of range");
    if (i > 0 && factors[i] <= factors[i - 1])
      throw ShapeError(std::string(what) + ": factor indices must be strictly ascending");
  }
}

std::vector<std::size_t> complement(const std::vector<std::size_t>& factors, std::size_t count) {
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < count; ++f)
    if (!std::binary_search(factors.begin(), factors.end(), f)) out.push_back(f);
  return out;
}

}  // namespace

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::size_t>& keep) {
  const auto& dims = rho.factor_dims;
  check_factor_list(keep, dims.size(), "partial_trace");
  const auto strides = strides_of(dims);
  const auto traced = complement(keep, dims.size());
  const auto kept_off = offsets_over(dims, strides, keep);
  const auto traced_off = offsets_over(dims, strides, traced);

  FactorDims kept_dims;
  for (auto f : keep) kept_dims.push_back(dims[f]);
  const std::size_t d = kept_off.size();
  CMatrix out(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Complex acc = 0.0;
      for (auto t : traced_off) acc += rho.entries(kept_off[i] + t, kept_off[j] + t);
      out(i, j) = acc;
    }
  return {std::move(kept_dims), std::move(out)};
}

CMatrix partial_transpose(const DensityMatrix& rho, const std::vector<std::size_t>& factors) {
  const auto& dims = rho.factor_dims;
  check_factor_list(factors, dims.size(), "partial_transpose");
  const auto strides = strides_of(dims);
  const std::size_t d = rho.dim();

  // Split every flat index into its transposed-factor part and the rest.
  std::vector<std::size_t> part_a(d), part_b(d);
  for (std::size_t idx = 0; idx < d; ++idx) {
    std::size_t a = 0;
    for (auto f : factors) a += (idx / strides[f]) % dims[f] * strides[f];
    part_a[idx] = a;
    part_b[idx] = idx - a;
  }
  CMatrix out(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c)
      out(r, c) = rho.entries(part_a[c] + part_b[r], part_a[r] + part_b[c]);
  return out;
}

CMatrix partial_transpose(const DensityMatrix& rho, std::size_t factor) {
  return partial_transpose(rho, std::vector<std::size_t>{factor});
}

double trace_norm(const CMatrix& m) {
  double s = 0.0;
  for (double lambda : eigvalsh(m)) s += std::abs(lambda);
  return s;
}

double log_negativity(const DensityMatrix& rho, const std::vector<std::size_t>& group_a) {
  check_factor_list(group_a, rho.factor_dims.size(), "log_negativity");
  if (group_a.size() == rho.factor_dims.size())
    throw ShapeError("log_negativity: partition leaves the complement empty");
  const Complex tr = rho.entries.trace();
  if (std::abs(tr - 1.0) > 1e-9)
    throw ContractViolation("log_negativity: density matrix trace deviates from 1");

  const auto eigenvalues = eigvalsh(partial_transpose(rho, group_a));
  // A positive partial transpose has trace norm equal to its unit trace.
  // Negative weight at the eigensolver's rounding floor counts as positive.
  double norm = 0.0, negative = 0.0, largest = 0.0;
  for (double lambda : eigenvalues) {
    norm += std::abs(lambda);
    if (lambda < 0.0) negative -= lambda;
    largest = std::max(largest, std::abs(lambda));
  }
  const double floor = 8.0 * static_cast<double>(eigenvalues.size()) *
                       std::numeric_limits<double>::epsilon() * std::max(1.0, largest);
  if (negative <= floor) return 0.0;
  const double value = std::log2(norm);
  if (value >= 0.0) return value;
  if (value >= -kNegativityClampTolerance) return 0.0;
  throw NumericalIntegrityError("log_negativity: trace norm below 1 beyond rounding tolerance");
}

std::string_view to_string(Bipartition b) {
  switch (b) {
    case Bipartition::S_B1B2:
      return "S|B1B2";
    case Bipartition::S_B1:
      return "S|B1";
    case Bipartition::S_B2:
      return "S|B2";
    case Bipartition::B1_B2:
      return "B1|B2";
  }
  return "?";
}

double EntanglementReport::operator[](Bipartition b) const {
  switch (b) {
    case Bipartition::S_B1B2:
      return en_s_b1b2;
    case Bipartition::S_B1:
      return en_s_b1;
    case Bipartition::S_B2:
      return en_s_b2;
    case Bipartition::B1_B2:
      return en_b1_b2;
  }
  return 0.0;
}

double EntanglementReport::max_abs_diff(const EntanglementReport& other) const {
  double m = 0.0;
  for (auto b : kAllBipartitions) m = std::max(m, std::abs((*this)[b] - other[b]));
  return m;
}

EntanglementReport report_from_state(const StateVector& psi) {
  const auto& dims = psi.factor_dims;
  if (dims.size() != 3 || dims[0] != 2)
    throw ShapeError("report_from_state: state is not on a [2, N1, N2] space");
  const auto rho = density_from_state(psi);

  EntanglementReport r;
  r.en_s_b1b2 = log_negativity(rho, {0});
  r.en_s_b1 = log_negativity(partial_trace(rho, {0, 1}), {0});
  r.en_s_b2 = log_negativity(partial_trace(rho, {0, 2}), {0});
  r.en_b1_b2 = log_negativity(partial_trace(rho, {1, 2}), {0});
  return r;
}

EntanglementReport report(const SystemParams& p, Basis basis) {
  const auto gs = ground_state(p, basis);
  auto r = report_from_state(gs.state);
  r.degeneracy_caveat = gs.caveat();
  return r;
}

}  // namespace jtent

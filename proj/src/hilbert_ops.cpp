#include "jtent/hilbert_ops.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "jtent/errors.hpp"

namespace jtent {

std::size_t product(const FactorDims& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

OperatorMatrix::OperatorMatrix(FactorDims dims, CMatrix m)
    : factor_dims(std::move(dims)), matrix(std::move(m)) {
  if (factor_dims.empty()) throw ShapeError("operator needs at least one tensor factor");
  for (auto d : factor_dims)
    if (d == 0) throw ShapeError("tensor factor dimensions must be positive");
  if (!matrix.square() || matrix.rows() != product(factor_dims))
    throw ShapeError("operator shape does not match its factor dimensions");
}

StateVector::StateVector(FactorDims dims, std::vector<Complex> amps)
    : factor_dims(std::move(dims)), amplitudes(std::move(amps)) {
  if (amplitudes.size() != product(factor_dims))
    throw ShapeError("state length does not match its factor dimensions");
}

bool StateVector::is_normalized(double tol) const { return std::abs(norm() - 1.0) < tol; }

namespace {

void require_cutoff(std::size_t cutoff) {
  if (cutoff < 2) throw ParameterError("cutoff must be >= 2, got " + std::to_string(cutoff));
}

}  // namespace

OperatorMatrix annihilation(std::size_t cutoff) {
  require_cutoff(cutoff);
  CMatrix a(cutoff, cutoff);
  for (std::size_t n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return {{cutoff}, std::move(a)};
}

OperatorMatrix creation(std::size_t cutoff) {
  auto a = annihilation(cutoff);
  return {{cutoff}, a.matrix.adjoint()};
}

OperatorMatrix number_operator(std::size_t cutoff) {
  require_cutoff(cutoff);
  CMatrix n(cutoff, cutoff);
  for (std::size_t i = 0; i < cutoff; ++i) n(i, i) = static_cast<double>(i);
  return {{cutoff}, std::move(n)};
}

OperatorMatrix pauli(PauliAxis which) {
  CMatrix m(2, 2);
  switch (which) {
    case PauliAxis::X:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case PauliAxis::Z:
      m(0, 0) = -1.0;
      m(1, 1) = 1.0;
      break;
  }
  return {{2}, std::move(m)};
}

OperatorMatrix embed_factor(const OperatorMatrix& op, std::size_t index, const FactorDims& dims) {
  if (index >= dims.size()) throw ShapeError("embed: factor index out of range");
  if (op.dim() != dims[index])
    throw ShapeError("embed: operator dimension " + std::to_string(op.dim()) +
                     " does not match factor dimension " + std::to_string(dims[index]));
  std::size_t outer = 1;
  for (std::size_t i = 0; i < index; ++i) outer *= dims[i];
  std::size_t inner = 1;
  for (std::size_t i = index + 1; i < dims.size(); ++i) inner *= dims[i];

  const std::size_t d = dims[index];
  const std::size_t total = outer * d * inner;
  CMatrix out(total, total);
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) {
        const Complex v = op.matrix(r, c);
        if (v == Complex{}) continue;
        for (std::size_t i = 0; i < inner; ++i)
          out((o * d + r) * inner + i, (o * d + c) * inner + i) = v;
      }
  return {dims, std::move(out)};
}

OperatorMatrix embed(const OperatorMatrix& op, Slot slot, std::size_t cutoff) {
  require_cutoff(cutoff);
  const FactorDims dims{2, cutoff, cutoff};
  switch (slot) {
    case Slot::S:
      return embed_factor(op, 0, dims);
    case Slot::M1:
      return embed_factor(op, 1, dims);
    case Slot::M2:
      return embed_factor(op, 2, dims);
  }
  throw ShapeError("embed: unknown slot");
}

}  // namespace jtent

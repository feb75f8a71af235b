#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace jtent {

using Complex = std::complex<double>;

/// Dense row-major complex matrix.
///
/// Sizes in this project stay below 1000 x 1000, so plain contiguous storage
/// with straightforward loops is sufficient. Element (i, j) lives at
/// data()[i * cols() + j].
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);

  static CMatrix zeros(std::size_t rows, std::size_t cols) { return CMatrix(rows, cols); }
  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Complex> data() { return data_; }
  std::span<const Complex> data() const { return data_; }

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(Complex scale);

  CMatrix adjoint() const;
  CMatrix transpose() const;
  Complex trace() const;

  /// max_ij |M_ij|
  double max_abs() const;
  /// max_ij |M_ij - conj(M_ji)|; zero for exactly Hermitian matrices.
  double hermiticity_error() const;

  bool operator==(const CMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

CMatrix operator+(CMatrix lhs, const CMatrix& rhs);
CMatrix operator-(CMatrix lhs, const CMatrix& rhs);
CMatrix operator*(Complex scale, CMatrix m);
CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs);

std::vector<Complex> multiply(const CMatrix& m, std::span<const Complex> v);

/// Kronecker product lhs (x) rhs with lhs as the slow (outer) index.
CMatrix kron(const CMatrix& lhs, const CMatrix& rhs);

/// lhs * rhs - rhs * lhs
CMatrix commutator(const CMatrix& lhs, const CMatrix& rhs);

double max_abs_diff(const CMatrix& a, const CMatrix& b);

double norm2(std::span<const Complex> v);
Complex inner(std::span<const Complex> bra, std::span<const Complex> ket);

}  // namespace jtent

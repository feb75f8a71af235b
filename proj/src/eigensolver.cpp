#include "jtent/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "jtent/errors.hpp"

namespace jtent {

namespace {

void require_hermitian(const CMatrix& h) {
  if (!h.square()) throw ContractViolation("eig_hermitian: matrix is not square");
  const double tol = 1e-12 * std::max(1.0, h.max_abs());
  if (h.hermiticity_error() > tol)
    throw ContractViolation("eig_hermitian: matrix is not Hermitian");
}

struct Reflector {
  std::vector<Complex> v;  // acts on indices [offset, n)
  std::size_t offset = 0;
  double tau = 0.0;        // H = I - tau v v^dag
};

// Reduces `a` in place so that it is tridiagonal: a = Q T Q^dag with
// Q = H_0 H_1 ... H_{n-3}. Real diagonal in `d`, real non-negative
// off-diagonal in `e` (e[i] couples i and i+1, e[n-1] = 0). When `basis` is
// non-null it receives Q * diag(phase), the basis in which the real
// tridiagonal matrix is expressed.
void tridiagonalize(CMatrix& a, std::vector<double>& d, std::vector<double>& e, CMatrix* basis) {
  const std::size_t n = a.rows();
  std::vector<Reflector> reflectors;
  if (basis != nullptr) reflectors.reserve(n);
  std::vector<Complex> p(n), w(n);

  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t off = k + 1;
    const std::size_t m = n - off;

    double tail = 0.0;
    for (std::size_t i = 1; i < m; ++i) tail += std::norm(a(off + i, k));
    if (tail == 0.0) continue;

    const Complex x0 = a(off, k);
    const double xnorm = std::sqrt(tail + std::norm(x0));
    const double ax0 = std::abs(x0);
    const Complex phase = ax0 > 0.0 ? x0 / ax0 : Complex{1.0, 0.0};
    const Complex alpha = -phase * xnorm;

    Reflector r;
    r.offset = off;
    r.v.resize(m);
    for (std::size_t i = 0; i < m; ++i) r.v[i] = a(off + i, k);
    r.v[0] -= alpha;
    r.tau = 1.0 / (xnorm * xnorm + xnorm * ax0);  // 2 / (v^dag v)
    const auto& v = r.v;

    // p = tau * A22 v
    for (std::size_t i = 0; i < m; ++i) {
      Complex acc = 0.0;
      for (std::size_t j = 0; j < m; ++j) acc += a(off + i, off + j) * v[j];
      p[i] = r.tau * acc;
    }
    // w = p - (tau/2)(v^dag p) v ; v^dag p is real for Hermitian A22
    Complex vp = 0.0;
    for (std::size_t i = 0; i < m; ++i) vp += std::conj(v[i]) * p[i];
    const double kscale = 0.5 * r.tau * vp.real();
    for (std::size_t i = 0; i < m; ++i) w[i] = p[i] - kscale * v[i];
    // A22 -= v w^dag + w v^dag
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        a(off + i, off + j) -= v[i] * std::conj(w[j]) + w[i] * std::conj(v[j]);

    a(off, k) = alpha;
    a(k, off) = std::conj(alpha);
    for (std::size_t i = 1; i < m; ++i) {
      a(off + i, k) = 0.0;
      a(k, off + i) = 0.0;
    }
    if (basis != nullptr) reflectors.push_back(std::move(r));
  }

  d.assign(n, 0.0);
  e.assign(n, 0.0);
  std::vector<Complex> phases(n, Complex{1.0, 0.0});
  for (std::size_t i = 0; i < n; ++i) d[i] = a(i, i).real();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Complex sub = a(i + 1, i);
    const double mag = std::abs(sub);
    e[i] = mag;
    phases[i + 1] = mag > 0.0 ? phases[i] * (sub / mag) : phases[i];
  }

  if (basis == nullptr) return;
  CMatrix q = CMatrix::identity(n);
  std::vector<Complex> row_mix(n);
  for (auto it = reflectors.rbegin(); it != reflectors.rend(); ++it) {
    const auto& r = *it;
    const std::size_t m = r.v.size();
    // q[off:, :] -= tau v (v^dag q[off:, :])
    std::fill(row_mix.begin(), row_mix.end(), Complex{});
    for (std::size_t i = 0; i < m; ++i) {
      const Complex cv = std::conj(r.v[i]);
      for (std::size_t j = 0; j < n; ++j) row_mix[j] += cv * q(r.offset + i, j);
    }
    for (std::size_t i = 0; i < m; ++i) {
      const Complex tv = r.tau * r.v[i];
      for (std::size_t j = 0; j < n; ++j) q(r.offset + i, j) -= tv * row_mix[j];
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q(i, j) *= phases[j];
  *basis = std::move(q);
}

// Implicit-shift QL on the real symmetric tridiagonal (d, e). Each plane
// rotation is also applied to the columns of `z` when given.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, CMatrix* z) {
  const int n = static_cast<int>(d.size());
  constexpr int kMaxIterations = 60;
  const double eps = std::numeric_limits<double>::epsilon();
  // Deflate against the norm of the whole matrix rather than the local
  // diagonal: density matrices carry long stretches of rounding noise that a
  // purely relative test never accepts.
  double scale = 0.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(d[i]) + std::abs(e[i]));

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        if (std::abs(e[m]) <= eps * scale) break;
      }
      if (m != l) {
        if (iter++ == kMaxIterations)
          throw NumericalIntegrityError("eig_hermitian: QL iteration did not converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (z != nullptr) {
            for (std::size_t k = 0; k < z->rows(); ++k) {
              const Complex zf = (*z)(k, i + 1);
              (*z)(k, i + 1) = s * (*z)(k, i) + c * zf;
              (*z)(k, i) = c * (*z)(k, i) - s * zf;
            }
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

EigenDecomposition eig_hermitian(const CMatrix& h) {
  require_hermitian(h);
  const std::size_t n = h.rows();
  EigenDecomposition out;
  if (n == 0) return out;

  CMatrix work = h;
  std::vector<double> d, e;
  CMatrix basis;
  tridiagonalize(work, d, e, &basis);
  tridiagonal_ql(d, e, &basis);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  out.values.resize(n);
  out.vectors = CMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = d[order[j]];
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = basis(i, order[j]);
  }
  return out;
}

std::vector<double> eigvalsh(const CMatrix& h) {
  require_hermitian(h);
  if (h.rows() == 0) return {};
  CMatrix work = h;
  std::vector<double> d, e;
  tridiagonalize(work, d, e, nullptr);
  tridiagonal_ql(d, e, nullptr);
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace jtent

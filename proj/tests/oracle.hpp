// Independent reference computations for the tests. Nothing here calls into
// the library's algebra: matrices are written out entry by entry and circuits
// are simulated on kets with bit arithmetic.
#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "gwt/dense.hpp"

namespace oracle {

using gwt::cplx;
using gwt::DenseOperator;
using Ket = std::vector<cplx>;

inline const double kSqrtHalf = 1.0 / std::sqrt(2.0);

inline DenseOperator mat2(cplx a, cplx b, cplx c, cplx d) { return DenseOperator(2, {a, b, c, d}); }
inline DenseOperator I2() { return mat2(1, 0, 0, 1); }
inline DenseOperator X2() { return mat2(0, 1, 1, 0); }
inline DenseOperator Y2() { return mat2(0, cplx(0, -1), cplx(0, 1), 0); }
inline DenseOperator Z2() { return mat2(1, 0, 0, -1); }

// Plain triple-loop Kronecker product.
inline DenseOperator tensor(const DenseOperator& a, const DenseOperator& b) {
  const std::size_t n = a.dim(), m = b.dim();
  DenseOperator out(n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) out(i * m + k, j * m + l) = a(i, j) * b(k, l);
  return out;
}

inline DenseOperator tensor(const DenseOperator& a, const DenseOperator& b, const DenseOperator& c) {
  return tensor(tensor(a, b), c);
}

inline DenseOperator matmul(const DenseOperator& a, const DenseOperator& b) {
  const std::size_t n = a.dim();
  DenseOperator out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) out(i, j) += a(i, k) * b(k, j);
  return out;
}

inline DenseOperator dagger(const DenseOperator& a) {
  DenseOperator out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) out(i, j) = std::conj(a(j, i));
  return out;
}

inline double max_diff(const DenseOperator& a, const DenseOperator& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

inline DenseOperator projector(const Ket& k) {
  DenseOperator out(k.size());
  for (std::size_t i = 0; i < k.size(); ++i)
    for (std::size_t j = 0; j < k.size(); ++j) out(i, j) = k[i] * std::conj(k[j]);
  return out;
}

// Three-qubit kets, qubit 0 (A) most significant.
inline std::size_t bit(std::size_t index, int q, int n = 3) { return (index >> (n - 1 - q)) & 1u; }
inline std::size_t flip(std::size_t index, int q, int n = 3) { return index ^ (std::size_t{1} << (n - 1 - q)); }

inline Ket basis_ket(std::size_t index, std::size_t dim = 8) {
  Ket k(dim, 0.0);
  k[index] = 1.0;
  return k;
}

inline Ket product_ket(const std::vector<Ket>& locals) {
  Ket out{1.0};
  for (const auto& l : locals) {
    Ket next(out.size() * l.size());
    for (std::size_t i = 0; i < out.size(); ++i)
      for (std::size_t j = 0; j < l.size(); ++j) next[i * l.size() + j] = out[i] * l[j];
    out = next;
  }
  return out;
}

inline Ket ket0() { return {1.0, 0.0}; }
inline Ket ket1() { return {0.0, 1.0}; }
inline Ket ket_plus() { return {kSqrtHalf, kSqrtHalf}; }
inline Ket ket_minus() { return {kSqrtHalf, -kSqrtHalf}; }

inline Ket apply_cnot(const Ket& psi, int control, int target, int n = 3) {
  Ket out(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) out[bit(i, control, n) ? flip(i, target, n) : i] += psi[i];
  return out;
}

inline Ket apply_h(const Ket& psi, int q, int n = 3) {
  Ket out(psi.size(), 0.0);
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double sign = bit(i, q, n) ? -1.0 : 1.0;
    const std::size_t i0 = bit(i, q, n) ? flip(i, q, n) : i;
    out[i0] += kSqrtHalf * psi[i];
    out[flip(i0, q, n)] += sign * kSqrtHalf * psi[i];
  }
  return out;
}

inline Ket apply_cphase(const Ket& psi, int a, int b, double theta, int n = 3) {
  Ket out = psi;
  for (std::size_t i = 0; i < psi.size(); ++i)
    if (bit(i, a, n) && bit(i, b, n)) out[i] *= std::polar(1.0, theta);
  return out;
}

// Eigenvalues of a 2x2 Hermitian matrix in closed form, ascending.
inline std::pair<double, double> eig2(const DenseOperator& m) {
  const double a = m(0, 0).real(), d = m(1, 1).real();
  const double r = std::sqrt((a - d) * (a - d) / 4 + std::norm(m(0, 1)));
  return {(a + d) / 2 - r, (a + d) / 2 + r};
}

}  // namespace oracle

namespace oracle {

// Matrix of a ket map, built column by column from basis kets.
template <class F>
DenseOperator matrix_of(F&& f, std::size_t dim = 8) {
  DenseOperator out(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    const Ket col = f(basis_ket(c, dim));
    for (std::size_t r = 0; r < dim; ++r) out(r, c) = col[r];
  }
  return out;
}

inline DenseOperator cnot3(int control, int target) {
  return matrix_of([&](const Ket& k) { return apply_cnot(k, control, target); });
}

}  // namespace oracle

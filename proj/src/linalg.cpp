#include "gwt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gwt/errors.hpp"

namespace gwt {
namespace {

double off_diagonal_norm(const DenseOperator& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < a.dim(); ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

// Annihilates a(p, q) with J = D * G, where D removes the pivot phase on
// column q and G is the real Givens rotation of the resulting real 2x2 block:
//   J_pp = c, J_pq = s, J_qp = -s e^{-i phi}, J_qq = c e^{-i phi}.
// a <- J^dagger a J, v <- v J.
void rotate(DenseOperator& a, DenseOperator& v, std::size_t p, std::size_t q) {
  const cplx apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const cplx phase = apq / mag;  // e^{i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const cplx jpp = c, jpq = s, jqp = -s * std::conj(phase), jqq = c * std::conj(phase);

  const std::size_t n = a.dim();
  for (std::size_t r = 0; r < n; ++r) {  // columns: a <- a J
    const cplx arp = a(r, p), arq = a(r, q);
    a(r, p) = arp * jpp + arq * jqp;
    a(r, q) = arp * jpq + arq * jqq;
    const cplx vrp = v(r, p), vrq = v(r, q);
    v(r, p) = vrp * jpp + vrq * jqp;
    v(r, q) = vrp * jpq + vrq * jqq;
  }
  for (std::size_t col = 0; col < n; ++col) {  // rows: a <- J^dagger a
    const cplx apc = a(p, col), aqc = a(q, col);
    a(p, col) = std::conj(jpp) * apc + std::conj(jqp) * aqc;
    a(q, col) = std::conj(jpq) * apc + std::conj(jqq) * aqc;
  }
  a(p, p) = app - t * mag;
  a(q, q) = aqq + t * mag;
  a(p, q) = 0.0;
  a(q, p) = 0.0;
}

}  // namespace

EigenDecomposition hermitian_eig(const DenseOperator& m, const JacobiOptions& opts) {
  if (!m.is_finite()) throw ValidationError("hermitian_eig: non-finite entries");
  if (!m.is_hermitian(opts.hermitian_tol)) throw ValidationError("hermitian_eig: matrix is not Hermitian");
  const std::size_t n = m.dim();
  DenseOperator a = m;
  // Symmetrize so rounding in the input cannot leak into the rotations.
  for (std::size_t r = 0; r < n; ++r) {
    a(r, r) = a(r, r).real();
    for (std::size_t c = r + 1; c < n; ++c) {
      const cplx avg = 0.5 * (a(r, c) + std::conj(a(c, r)));
      a(r, c) = avg;
      a(c, r) = std::conj(avg);
    }
  }
  DenseOperator v = DenseOperator::identity(n);
  const double threshold = opts.off_threshold * std::max(1.0, m.frobenius_norm());

  int sweep = 0;
  while (off_diagonal_norm(a) > threshold) {
    if (sweep++ >= opts.max_sweeps) throw NumericalError("hermitian_eig: Jacobi iteration did not converge");
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
  EigenDecomposition out{std::vector<double>(n), DenseOperator(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

DenseOperator expm_hermitian_generator(const DenseOperator& h, double angle) {
  const auto eig = hermitian_eig(h);
  const std::size_t n = h.dim();
  std::vector<cplx> phases(n);
  for (std::size_t k = 0; k < n; ++k) phases[k] = std::exp(cplx(0.0, -angle * eig.values[k]));
  DenseOperator out(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += eig.vectors(r, k) * phases[k] * std::conj(eig.vectors(c, k));
      out(r, c) = s;
    }
  return out;
}

double trace_norm(const DenseOperator& m) {
  if (m.dim() == 0) return 0.0;
  if (m.is_hermitian(1e-14)) {
    double s = 0.0;
    for (double x : hermitian_eig(m).values) s += std::abs(x);
    return s;
  }
  double s = 0.0;
  for (double x : hermitian_eig(m.adjoint() * m).values) s += std::sqrt(std::max(0.0, x));
  return s;
}

double spectral_norm(const DenseOperator& m) {
  if (m.dim() == 0) return 0.0;
  const auto vals = hermitian_eig(m.adjoint() * m).values;
  return std::sqrt(std::max(0.0, vals.back()));
}

}  // namespace gwt

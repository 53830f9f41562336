#include "gwt/states.hpp"

#include <cmath>
#include <numeric>

#include "gwt/errors.hpp"
#include "gwt/linalg.hpp"

namespace gwt {
namespace {

const DenseOperator& pauli_matrix(int k) {
  static const DenseOperator kMats[4] = {
      DenseOperator(2, {1.0, 0.0, 0.0, 1.0}),
      DenseOperator(2, {0.0, 1.0, 1.0, 0.0}),
      DenseOperator(2, {0.0, cplx(0, -1), cplx(0, 1), 0.0}),
      DenseOperator(2, {1.0, 0.0, 0.0, -1.0}),
  };
  return kMats[k];
}

std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

}  // namespace

DensityState::DensityState(DenseOperator matrix, std::vector<std::size_t> dims, std::string label,
                           std::vector<std::string> names)
    : matrix_(std::move(matrix)), dims_(std::move(dims)), label_(std::move(label)), names_(std::move(names)) {
  if (dims_.empty()) throw ValidationError("state must have at least one subsystem");
  std::size_t total = 1;
  for (auto d : dims_) {
    if (d < 1) throw ValidationError("subsystem dimension must be positive");
    total *= d;
  }
  if (total != matrix_.dim()) throw ValidationError("state dims do not multiply to the matrix dimension");
  if (names_.empty()) names_ = default_names(dims_.size());
  if (names_.size() != dims_.size()) throw ValidationError("state names do not match dims");
  if (!matrix_.is_finite()) throw ValidationError("state has non-finite entries");

  const StateTolerances tol;
  if (!matrix_.is_hermitian(tol.hermitian)) throw ValidationError("state '" + label_ + "' is not Hermitian");
  const double tr = matrix_.trace().real();
  if (std::abs(matrix_.trace() - 1.0) > tol.trace)
    throw ValidationError("state '" + label_ + "' has trace " + std::to_string(tr));
  for (std::size_t r = 0; r < matrix_.dim(); ++r) {
    matrix_(r, r) = matrix_(r, r).real();
    for (std::size_t c = r + 1; c < matrix_.dim(); ++c) {
      const cplx avg = 0.5 * (matrix_(r, c) + std::conj(matrix_(c, r)));
      matrix_(r, c) = avg;
      matrix_(c, r) = std::conj(avg);
    }
  }
  const double min_eig = hermitian_eig(matrix_).values.front();
  if (min_eig < tol.min_eigenvalue)
    throw ValidationError("state '" + label_ + "' is not positive semidefinite (min eigenvalue " +
                          std::to_string(min_eig) + ")");
}

DensityState DensityState::from_ket(std::span<const cplx> ket, std::vector<std::size_t> dims, std::string label,
                                    std::vector<std::string> names) {
  double nrm = 0.0;
  for (const auto& x : ket) nrm += std::norm(x);
  if (std::abs(nrm - 1.0) > 1e-12) throw ValidationError("ket is not normalized");
  return DensityState(DenseOperator::outer(ket), std::move(dims), std::move(label), std::move(names));
}

DensityState DensityState::maximally_mixed(std::vector<std::size_t> dims, std::vector<std::string> names) {
  std::size_t total = 1;
  for (auto d : dims) total *= d;
  DenseOperator m = DenseOperator::identity(total);
  m *= 1.0 / static_cast<double>(total);
  return DensityState(std::move(m), std::move(dims), "maximally_mixed", std::move(names));
}

double DensityState::purity() const { return trace_product(matrix_, matrix_).real(); }

cplx DensityState::expectation(const DenseOperator& op) const { return trace_product(matrix_, op); }

DensityState DensityState::with_label(std::string label) const {
  DensityState out = *this;
  out.label_ = std::move(label);
  return out;
}

DensityState product_state(std::span<const DensityState> locals) {
  if (locals.empty()) throw ValidationError("product_state: no factors");
  DenseOperator m = locals[0].matrix();
  std::vector<std::size_t> dims = locals[0].dims();
  std::vector<std::string> names = locals[0].names();
  std::string label = locals[0].label();
  for (std::size_t i = 1; i < locals.size(); ++i) {
    m = kron(m, locals[i].matrix());
    dims.insert(dims.end(), locals[i].dims().begin(), locals[i].dims().end());
    names.insert(names.end(), locals[i].names().begin(), locals[i].names().end());
    label += "*" + locals[i].label();
  }
  return DensityState(std::move(m), std::move(dims), std::move(label), std::move(names));
}

DenseOperator partial_trace_matrix(const DenseOperator& m, std::span<const std::size_t> dims,
                                   const std::set<std::size_t>& keep) {
  if (keep.empty()) throw ValidationError("partial_trace: keep set is empty");
  for (auto k : keep)
    if (k >= dims.size()) throw ValidationError("partial_trace: subsystem index out of range");
  const auto strides = strides_of(dims);
  std::size_t kept_dim = 1;
  for (auto k : keep) kept_dim *= dims[k];

  // index -> (kept index, traced remainder)
  const std::size_t n = m.dim();
  std::vector<std::size_t> kept_idx(n), rest_idx(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t kidx = 0, rest = 0;
    for (std::size_t s = 0; s < dims.size(); ++s) {
      const std::size_t digit = (i / strides[s]) % dims[s];
      if (keep.count(s))
        kidx = kidx * dims[s] + digit;
      else
        rest = rest * dims[s] + digit;
    }
    kept_idx[i] = kidx;
    rest_idx[i] = rest;
  }
  DenseOperator out(kept_dim);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (rest_idx[r] == rest_idx[c]) out(kept_idx[r], kept_idx[c]) += m(r, c);
  return out;
}

DensityState partial_trace(const DensityState& s, const std::set<std::size_t>& keep) {
  DenseOperator reduced = partial_trace_matrix(s.matrix(), s.dims(), keep);
  std::vector<std::size_t> dims;
  std::vector<std::string> names;
  for (auto k : keep) {
    dims.push_back(s.dims()[k]);
    names.push_back(s.names()[k]);
  }
  return DensityState(std::move(reduced), std::move(dims), s.label(), std::move(names));
}

DensityState evolve(const DensityState& s, const DenseOperator& u) {
  if (u.dim() != s.dim()) throw ValidationError("evolve: unitary dimension does not match state");
  return DensityState(conjugate(u, s.matrix()), s.dims(), s.label(), s.names());
}

DensityState qubit_state(char which, std::string name) {
  const double h = 1.0 / std::sqrt(2.0);
  std::vector<cplx> ket;
  switch (which) {
    case '0': ket = {1.0, 0.0}; break;
    case '1': ket = {0.0, 1.0}; break;
    case '+': ket = {h, h}; break;
    case '-': ket = {h, -h}; break;
    default: throw ValidationError(std::string("unknown qubit state '") + which + "'");
  }
  std::vector<std::string> names;
  if (!name.empty()) names.push_back(name);
  return DensityState::from_ket(ket, {2}, std::string("|") + which + ">", std::move(names));
}

double BlochDecomposition::max_residual() const {
  double m = 0.0;
  for (const auto& [k, v] : residuals) m = std::max(m, std::abs(v));
  return m;
}

BlochDecomposition bloch_decompose_AM(const DensityState& s) {
  if (s.dims() != std::vector<std::size_t>{2, 2})
    throw ValidationError("bloch_decompose_AM requires a two-qubit state");
  auto coeff = [&](int a, int m) { return s.expectation(kron(pauli_matrix(a), pauli_matrix(m))).real(); };
  BlochDecomposition out;
  for (int k = 0; k < 3; ++k) {
    out.bloch.r_A[k] = coeff(k + 1, 0);
    out.bloch.t_A[k] = coeff(k + 1, 3);
  }
  out.bloch.s_z = coeff(0, 3);
  static constexpr char kLetter[] = {'I', 'X', 'Y', 'Z'};
  for (int a = 0; a < 4; ++a)
    for (int m = 1; m <= 2; ++m) out.residuals[std::string{kLetter[a], kLetter[m]}] = coeff(a, m);
  return out;
}

DenseOperator reconstruct_bloch_AM(const BlochAM& b) {
  DenseOperator m = DenseOperator::identity(4);
  m += b.s_z * kron(pauli_matrix(0), pauli_matrix(3));
  for (int k = 0; k < 3; ++k) {
    m += b.r_A[k] * kron(pauli_matrix(k + 1), pauli_matrix(0));
    m += b.t_A[k] * kron(pauli_matrix(k + 1), pauli_matrix(3));
  }
  m *= 0.25;
  return m;
}

double bloch_AM_min_eigenvalue(const BlochAM& b) {
  double lo = 1.0;
  for (const double m : {1.0, -1.0}) {
    double v2 = 0.0;
    for (int k = 0; k < 3; ++k) v2 += (b.r_A[k] + m * b.t_A[k]) * (b.r_A[k] + m * b.t_A[k]);
    lo = std::min(lo, (1.0 + m * b.s_z - std::sqrt(v2)) / 4.0);
  }
  return lo;
}

}  // namespace gwt

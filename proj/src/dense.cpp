#include "gwt/dense.hpp"

#include <cmath>

#include "gwt/errors.hpp"

namespace gwt {

DenseOperator::DenseOperator(std::size_t dim) : dim_(dim), data_(dim * dim) {}

DenseOperator::DenseOperator(std::size_t dim, std::vector<cplx> entries)
    : dim_(dim), data_(std::move(entries)) {
  if (data_.size() != dim_ * dim_) throw ValidationError("matrix entry count does not match dimension");
}

DenseOperator DenseOperator::identity(std::size_t dim) {
  DenseOperator m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

DenseOperator DenseOperator::diagonal(std::span<const cplx> diag) {
  DenseOperator m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

DenseOperator DenseOperator::outer(std::span<const cplx> ket) {
  DenseOperator m(ket.size());
  for (std::size_t r = 0; r < ket.size(); ++r)
    for (std::size_t c = 0; c < ket.size(); ++c) m(r, c) = ket[r] * std::conj(ket[c]);
  return m;
}

DenseOperator DenseOperator::adjoint() const {
  DenseOperator out(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

DenseOperator DenseOperator::transpose() const {
  DenseOperator out(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

cplx DenseOperator::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

DenseOperator& DenseOperator::operator+=(const DenseOperator& o) {
  if (o.dim_ != dim_) throw ValidationError("matrix dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

DenseOperator& DenseOperator::operator-=(const DenseOperator& o) {
  if (o.dim_ != dim_) throw ValidationError("matrix dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

DenseOperator& DenseOperator::operator*=(cplx s) {
  for (auto& x : data_) x *= s;
  return *this;
}

double DenseOperator::max_abs() const {
  double m = 0.0;
  for (const auto& x : data_) m = std::max(m, std::abs(x));
  return m;
}

double DenseOperator::frobenius_norm() const {
  double s = 0.0;
  for (const auto& x : data_) s += std::norm(x);
  return std::sqrt(s);
}

bool DenseOperator::is_finite() const {
  for (const auto& x : data_)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
  return true;
}

bool DenseOperator::is_hermitian(double tol) const {
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = r; c < dim_; ++c)
      if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
  return true;
}

bool DenseOperator::is_unitary(double tol) const {
  const DenseOperator p = adjoint() * (*this);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c)
      if (std::abs(p(r, c) - (r == c ? 1.0 : 0.0)) > tol) return false;
  return true;
}

DenseOperator operator+(DenseOperator a, const DenseOperator& b) { return a += b; }
DenseOperator operator-(DenseOperator a, const DenseOperator& b) { return a -= b; }
DenseOperator operator*(cplx s, DenseOperator a) { return a *= s; }

DenseOperator operator*(const DenseOperator& a, const DenseOperator& b) {
  if (a.dim() != b.dim()) throw ValidationError("matrix dimension mismatch");
  const std::size_t n = a.dim();
  DenseOperator out(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) {
      const cplx ark = a(r, k);
      if (ark == 0.0) continue;
      for (std::size_t c = 0; c < n; ++c) out(r, c) += ark * b(k, c);
    }
  return out;
}

std::vector<cplx> operator*(const DenseOperator& a, std::span<const cplx> v) {
  if (a.dim() != v.size()) throw ValidationError("matrix-vector dimension mismatch");
  std::vector<cplx> out(v.size());
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < a.dim(); ++c) out[r] += a(r, c) * v[c];
  return out;
}

DenseOperator kron(const DenseOperator& a, const DenseOperator& b) {
  const std::size_t na = a.dim(), nb = b.dim();
  DenseOperator out(na * nb);
  for (std::size_t ra = 0; ra < na; ++ra)
    for (std::size_t ca = 0; ca < na; ++ca) {
      const cplx x = a(ra, ca);
      if (x == 0.0) continue;
      for (std::size_t rb = 0; rb < nb; ++rb)
        for (std::size_t cb = 0; cb < nb; ++cb) out(ra * nb + rb, ca * nb + cb) = x * b(rb, cb);
    }
  return out;
}

DenseOperator commutator(const DenseOperator& a, const DenseOperator& b) { return a * b - b * a; }

DenseOperator conjugate(const DenseOperator& u, const DenseOperator& rho) { return u * rho * u.adjoint(); }

cplx trace_product(const DenseOperator& a, const DenseOperator& b) {
  if (a.dim() != b.dim()) throw ValidationError("matrix dimension mismatch");
  cplx t = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t k = 0; k < a.dim(); ++k) t += a(r, k) * b(k, r);
  return t;
}

}  // namespace gwt

namespace gwt {

std::vector<std::size_t> strides_of(std::span<const std::size_t> dims) {
  std::vector<std::size_t> strides(dims.size(), 1);
  std::size_t acc = 1;
  for (std::size_t i = dims.size(); i-- > 0;) {
    strides[i] = acc;
    acc *= dims[i];
  }
  return strides;
}

DenseOperator embed(const DenseOperator& local, std::span<const std::size_t> positions,
                    std::span<const std::size_t> dims) {
  std::size_t local_dim = 1, total = 1;
  for (auto p : positions) {
    if (p >= dims.size()) throw ValidationError("embed: factor index out of range");
    local_dim *= dims[p];
  }
  for (auto d : dims) total *= d;
  if (local.dim() != local_dim) throw ValidationError("embed: local operator dimension does not match factors");
  if (total > kDenseDimCap) throw ValidationError("embed: total dimension exceeds cap");

  const auto strides = strides_of(dims);
  std::vector<bool> acted(dims.size(), false);
  for (auto p : positions) {
    if (acted[p]) throw ValidationError("embed: repeated factor index");
    acted[p] = true;
  }
  // Split a full index into (local index, rest with acted digits zeroed).
  auto split = [&](std::size_t idx) {
    std::size_t loc = 0, rest = idx;
    for (auto p : positions) {
      const std::size_t digit = (idx / strides[p]) % dims[p];
      loc = loc * dims[p] + digit;
      rest -= digit * strides[p];
    }
    return std::pair{loc, rest};
  };
  DenseOperator out(total);
  for (std::size_t r = 0; r < total; ++r) {
    const auto [lr, rest_r] = split(r);
    for (std::size_t c = 0; c < total; ++c) {
      const auto [lc, rest_c] = split(c);
      if (rest_r == rest_c) out(r, c) = local(lr, lc);
    }
  }
  return out;
}

}  // namespace gwt

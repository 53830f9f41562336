#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace gwt {

using cplx = std::complex<double>;

/// Largest total dimension accepted for dense conversion (2^12).
inline constexpr std::size_t kDenseDimCap = std::size_t{1} << 12;

/**
 * Square complex matrix stored row-major.
 *
 * Value type; all arithmetic returns new matrices.
 */
class DenseOperator {
 public:
  DenseOperator() = default;
  explicit DenseOperator(std::size_t dim);
  DenseOperator(std::size_t dim, std::vector<cplx> entries);

  static DenseOperator identity(std::size_t dim);
  static DenseOperator zero(std::size_t dim) { return DenseOperator(dim); }
  static DenseOperator diagonal(std::span<const cplx> diag);
  /// |ket><ket|
  static DenseOperator outer(std::span<const cplx> ket);

  std::size_t dim() const { return dim_; }
  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
  const std::vector<cplx>& entries() const { return data_; }

  DenseOperator adjoint() const;
  DenseOperator transpose() const;
  cplx trace() const;

  DenseOperator& operator+=(const DenseOperator& o);
  DenseOperator& operator-=(const DenseOperator& o);
  DenseOperator& operator*=(cplx s);

  /// Largest entry modulus.
  double max_abs() const;
  double frobenius_norm() const;
  bool is_finite() const;
  bool is_hermitian(double tol = 1e-12) const;
  bool is_unitary(double tol = 1e-10) const;

 private:
  std::size_t dim_ = 0;
  std::vector<cplx> data_;
};

DenseOperator operator+(DenseOperator a, const DenseOperator& b);
DenseOperator operator-(DenseOperator a, const DenseOperator& b);
DenseOperator operator*(const DenseOperator& a, const DenseOperator& b);
DenseOperator operator*(cplx s, DenseOperator a);
std::vector<cplx> operator*(const DenseOperator& a, std::span<const cplx> v);

DenseOperator kron(const DenseOperator& a, const DenseOperator& b);
DenseOperator commutator(const DenseOperator& a, const DenseOperator& b);

/// U rho U^dagger
DenseOperator conjugate(const DenseOperator& u, const DenseOperator& rho);

/// Tr(a b) without forming the product.
cplx trace_product(const DenseOperator& a, const DenseOperator& b);

}  // namespace gwt

namespace gwt {

/// Flat index <-> digits for a mixed-radix tensor layout (first factor most significant).
std::vector<std::size_t> strides_of(std::span<const std::size_t> dims);

/**
 * Lifts an operator on the listed factors to the full tensor space.
 *
 * `local` is ordered by `positions` (positions[0] most significant) and acts
 * as the identity on every other factor.
 */
DenseOperator embed(const DenseOperator& local, std::span<const std::size_t> positions,
                    std::span<const std::size_t> dims);

}  // namespace gwt

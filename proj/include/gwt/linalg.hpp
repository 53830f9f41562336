#pragma once

#include <vector>

#include "gwt/dense.hpp"

namespace gwt {

struct EigenDecomposition {
  std::vector<double> values;  ///< ascending
  DenseOperator vectors;       ///< column k is the eigenvector of values[k]
};

struct JacobiOptions {
  double off_threshold = 1e-13;  ///< off-diagonal Frobenius norm, relative to max(1, |m|_F)
  int max_sweeps = 100;
  double hermitian_tol = 1e-12;
};

/**
 * Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
 * rotations.
 *
 * Each rotation first removes the phase of the pivot a_pq and then applies a
 * real Givens rotation, so the accumulated eigenvector matrix stays unitary to
 * rounding. Throws ValidationError for non-Hermitian input and NumericalError
 * if the sweep cap is reached.
 */
EigenDecomposition hermitian_eig(const DenseOperator& m, const JacobiOptions& opts = {});

/// exp(-i * angle * h) for Hermitian h.
DenseOperator expm_hermitian_generator(const DenseOperator& h, double angle);

/// Sum of singular values.
double trace_norm(const DenseOperator& m);

/// Largest singular value.
double spectral_norm(const DenseOperator& m);

}  // namespace gwt

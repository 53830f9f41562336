#pragma once

#include <array>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "gwt/dense.hpp"

namespace gwt {

struct StateTolerances {
  double hermitian = 1e-12;
  double trace = 1e-12;
  double min_eigenvalue = -1e-10;
};

/**
 * Validated density matrix over an ordered list of subsystems.
 *
 * Construction fails with ValidationError unless the matrix is Hermitian,
 * has unit trace and no eigenvalue below -1e-10. The stored matrix is
 * exactly Hermitian.
 */
class DensityState {
 public:
  DensityState(DenseOperator matrix, std::vector<std::size_t> dims, std::string label = {},
               std::vector<std::string> names = {});

  static DensityState from_ket(std::span<const cplx> ket, std::vector<std::size_t> dims, std::string label = {},
                               std::vector<std::string> names = {});
  static DensityState maximally_mixed(std::vector<std::size_t> dims, std::vector<std::string> names = {});

  const DenseOperator& matrix() const { return matrix_; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::string& label() const { return label_; }
  /// Per-subsystem names; defaults to "0", "1", ...
  const std::vector<std::string>& names() const { return names_; }
  std::size_t dim() const { return matrix_.dim(); }
  std::size_t num_subsystems() const { return dims_.size(); }

  double purity() const;
  /// Tr(rho * op)
  cplx expectation(const DenseOperator& op) const;

  DensityState with_label(std::string label) const;

 private:
  DenseOperator matrix_;
  std::vector<std::size_t> dims_;
  std::string label_;
  std::vector<std::string> names_;
};

/// Tensor product; dims and names are concatenated.
DensityState product_state(std::span<const DensityState> locals);

/// Reduced state on `keep` (indices into dims, kept in ascending order).
DensityState partial_trace(const DensityState& s, const std::set<std::size_t>& keep);

/// Reduced matrix without state validation; used where the input is a
/// difference of states.
DenseOperator partial_trace_matrix(const DenseOperator& m, std::span<const std::size_t> dims,
                                   const std::set<std::size_t>& keep);

/// U rho U^dagger with a full-space unitary.
DensityState evolve(const DensityState& s, const DenseOperator& u);

/// Single-qubit |+>, |->, |0>, |1> helpers.
DensityState qubit_state(char which, std::string name = {});

/// Coefficients of a two-qubit A (x) M state in the Z_M-diagonal family.
struct BlochAM {
  std::array<double, 3> r_A{};
  double s_z = 0.0;
  std::array<double, 3> t_A{};
};

struct BlochDecomposition {
  BlochAM bloch;
  /// Components outside the family, keyed by Pauli text ("IX", "XY", ...).
  std::map<std::string, double> residuals;
  double max_residual() const;
};

/**
 * Decomposes a two-qubit A (x) M state as
 * (I + r_A.sigma(x)I + s_z I(x)Z + t_A.sigma(x)Z) / 4.
 *
 * Throws ValidationError unless dims == (2, 2).
 */
BlochDecomposition bloch_decompose_AM(const DensityState& s);

/// Inverse of bloch_decompose_AM; not validated (may be non-positive).
DenseOperator reconstruct_bloch_AM(const BlochAM& b);

/**
 * Smallest eigenvalue of reconstruct_bloch_AM(b) in closed form. The matrix is
 * block-diagonal in the Z basis of the second qubit, with blocks
 * ((1 +- s_z) I + (r_A +- t_A).sigma) / 4.
 */
double bloch_AM_min_eigenvalue(const BlochAM& b);

}  // namespace gwt

#pragma once

#include <cstdint>
#include <vector>

#include "gwt/dense.hpp"

namespace gwt {

/**
 * Counter-based generator keyed by (seed, stream).
 *
 * Output k is a SplitMix64 finalizer applied to key + k * golden-gamma, so
 * every (seed, stream) pair names an independent reproducible sequence and
 * sweep workers never share generator state.
 */
class StreamRng {
 public:
  StreamRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  /// Standard normal (Box-Muller, no cached pair).
  double normal();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Haar-random unitary (QR of a complex Ginibre matrix with phase fix).
DenseOperator random_unitary(std::size_t dim, StreamRng& rng);

/// Haar-random pure state vector.
std::vector<cplx> random_ket(std::size_t dim, StreamRng& rng);

/// Random full-rank mixed matrix G G^dagger / Tr(G G^dagger).
DenseOperator random_density_matrix(std::size_t dim, StreamRng& rng);

/// Random Hermitian matrix with Gaussian entries.
DenseOperator random_hermitian(std::size_t dim, StreamRng& rng);

}  // namespace gwt

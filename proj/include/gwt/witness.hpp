#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gwt/dense.hpp"
#include "gwt/states.hpp"

namespace gwt {

/// Negativity at or below this counts as no entanglement.
inline constexpr double kEntanglementTol = 1e-9;
/// Trace distance at or above 1 - kDistinguishTol counts as single-shot distinguishable.
inline constexpr double kDistinguishTol = 1e-9;
inline constexpr double kNoSignallingTol = 1e-12;

/// Subsystem names on each side of a cut; together they must cover the state.
struct Bipartition {
  std::vector<std::string> left;
  std::vector<std::string> right;
};

struct EntanglementVerdict {
  double negativity = 0.0;
  bool ppt = true;
  Bipartition bipartition;
  double threshold = kEntanglementTol;
};

/// Partial transpose over the listed subsystem indices.
DenseOperator partial_transpose(const DenseOperator& m, std::span<const std::size_t> dims,
                                std::span<const std::size_t> transposed);

/// (|rho^{T_right}|_1 - 1) / 2. PPT is exact for separability on 2x2 and 2x3 cuts.
EntanglementVerdict negativity(const DensityState& s, const Bipartition& cut);

/// 1/2 |a - b|_1
double trace_distance(const DensityState& a, const DensityState& b);

/// trace_distance >= 1 - kDistinguishTol
bool single_shot_distinguishable(const DensityState& a, const DensityState& b);

struct SeparabilitySweepReport {
  std::uint64_t accepted = 0;
  std::uint64_t attempts = 0;
  double acceptance_rate = 0.0;
  double max_negativity = 0.0;
  std::uint64_t ppt_violations = 0;
  std::vector<std::uint64_t> violating_attempts;  ///< attempt indices, ascending

  bool pass() const { return ppt_violations == 0; }
};

/**
 * Draws Z_M-diagonal-family coefficients uniformly from [-1, 1]^7,
 * keeps the positive reconstructions and checks each for PPT across A:M.
 *
 * Attempt k uses the RNG stream (seed, k); the sweep stops after `samples`
 * accepted states, so the report does not depend on `workers`.
 */
SeparabilitySweepReport bloch_separability_sweep(std::uint64_t samples, std::uint64_t seed, unsigned workers = 1);

struct NoSignallingResult {
  bool ok = true;
  /// other subsystem -> trace distance; "rest" is the joint complement when it has several factors
  std::map<std::string, double> distances;
  double max_distance = 0.0;
};

/**
 * Applies `local_unitary` to subsystem `acted` and compares every
 * other single-subsystem reduced state before and after.
 */
NoSignallingResult no_signalling_audit(const DensityState& s, const DenseOperator& local_unitary, std::size_t acted);

}  // namespace gwt

#pragma once

#include <set>
#include <string>
#include <vector>

#include "gwt/dense.hpp"
#include "gwt/layout.hpp"
#include "gwt/pauli.hpp"

namespace gwt {

struct DescriptorComponent {
  std::string label;  ///< "x", "y" or "z"
  PauliOp op;
};

/**
 * Heisenberg-picture descriptors of one subsystem.
 *
 * A qubit subsystem carries (x, y, z); a classical subsystem carries only z.
 * Components are state-independent operators on the full layout.
 */
struct DescriptorSet {
  std::string subsystem;
  std::vector<DescriptorComponent> components;
  std::string timestamp = "t0";

  const PauliOp& component(const std::string& label) const;
};

/// Pauli-basis coefficients below this are dropped after conjugation.
inline constexpr double kDescriptorDropTol = 1e-12;

/**
 * Quantum sites get (sigma_x, sigma_y, sigma_z) padded with identities.
 * Classical sites get one component: sigma_z for qubits, and
 * diag(d-1, d-3, ..., 1-d) expanded in clock letters for d > 2.
 * Non-qubit sites must be classical.
 */
std::vector<DescriptorSet> init_descriptors(const LayoutPtr& layout, const std::set<std::string>& classical_sites);

/// q -> U^dagger q U for every component, re-expanded in the Pauli basis.
std::vector<DescriptorSet> evolve_descriptors(const std::vector<DescriptorSet>& sets, const DenseOperator& u,
                                              const std::string& timestamp = {});

std::set<std::string> support(const DescriptorSet& d);

struct MicrocausalityVerdict {
  bool ok = true;
  double max_violation = 0.0;
  std::string worst_pair;  ///< "A.x|B.z" for the largest violation, empty when ok
};

/// Exact (sparse) check that components of distinct subsystems commute.
MicrocausalityVerdict microcausality_check(const std::vector<DescriptorSet>& sets);

struct LocalityAuditResult {
  std::string subsystem;
  std::set<std::string> step_sites;
  bool ok = true;
  double max_change = 0.0;
};

/**
 * True iff every component of a subsystem outside `step_sites` is
 * exactly unchanged (empty difference operator).
 */
LocalityAuditResult locality_audit(const DescriptorSet& before, const DescriptorSet& after,
                                   const std::set<std::string>& step_sites);

}  // namespace gwt

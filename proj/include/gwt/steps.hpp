#pragma once

#include <string>
#include <variant>
#include <vector>

#include "gwt/dense.hpp"
#include "gwt/layout.hpp"
#include "gwt/pauli.hpp"

namespace gwt {

enum class GateKind { CNOT, CZ, H, RX, RY, RZ, CPHASE };

std::string gate_name(GateKind kind);
GateKind gate_from_name(const std::string& name);
std::size_t gate_arity(GateKind kind);
bool gate_has_angle(GateKind kind);

struct NamedGate {
  GateKind kind;
  double angle = 0.0;
};

/// exp(-i * angle * hamiltonian); the hamiltonian lives on the full layout.
struct GeneratorStep {
  PauliOp hamiltonian;
  double angle = 0.0;
};

/**
 * One interaction step on one or two sites.
 *
 * Two-site named gates read acts_on as (control, target). RX/RY/RZ(t) are
 * exp(-i t sigma / 2); CPHASE(t) is diag(1, 1, 1, e^{it}).
 */
struct StepSpec {
  std::vector<std::string> acts_on;
  std::variant<NamedGate, GeneratorStep> generator;

  std::string describe() const;
  bool touches(const std::string& site) const;
};

StepSpec gate_step(GateKind kind, std::vector<std::string> sites, double angle = 0.0);
StepSpec generator_step(std::vector<std::string> sites, PauliOp hamiltonian, double angle);

/// Checks arity, site existence and generator support; throws ValidationError.
void validate_step(const StepSpec& step, const SiteLayout& layout);

/// Unitary on the full layout, identity off acts_on.
DenseOperator step_unitary(const StepSpec& step, const LayoutPtr& layout);

struct ClassicalCompatibility {
  bool compatible = true;
  /// Sum over spectral projectors P_k of Z_M of the spectral norm of [U, P_k].
  double violation = 0.0;
};

/**
 * Whether a step engages only the mediator's classical observable:
 * its unitary must commute with every spectral projector of Z_M (within
 * 1e-12 entrywise), i.e. be block-diagonal in the mediator's Z basis.
 * Steps that do not touch the mediator are compatible.
 */
ClassicalCompatibility classical_compatibility(const StepSpec& step, const LayoutPtr& layout,
                                               const std::string& mediator_site);

/// Same test for an arbitrary full-layout unitary.
ClassicalCompatibility classical_compatibility(const DenseOperator& u, const SiteLayout& layout,
                                               const std::string& mediator_site);

/// Largest entry of u outside the blocks diagonal in the mediator's Z basis.
double off_block_norm(const DenseOperator& u, const SiteLayout& layout, const std::string& mediator_site);

}  // namespace gwt

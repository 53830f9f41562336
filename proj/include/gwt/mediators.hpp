#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "gwt/protocol_spec.hpp"

namespace gwt {

enum class MediatorKind { ClassicalLocal, QuantumLocal, NonlocalDirect };

std::string kind_name(MediatorKind kind);
MediatorKind kind_from_name(const std::string& name);

struct MediatorFamily {
  MediatorKind kind;
  std::string mediator_site = "M";
};

struct FamilyCheck {
  bool ok = true;
  std::string reason;
};

/**
 * Whether a protocol belongs to a family.
 *
 * classical_local: every mediator step is classically compatible and no
 * step acts on both probes. quantum_local: no step acts on both probes.
 * nonlocal_direct: anything.
 */
FamilyCheck check_family(const ProtocolSpec& spec, const MediatorFamily& family);

/// A, M, B qubits; |+-> on A, |0> on M and B; CNOT(A->M), then CNOT(M->B), CNOT(B->M).
ProtocolSpec build_cnot_relay();

/**
 * Three-qubit phase relay standing in for the gravitational coupling.
 *
 * Initializations |+>|0>|+> and |+>|0>|->. Stage 1: CNOT(A->M). Stage 2:
 * phase e^{i phi_{mb}} on M, B basis states. Stage 3: CNOT(A->M) returns
 * the mediator to |0>. Phases are ordered (phi00, phi01, phi10, phi11).
 */
ProtocolSpec build_bmv_phase(const std::array<double, 4>& phases);

/// phi00 + phi11 - phi01 - phi10 wrapped to (-pi, pi].
double bmv_phase_combination(const std::array<double, 4>& phases);

/**
 * Direct A-B coupling with a classical mediator.
 *
 * Initializations |000> and |100>; M is touched only by CPHASE steps. The
 * direct stage applies H on A then CNOT(A->B); pass include_direct = false
 * to drop it.
 */
ProtocolSpec build_nonlocal_demo(bool include_direct = true);

/**
 * Random classical-local protocol.
 *
 * n_steps stages alternate A+M and M+B. Each holds a random rotation of the
 * probe followed by exp(-i theta P (x) f(Z_M)) with P a random probe Pauli,
 * f in {I, Z_M} and theta uniform in [0, 2 pi). Initializations are |+->
 * on A with random pure states on M and B drawn from the same stream.
 */
ProtocolSpec sample_classical_local(std::uint64_t seed, std::size_t n_steps, std::uint64_t stream = 0);

/// Like sample_classical_local but couplings use any mediator Pauli and M gets random rotations.
ProtocolSpec sample_quantum_local(std::uint64_t seed, std::size_t n_steps, std::uint64_t stream = 0);

/// Classical-local couplings plus one direct A-B stage at a random position.
ProtocolSpec sample_nonlocal_direct(std::uint64_t seed, std::size_t n_steps, std::uint64_t stream = 0);

ProtocolSpec sample_family(MediatorKind kind, std::uint64_t seed, std::size_t n_steps, std::uint64_t stream);

}  // namespace gwt

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gwt/descriptors.hpp"
#include "gwt/protocol_spec.hpp"
#include "gwt/witness.hpp"

namespace gwt {

/// Picture-consistency tolerance between Heisenberg and Schroedinger expectations.
inline constexpr double kPictureTol = 1e-10;

/// Audit results for one step.
struct StepAudit {
  std::size_t stage = 0;
  std::size_t index = 0;  ///< position inside the stage
  std::string description;
  std::vector<std::string> acts_on;
  bool touches_mediator = false;
  ClassicalCompatibility classical;
  /// For each probe the step touches, every subsystem outside {probe, mediator}.
  std::vector<LocalityAuditResult> locality;
};

/// Snapshot at a stage boundary. records[0] is t0.
struct StageRecord {
  std::string stage_label;  ///< "init" for t0
  std::string timestamp;    ///< "t0", "t1", ...
  std::vector<std::string> sites;
  DensityState plus;
  DensityState minus;
  /// Shared by both initializations: descriptors are state-independent.
  std::vector<DescriptorSet> descriptors;
  /// Subsystems outside the declared sites, across the whole stage.
  std::vector<LocalityAuditResult> stage_locality;
  MicrocausalityVerdict microcausality;
  double picture_error = 0.0;
};

struct ProtocolTrace {
  ProtocolSpec spec;
  std::vector<StageRecord> records;
  std::vector<StepAudit> steps;
  DenseOperator total_unitary;
  double max_picture_error = 0.0;

  const StageRecord& final_record() const { return records.back(); }
  /// Every step locality audit and every stage locality audit passed.
  bool locality_ok() const;
  /// Every step touching the mediator is classically compatible.
  bool classical_ok() const;
  bool microcausality_ok() const;
};

/**
 * Evolves both initializations through every stage and records
 * states, descriptors and audits at each stage boundary.
 *
 * Throws ValidationError if the spec is invalid and NumericalError if the
 * accumulated evolution stops being unitary, an evolved state breaks the
 * density-matrix invariants, or the two pictures disagree by more than
 * kPictureTol.
 */
ProtocolTrace run(const ProtocolSpec& spec);

/// A:B reduction (mediator traced out) of a full three-site state.
DensityState probe_state(const ProtocolSpec& spec, const DensityState& full);
/// Mediator-only reduction.
DensityState mediator_state(const ProtocolSpec& spec, const DensityState& full);

struct TaskCheck {
  bool ok = false;
  double probe_distance = 0.0;  ///< trace distance of the final A:B states
  bool distinguishable = false;
  EntanglementVerdict plus;
  EntanglementVerdict minus;
};

/// Final A:B states single-shot distinguishable and both entangled.
TaskCheck task_te_check(const ProtocolTrace& trace);

struct FactorizationAudit {
  bool ok = false;
  std::string reason;
};

/**
 * The declared stages follow the mediated pattern: every stage stays
 * inside {probe, mediator} for a single probe, and a stage on exactly
 * {A, M} is followed later by one on exactly {M, B}.
 */
FactorizationAudit factorization_audit(const ProtocolSpec& spec);

struct BoundaryAnalysis {
  std::size_t record = 0;  ///< index into ProtocolTrace::records
  std::string timestamp;
  double mediator_distance = 0.0;  ///< trace distance of rho_M^+ vs rho_M^-
  double joint_distance = 0.0;     ///< trace distance of the A+M states
  bool mediator_distinguishable = false;
  bool joint_distinguishable = false;
};

/**
 * Proxies for the mediator variables at t1: (i) reduced mediator states,
 * (ii) the joint A+M states, (iii) whether any step engages a second
 * mediator variable. Suppressed when the factorization audit fails.
 */
struct MediatorAnalysis {
  bool suppressed = false;
  std::string note;
  std::vector<BoundaryAnalysis> boundaries;  ///< end of every A+M stage; front() is t1
  bool non_classical_usage = false;
};

MediatorAnalysis mediator_variable_analysis(const ProtocolTrace& trace);

enum class FinalVerdict { WitnessFiresNonclassical, ClassicalConsistent, WitnessInvalidNonlocal };

std::string verdict_name(FinalVerdict v);

struct WitnessReport {
  TaskCheck task;
  FactorizationAudit factorization;
  bool locality_ok = true;
  bool classical_ok = true;
  bool microcausality_ok = true;
  double max_picture_error = 0.0;
  double mediator_purity_plus = 1.0;  ///< at the final boundary
  double mediator_purity_minus = 1.0;
  MediatorAnalysis mediator;
  FinalVerdict final_verdict = FinalVerdict::ClassicalConsistent;
};

WitnessReport verdict(const ProtocolTrace& trace, const TaskCheck& task, const FactorizationAudit& factorization,
                      const MediatorAnalysis& mediator);

/// run + every audit + verdict.
struct Evaluation {
  ProtocolTrace trace;
  WitnessReport report;
};
Evaluation evaluate(const ProtocolSpec& spec);

}  // namespace gwt

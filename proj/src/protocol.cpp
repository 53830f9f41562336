#include "gwt/protocol.hpp"

#include <cmath>

#include "gwt/errors.hpp"

namespace gwt {
namespace {

std::set<std::size_t> indices_of(const SiteLayout& layout, std::initializer_list<std::string> labels) {
  std::set<std::size_t> out;
  for (const auto& l : labels) out.insert(layout.index_of(l));
  return out;
}

DensityState evolve_checked(const DensityState& s, const DenseOperator& w, const std::string& where) {
  try {
    return evolve(s, w);
  } catch (const ValidationError& e) {
    throw NumericalError("evolved state at " + where + " violates density-matrix invariants: " + e.what());
  }
}

// Largest |Tr(rho0 q(t)) - Tr(rho(t) q0)| over all components.
double picture_error(const std::vector<DescriptorSet>& initial, const std::vector<DescriptorSet>& evolved,
                     const DensityState& rho0, const DensityState& rho_t) {
  double worst = 0.0;
  for (std::size_t i = 0; i < initial.size(); ++i)
    for (std::size_t k = 0; k < initial[i].components.size(); ++k) {
      const cplx heisenberg = rho0.expectation(to_dense(evolved[i].components[k].op));
      const cplx schroedinger = rho_t.expectation(to_dense(initial[i].components[k].op));
      worst = std::max(worst, std::abs(heisenberg - schroedinger));
    }
  return worst;
}

std::vector<DescriptorSet> retag(std::vector<DescriptorSet> sets, const std::string& tag) {
  for (auto& s : sets) s.timestamp = tag;
  return sets;
}

}  // namespace

bool ProtocolTrace::locality_ok() const {
  for (const auto& st : steps)
    for (const auto& a : st.locality)
      if (!a.ok) return false;
  for (const auto& r : records)
    for (const auto& a : r.stage_locality)
      if (!a.ok) return false;
  return true;
}

bool ProtocolTrace::classical_ok() const {
  for (const auto& st : steps)
    if (!st.classical.compatible) return false;
  return true;
}

bool ProtocolTrace::microcausality_ok() const {
  for (const auto& r : records)
    if (!r.microcausality.ok) return false;
  return true;
}

ProtocolTrace run(const ProtocolSpec& spec) {
  spec.validate();
  const LayoutPtr& layout = spec.layout;
  const auto probes = spec.probes();
  const auto d0 = init_descriptors(layout, spec.classical_sites);

  ProtocolTrace trace{spec, {}, {}, DenseOperator::identity(layout->total_dim()), 0.0};
  trace.records.push_back(
      StageRecord{"init", "t0", {}, spec.s_plus, spec.s_minus, d0, {}, microcausality_check(d0), 0.0});

  DenseOperator& w = trace.total_unitary;
  std::vector<DescriptorSet> current = d0;
  for (std::size_t si = 0; si < spec.stages.size(); ++si) {
    const Stage& stage = spec.stages[si];
    const std::string tag = "t" + std::to_string(si + 1);
    const std::vector<DescriptorSet> stage_start = current;

    for (std::size_t k = 0; k < stage.steps.size(); ++k) {
      const StepSpec& step = stage.steps[k];
      w = step_unitary(step, layout) * w;
      std::vector<DescriptorSet> next = evolve_descriptors(d0, w, tag);

      StepAudit audit{si, k, step.describe(), step.acts_on, step.touches(spec.mediator), {}, {}};
      if (audit.touches_mediator) audit.classical = classical_compatibility(step, layout, spec.mediator);
      for (const auto& probe : probes) {
        if (!step.touches(probe)) continue;
        const std::set<std::string> region{probe, spec.mediator};
        for (std::size_t i = 0; i < next.size(); ++i)
          if (!region.count(next[i].subsystem)) audit.locality.push_back(locality_audit(current[i], next[i], region));
      }
      trace.steps.push_back(std::move(audit));
      current = std::move(next);
    }
    if (!w.is_unitary(1e-10)) throw NumericalError("accumulated evolution is not unitary after stage '" + stage.label + "'");
    current = retag(std::move(current), tag);

    StageRecord rec{stage.label,
                    tag,
                    stage.sites,
                    evolve_checked(spec.s_plus, w, tag),
                    evolve_checked(spec.s_minus, w, tag),
                    current,
                    {},
                    microcausality_check(current),
                    0.0};
    const auto declared = stage.site_set();
    for (std::size_t i = 0; i < current.size(); ++i)
      if (!declared.count(current[i].subsystem))
        rec.stage_locality.push_back(locality_audit(stage_start[i], current[i], declared));
    rec.picture_error = std::max(picture_error(d0, current, spec.s_plus, rec.plus),
                                 picture_error(d0, current, spec.s_minus, rec.minus));
    if (rec.picture_error > kPictureTol)
      throw NumericalError("Heisenberg and Schroedinger expectations disagree at " + tag);
    trace.max_picture_error = std::max(trace.max_picture_error, rec.picture_error);
    trace.records.push_back(std::move(rec));
  }
  return trace;
}

DensityState probe_state(const ProtocolSpec& spec, const DensityState& full) {
  const auto probes = spec.probes();
  return partial_trace(full, indices_of(*spec.layout, {probes[0], probes[1]}));
}

DensityState mediator_state(const ProtocolSpec& spec, const DensityState& full) {
  return partial_trace(full, {spec.layout->index_of(spec.mediator)});
}

TaskCheck task_te_check(const ProtocolTrace& trace) {
  const auto& spec = trace.spec;
  const auto probes = spec.probes();
  const auto& last = trace.final_record();
  const DensityState ab_plus = probe_state(spec, last.plus);
  const DensityState ab_minus = probe_state(spec, last.minus);
  const Bipartition cut{{probes[0]}, {probes[1]}};

  TaskCheck t;
  t.probe_distance = trace_distance(ab_plus, ab_minus);
  t.distinguishable = t.probe_distance >= 1.0 - kDistinguishTol;
  t.plus = negativity(ab_plus, cut);
  t.minus = negativity(ab_minus, cut);
  t.ok = t.distinguishable && !t.plus.ppt && !t.minus.ppt;
  return t;
}

FactorizationAudit factorization_audit(const ProtocolSpec& spec) {
  const auto probes = spec.probes();
  const std::set<std::string> am{probes[0], spec.mediator}, mb{spec.mediator, probes[1]};
  bool seen_am = false, seen_am_then_mb = false;
  for (const auto& st : spec.stages) {
    const auto sites = st.site_set();
    if (sites.count(probes[0]) && sites.count(probes[1]))
      return {false, "stage '" + st.label + "' declares both probes jointly"};
    if (sites == am) seen_am = true;
    if (sites == mb && seen_am) seen_am_then_mb = true;
  }
  if (!seen_am_then_mb) return {false, "no A+M stage followed by an M+B stage"};
  return {true, {}};
}

MediatorAnalysis mediator_variable_analysis(const ProtocolTrace& trace) {
  MediatorAnalysis out;
  for (const auto& st : trace.steps)
    if (!st.classical.compatible) out.non_classical_usage = true;

  const auto& spec = trace.spec;
  const FactorizationAudit fa = factorization_audit(spec);
  if (!fa.ok) {
    out.suppressed = true;
    out.note = "not a mediated protocol (" + fa.reason + "); witness invalid";
    return out;
  }
  out.note = "proxy";
  const auto probes = spec.probes();
  const std::set<std::string> am{probes[0], spec.mediator};
  const auto am_idx = indices_of(*spec.layout, {probes[0], spec.mediator});
  for (std::size_t r = 1; r < trace.records.size(); ++r) {
    const auto& rec = trace.records[r];
    if (std::set<std::string>(rec.sites.begin(), rec.sites.end()) != am) continue;
    BoundaryAnalysis b;
    b.record = r;
    b.timestamp = rec.timestamp;
    b.mediator_distance = trace_distance(mediator_state(spec, rec.plus), mediator_state(spec, rec.minus));
    b.joint_distance = trace_distance(partial_trace(rec.plus, am_idx), partial_trace(rec.minus, am_idx));
    b.mediator_distinguishable = b.mediator_distance >= 1.0 - kDistinguishTol;
    b.joint_distinguishable = b.joint_distance >= 1.0 - kDistinguishTol;
    out.boundaries.push_back(b);
  }
  return out;
}

std::string verdict_name(FinalVerdict v) {
  switch (v) {
    case FinalVerdict::WitnessFiresNonclassical: return "witness_fires_nonclassical";
    case FinalVerdict::ClassicalConsistent: return "classical_consistent";
    case FinalVerdict::WitnessInvalidNonlocal: return "witness_invalid_nonlocal";
  }
  return "?";
}

WitnessReport verdict(const ProtocolTrace& trace, const TaskCheck& task, const FactorizationAudit& factorization,
                      const MediatorAnalysis& mediator) {
  WitnessReport r;
  r.task = task;
  r.factorization = factorization;
  r.locality_ok = trace.locality_ok();
  r.classical_ok = trace.classical_ok();
  r.microcausality_ok = trace.microcausality_ok();
  r.max_picture_error = trace.max_picture_error;
  r.mediator_purity_plus = mediator_state(trace.spec, trace.final_record().plus).purity();
  r.mediator_purity_minus = mediator_state(trace.spec, trace.final_record().minus).purity();
  r.mediator = mediator;
  if (!factorization.ok || !r.locality_ok)
    r.final_verdict = FinalVerdict::WitnessInvalidNonlocal;
  else if (task.ok)
    r.final_verdict = FinalVerdict::WitnessFiresNonclassical;
  else
    r.final_verdict = FinalVerdict::ClassicalConsistent;
  return r;
}

Evaluation evaluate(const ProtocolSpec& spec) {
  ProtocolTrace trace = run(spec);
  const TaskCheck task = task_te_check(trace);
  const FactorizationAudit fa = factorization_audit(spec);
  const MediatorAnalysis ma = mediator_variable_analysis(trace);
  WitnessReport report = verdict(trace, task, fa, ma);
  return {std::move(trace), std::move(report)};
}

}  // namespace gwt

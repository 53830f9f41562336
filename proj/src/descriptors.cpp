#include "gwt/descriptors.hpp"

#include "gwt/errors.hpp"

namespace gwt {

const PauliOp& DescriptorSet::component(const std::string& label) const {
  for (const auto& c : components)
    if (c.label == label) return c.op;
  throw ValidationError("descriptor set '" + subsystem + "' has no component '" + label + "'");
}

std::vector<DescriptorSet> init_descriptors(const LayoutPtr& layout, const std::set<std::string>& classical_sites) {
  for (const auto& c : classical_sites)
    if (!layout->contains(c)) throw ValidationError("classical site '" + c + "' is not in the layout");

  std::vector<DescriptorSet> out;
  for (const auto& site : layout->sites()) {
    DescriptorSet set{site.label, {}, "t0"};
    if (classical_sites.count(site.label)) {
      if (site.is_qubit()) {
        set.components.push_back({"z", PauliOp::single(layout, site.label, QubitLetter::Z)});
      } else {
        // diag(d-1, d-3, ...) on this site, identity elsewhere.
        const std::size_t idx = layout->index_of(site.label);
        std::vector<cplx> diag(layout->total_dim());
        for (std::size_t r = 0; r < diag.size(); ++r) {
          const auto level = static_cast<double>(layout->digit(r, idx));
          diag[r] = static_cast<double>(site.dim) - 1.0 - 2.0 * level;
        }
        set.components.push_back(
            {"z", project_to_pauli_basis(layout, DenseOperator::diagonal(diag), kDescriptorDropTol)});
      }
    } else {
      if (!site.is_qubit())
        throw ValidationError("site '" + site.label + "' has dimension " + std::to_string(site.dim) +
                              "; only qubit sites may be quantum");
      set.components.push_back({"x", PauliOp::single(layout, site.label, QubitLetter::X)});
      set.components.push_back({"y", PauliOp::single(layout, site.label, QubitLetter::Y)});
      set.components.push_back({"z", PauliOp::single(layout, site.label, QubitLetter::Z)});
    }
    out.push_back(std::move(set));
  }
  return out;
}

std::vector<DescriptorSet> evolve_descriptors(const std::vector<DescriptorSet>& sets, const DenseOperator& u,
                                              const std::string& timestamp) {
  if (sets.empty()) return {};
  const LayoutPtr& layout = sets.front().components.front().op.layout();
  if (u.dim() != layout->total_dim()) throw ValidationError("evolve_descriptors: unitary dimension mismatch");
  if (!u.is_unitary(1e-10)) throw ValidationError("evolve_descriptors: operator is not unitary");
  const DenseOperator u_dag = u.adjoint();

  std::vector<DescriptorSet> out;
  out.reserve(sets.size());
  for (const auto& set : sets) {
    DescriptorSet next{set.subsystem, {}, timestamp.empty() ? set.timestamp : timestamp};
    for (const auto& comp : set.components) {
      const DenseOperator evolved = u_dag * to_dense(comp.op) * u;
      next.components.push_back({comp.label, project_to_pauli_basis(layout, evolved, kDescriptorDropTol)});
    }
    out.push_back(std::move(next));
  }
  return out;
}

std::set<std::string> support(const DescriptorSet& d) {
  std::set<std::string> out;
  for (const auto& c : d.components) out.merge(c.op.support());
  return out;
}

MicrocausalityVerdict microcausality_check(const std::vector<DescriptorSet>& sets) {
  MicrocausalityVerdict v;
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      if (sets[i].subsystem == sets[j].subsystem) continue;
      for (const auto& a : sets[i].components)
        for (const auto& b : sets[j].components) {
          const PauliOp c = commutator(a.op, b.op);
          if (c.is_zero()) continue;
          v.ok = false;
          const double mag = c.max_abs_coeff();
          if (mag > v.max_violation) {
            v.max_violation = mag;
            v.worst_pair = sets[i].subsystem + "." + a.label + "|" + sets[j].subsystem + "." + b.label;
          }
        }
    }
  return v;
}

LocalityAuditResult locality_audit(const DescriptorSet& before, const DescriptorSet& after,
                                   const std::set<std::string>& step_sites) {
  if (before.subsystem != after.subsystem)
    throw ValidationError("locality_audit: descriptor sets refer to different subsystems");
  if (step_sites.count(before.subsystem))
    throw ValidationError("locality_audit: subsystem '" + before.subsystem + "' lies inside the step sites");
  if (before.components.size() != after.components.size())
    throw ValidationError("locality_audit: component count changed");
  LocalityAuditResult r{before.subsystem, step_sites, true, 0.0};
  for (std::size_t k = 0; k < before.components.size(); ++k) {
    const PauliOp diff = after.components[k].op - before.components[k].op;
    if (!diff.is_zero()) {
      r.ok = false;
      r.max_change = std::max(r.max_change, diff.max_abs_coeff());
    }
  }
  return r;
}

}  // namespace gwt

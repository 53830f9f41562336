#include "gwt/steps.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "gwt/errors.hpp"
#include "gwt/linalg.hpp"

namespace gwt {
namespace {

constexpr cplx kI{0.0, 1.0};

struct GateInfo {
  GateKind kind;
  const char* name;
  std::size_t arity;
  bool angle;
};

constexpr GateInfo kGates[] = {
    {GateKind::CNOT, "CNOT", 2, false}, {GateKind::CZ, "CZ", 2, false},  {GateKind::H, "H", 1, false},
    {GateKind::RX, "RX", 1, true},      {GateKind::RY, "RY", 1, true},   {GateKind::RZ, "RZ", 1, true},
    {GateKind::CPHASE, "CPHASE", 2, true},
};

const GateInfo& info(GateKind k) {
  for (const auto& g : kGates)
    if (g.kind == k) return g;
  throw ValidationError("unknown gate");
}

DenseOperator local_gate(const NamedGate& g) {
  const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
  const double h = 1.0 / std::sqrt(2.0);
  switch (g.kind) {
    case GateKind::CNOT:
      return DenseOperator(4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0});
    case GateKind::CZ:
      return DenseOperator::diagonal(std::vector<cplx>{1, 1, 1, -1});
    case GateKind::CPHASE:
      return DenseOperator::diagonal(std::vector<cplx>{1, 1, 1, std::exp(kI * g.angle)});
    case GateKind::H:
      return DenseOperator(2, {h, h, h, -h});
    case GateKind::RX:
      return DenseOperator(2, {c, -kI * s, -kI * s, c});
    case GateKind::RY:
      return DenseOperator(2, {c, -s, s, c});
    case GateKind::RZ:
      return DenseOperator::diagonal(std::vector<cplx>{std::exp(-kI * g.angle / 2.0), std::exp(kI * g.angle / 2.0)});
  }
  throw ValidationError("unknown gate");
}

std::string format_angle(double a) {
  std::ostringstream os;
  os.precision(6);
  os << a;
  return os.str();
}

}  // namespace

std::string gate_name(GateKind kind) { return info(kind).name; }

GateKind gate_from_name(const std::string& name) {
  for (const auto& g : kGates)
    if (name == g.name) return g.kind;
  throw ValidationError("unknown gate '" + name + "'");
}

std::size_t gate_arity(GateKind kind) { return info(kind).arity; }
bool gate_has_angle(GateKind kind) { return info(kind).angle; }

std::string StepSpec::describe() const {
  std::string sites;
  for (const auto& s : acts_on) sites += (sites.empty() ? "" : ",") + s;
  if (const auto* g = std::get_if<NamedGate>(&generator)) {
    std::string out = gate_name(g->kind);
    if (gate_has_angle(g->kind)) out += "(" + format_angle(g->angle) + ")";
    return out + "[" + sites + "]";
  }
  const auto& gen = std::get<GeneratorStep>(generator);
  std::string terms;
  for (const auto& [s, c] : gen.hamiltonian.terms()) {
    if (!terms.empty()) terms += "+";
    terms += string_to_text(*gen.hamiltonian.layout(), s);
  }
  return "exp(-i*" + format_angle(gen.angle) + "*(" + terms + "))[" + sites + "]";
}

bool StepSpec::touches(const std::string& site) const {
  for (const auto& s : acts_on)
    if (s == site) return true;
  return false;
}

StepSpec gate_step(GateKind kind, std::vector<std::string> sites, double angle) {
  return StepSpec{std::move(sites), NamedGate{kind, angle}};
}

StepSpec generator_step(std::vector<std::string> sites, PauliOp hamiltonian, double angle) {
  return StepSpec{std::move(sites), GeneratorStep{std::move(hamiltonian), angle}};
}

void validate_step(const StepSpec& step, const SiteLayout& layout) {
  if (step.acts_on.empty() || step.acts_on.size() > 2) throw ValidationError("a step acts on one or two sites");
  if (step.acts_on.size() == 2 && step.acts_on[0] == step.acts_on[1])
    throw ValidationError("step sites must be distinct");
  for (const auto& s : step.acts_on) layout.index_of(s);

  if (const auto* g = std::get_if<NamedGate>(&step.generator)) {
    if (gate_arity(g->kind) != step.acts_on.size())
      throw ValidationError(gate_name(g->kind) + " expects " + std::to_string(gate_arity(g->kind)) + " site(s)");
    for (const auto& s : step.acts_on)
      if (!layout.site(layout.index_of(s)).is_qubit())
        throw ValidationError("named gate " + gate_name(g->kind) + " requires qubit sites");
    if (!std::isfinite(g->angle)) throw ValidationError("gate angle must be finite");
    return;
  }
  const auto& gen = std::get<GeneratorStep>(step.generator);
  if (!(*gen.hamiltonian.layout() == layout)) throw ValidationError("step hamiltonian uses a different layout");
  if (!std::isfinite(gen.angle)) throw ValidationError("generator angle must be finite");
  const std::set<std::string> allowed(step.acts_on.begin(), step.acts_on.end());
  for (const auto& s : gen.hamiltonian.support())
    if (!allowed.count(s)) throw ValidationError("hamiltonian acts on '" + s + "' outside the step sites");
  if (!(gen.hamiltonian - gen.hamiltonian.adjoint()).is_zero())
    throw ValidationError("step hamiltonian is not Hermitian");
}

DenseOperator step_unitary(const StepSpec& step, const LayoutPtr& layout) {
  validate_step(step, *layout);
  if (const auto* g = std::get_if<NamedGate>(&step.generator)) {
    std::vector<std::size_t> positions;
    for (const auto& s : step.acts_on) positions.push_back(layout->index_of(s));
    const auto dims = layout->dims();
    return embed(local_gate(*g), positions, dims);
  }
  const auto& gen = std::get<GeneratorStep>(step.generator);
  return expm_hermitian_generator(to_dense(gen.hamiltonian), gen.angle);
}

ClassicalCompatibility classical_compatibility(const DenseOperator& u, const SiteLayout& layout,
                                               const std::string& mediator_site) {
  const std::size_t m = layout.index_of(mediator_site);
  const std::size_t d = layout.site(m).dim;
  ClassicalCompatibility out;
  // Z_M (and diag(d-1, d-3, ...) for d > 2) is non-degenerate, so its
  // spectral projectors are the basis projectors |k><k| on the mediator.
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<cplx> diag(layout.total_dim());
    for (std::size_t r = 0; r < diag.size(); ++r) diag[r] = layout.digit(r, m) == k ? 1.0 : 0.0;
    const DenseOperator c = commutator(u, DenseOperator::diagonal(diag));
    if (c.max_abs() > 1e-12) out.compatible = false;
    out.violation += spectral_norm(c);
  }
  if (out.compatible) out.violation = 0.0;
  return out;
}

ClassicalCompatibility classical_compatibility(const StepSpec& step, const LayoutPtr& layout,
                                               const std::string& mediator_site) {
  layout->index_of(mediator_site);
  if (!step.touches(mediator_site)) {
    validate_step(step, *layout);
    return {};
  }
  return classical_compatibility(step_unitary(step, layout), *layout, mediator_site);
}

double off_block_norm(const DenseOperator& u, const SiteLayout& layout, const std::string& mediator_site) {
  const std::size_t m = layout.index_of(mediator_site);
  double out = 0.0;
  for (std::size_t r = 0; r < u.dim(); ++r)
    for (std::size_t c = 0; c < u.dim(); ++c)
      if (layout.digit(r, m) != layout.digit(c, m)) out = std::max(out, std::abs(u(r, c)));
  return out;
}

}  // namespace gwt

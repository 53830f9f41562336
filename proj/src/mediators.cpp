#include "gwt/mediators.hpp"

#include <cmath>
#include <numbers>

#include "gwt/errors.hpp"
#include "gwt/rng.hpp"

namespace gwt {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

LayoutPtr amb_layout() { return make_layout({{"A", 2}, {"M", 2}, {"B", 2}}); }

DensityState amb_state(const SiteLayout& layout, char a, char m, char b, std::string label) {
  const DensityState locals[] = {qubit_state(a), qubit_state(m), qubit_state(b)};
  return layout_product_state(layout, locals, std::move(label));
}

DensityState ket_state(std::vector<cplx> ket, const std::string& label) {
  return DensityState::from_ket(ket, {ket.size()}, label);
}

QubitLetter random_pauli(StreamRng& rng) { return static_cast<QubitLetter>(1 + rng.below(3)); }

StepSpec random_rotation(const std::string& site, StreamRng& rng) {
  static constexpr GateKind kRot[] = {GateKind::RX, GateKind::RY, GateKind::RZ};
  return gate_step(kRot[rng.below(3)], {site}, rng.uniform(0.0, kTwoPi));
}

enum class Coupling { Classical, Quantum };

// Shared skeleton of the sampled families: alternating probe+mediator stages.
ProtocolSpec sample_mediated(const char* name, Coupling coupling, std::uint64_t seed, std::size_t n_steps,
                             std::uint64_t stream, StreamRng& rng) {
  if (n_steps < 1) throw ValidationError("sampled protocols need n_steps >= 1");
  const LayoutPtr layout = amb_layout();
  const DensityState m0 = ket_state(random_ket(2, rng), "m0");
  const DensityState b0 = ket_state(random_ket(2, rng), "b0");
  const DensityState plus_locals[] = {qubit_state('+'), m0, b0};
  const DensityState minus_locals[] = {qubit_state('-'), m0, b0};

  std::vector<Stage> stages;
  for (std::size_t i = 0; i < n_steps; ++i) {
    const std::string probe = (i % 2 == 0) ? "A" : "B";
    Stage st;
    st.label = "s" + std::to_string(i + 1);
    st.sites = probe == "A" ? std::vector<std::string>{"A", "M"} : std::vector<std::string>{"M", "B"};
    st.steps.push_back(random_rotation(probe, rng));
    PauliOp h = PauliOp::single(layout, probe, random_pauli(rng));
    if (coupling == Coupling::Classical) {
      if (rng.below(2) == 1) h = h * PauliOp::single(layout, "M", QubitLetter::Z);
    } else {
      h = h * PauliOp::single(layout, "M", random_pauli(rng));
      st.steps.push_back(random_rotation("M", rng));
    }
    st.steps.push_back(generator_step(st.sites, std::move(h), rng.uniform(0.0, kTwoPi)));
    stages.push_back(std::move(st));
  }
  ProtocolSpec spec{std::string(name) + "#" + std::to_string(seed) + ":" + std::to_string(stream),
                    layout,
                    coupling == Coupling::Classical ? std::set<std::string>{"M"} : std::set<std::string>{},
                    "M",
                    layout_product_state(*layout, plus_locals, "s+"),
                    layout_product_state(*layout, minus_locals, "s-"),
                    std::move(stages)};
  return spec;
}

}  // namespace

std::string kind_name(MediatorKind kind) {
  switch (kind) {
    case MediatorKind::ClassicalLocal: return "classical_local";
    case MediatorKind::QuantumLocal: return "quantum_local";
    case MediatorKind::NonlocalDirect: return "nonlocal_direct";
  }
  return "?";
}

MediatorKind kind_from_name(const std::string& name) {
  if (name == "classical_local") return MediatorKind::ClassicalLocal;
  if (name == "quantum_local") return MediatorKind::QuantumLocal;
  if (name == "nonlocal_direct") return MediatorKind::NonlocalDirect;
  throw ValidationError("unknown mediator family '" + name + "'");
}

FamilyCheck check_family(const ProtocolSpec& spec, const MediatorFamily& family) {
  if (family.kind == MediatorKind::NonlocalDirect) return {};
  const auto probes = spec.probes();
  for (const auto& st : spec.stages)
    for (const auto& step : st.steps) {
      if (step.touches(probes[0]) && step.touches(probes[1]))
        return {false, "step " + step.describe() + " acts on both probes"};
      if (family.kind == MediatorKind::ClassicalLocal &&
          !classical_compatibility(step, spec.layout, family.mediator_site).compatible)
        return {false, "step " + step.describe() + " is not classically compatible"};
    }
  return {};
}

ProtocolSpec build_cnot_relay() {
  const LayoutPtr layout = amb_layout();
  std::vector<Stage> stages{
      {"T1:A+M", {"A", "M"}, {gate_step(GateKind::CNOT, {"A", "M"})}},
      {"T2:M+B", {"M", "B"}, {gate_step(GateKind::CNOT, {"M", "B"}), gate_step(GateKind::CNOT, {"B", "M"})}},
  };
  return ProtocolSpec{"cnot-relay",
                      layout,
                      {},
                      "M",
                      amb_state(*layout, '+', '0', '0', "s+"),
                      amb_state(*layout, '-', '0', '0', "s-"),
                      std::move(stages)};
}

double bmv_phase_combination(const std::array<double, 4>& phases) {
  const double delta = phases[0] + phases[3] - phases[1] - phases[2];
  double wrapped = std::remainder(delta, kTwoPi);
  if (wrapped <= -std::numbers::pi) wrapped += kTwoPi;
  return wrapped;
}

ProtocolSpec build_bmv_phase(const std::array<double, 4>& phases) {
  const LayoutPtr layout = amb_layout();
  // e^{i phi_mb}|mb><mb| = exp(-i H) with H = -sum phi_mb |mb><mb| and
  // |mb><mb| = (I + (-1)^m Z_M)(I + (-1)^b Z_B) / 4.
  const PauliOp id = PauliOp::identity(layout);
  const PauliOp zm = PauliOp::single(layout, "M", QubitLetter::Z);
  const PauliOp zb = PauliOp::single(layout, "B", QubitLetter::Z);
  PauliOp h(layout);
  for (int m = 0; m < 2; ++m)
    for (int b = 0; b < 2; ++b) {
      const double sm = m ? -1.0 : 1.0, sb = b ? -1.0 : 1.0;
      const PauliOp proj = 0.25 * ((id + sm * zm) * (id + sb * zb));
      h += cplx(-phases[2 * m + b]) * proj;
    }
  std::vector<Stage> stages{
      {"T1:A+M", {"A", "M"}, {gate_step(GateKind::CNOT, {"A", "M"})}},
      {"T2:M+B", {"M", "B"}, {generator_step({"M", "B"}, std::move(h), 1.0)}},
      {"T3:A+M", {"A", "M"}, {gate_step(GateKind::CNOT, {"A", "M"})}},
  };
  return ProtocolSpec{"bmv-phase",
                      layout,
                      {},
                      "M",
                      amb_state(*layout, '+', '0', '+', "s+"),
                      amb_state(*layout, '+', '0', '-', "s-"),
                      std::move(stages)};
}

ProtocolSpec build_nonlocal_demo(bool include_direct) {
  const LayoutPtr layout = amb_layout();
  std::vector<Stage> stages;
  stages.push_back({"T1:A+M", {"A", "M"}, {gate_step(GateKind::CPHASE, {"A", "M"}, std::numbers::pi / 3)}});
  if (include_direct)
    stages.push_back(
        {"direct:A+B", {"A", "B"}, {gate_step(GateKind::H, {"A"}), gate_step(GateKind::CNOT, {"A", "B"})}});
  stages.push_back({"T2:M+B", {"M", "B"}, {gate_step(GateKind::CPHASE, {"M", "B"}, std::numbers::pi / 5)}});
  return ProtocolSpec{include_direct ? "nonlocal-cz" : "nonlocal-cz-without-direct",
                      layout,
                      {"M"},
                      "M",
                      amb_state(*layout, '0', '0', '0', "s+"),
                      amb_state(*layout, '1', '0', '0', "s-"),
                      std::move(stages)};
}

ProtocolSpec sample_classical_local(std::uint64_t seed, std::size_t n_steps, std::uint64_t stream) {
  StreamRng rng(seed, stream);
  return sample_mediated("classical_local", Coupling::Classical, seed, n_steps, stream, rng);
}

ProtocolSpec sample_quantum_local(std::uint64_t seed, std::size_t n_steps, std::uint64_t stream) {
  StreamRng rng(seed, stream);
  return sample_mediated("quantum_local", Coupling::Quantum, seed, n_steps, stream, rng);
}

ProtocolSpec sample_nonlocal_direct(std::uint64_t seed, std::size_t n_steps, std::uint64_t stream) {
  StreamRng rng(seed, stream);
  ProtocolSpec spec = sample_mediated("nonlocal_direct", Coupling::Classical, seed, n_steps, stream, rng);
  const LayoutPtr& layout = spec.layout;
  PauliOp h = PauliOp::single(layout, "A", random_pauli(rng)) * PauliOp::single(layout, "B", random_pauli(rng));
  Stage direct{"direct:A+B", {"A", "B"}, {generator_step({"A", "B"}, std::move(h), rng.uniform(0.0, kTwoPi))}};
  const auto pos = static_cast<std::ptrdiff_t>(rng.below(spec.stages.size() + 1));
  spec.stages.insert(spec.stages.begin() + pos, std::move(direct));
  return spec;
}

ProtocolSpec sample_family(MediatorKind kind, std::uint64_t seed, std::size_t n_steps, std::uint64_t stream) {
  switch (kind) {
    case MediatorKind::ClassicalLocal: return sample_classical_local(seed, n_steps, stream);
    case MediatorKind::QuantumLocal: return sample_quantum_local(seed, n_steps, stream);
    case MediatorKind::NonlocalDirect: return sample_nonlocal_direct(seed, n_steps, stream);
  }
  throw ValidationError("unknown mediator family");
}

}  // namespace gwt

#include "gwt/json_io.hpp"

#include <cmath>

#include "gwt/errors.hpp"

namespace gwt::io {
namespace {

std::string at(const std::string& ptr, const std::string& key) { return ptr + "/" + key; }
std::string at(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

const json& field(const json& j, const std::string& key, const std::string& ptr) {
  if (!j.is_object()) throw SchemaError(ptr.empty() ? "/" : ptr, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(at(ptr, key), "missing required field");
  return *it;
}

double number(const json& j, const std::string& ptr) {
  if (!j.is_number()) throw SchemaError(ptr, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw SchemaError(ptr, "number must be finite");
  return x;
}

std::string string(const json& j, const std::string& ptr) {
  if (!j.is_string()) throw SchemaError(ptr, "expected a string");
  return j.get<std::string>();
}

const json& array(const json& j, const std::string& ptr) {
  if (!j.is_array()) throw SchemaError(ptr, "expected an array");
  return j;
}

std::vector<std::string> strings(const json& j, const std::string& ptr) {
  std::vector<std::string> out;
  const auto& a = array(j, ptr);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(string(a[i], at(ptr, i)));
  return out;
}

std::vector<cplx> ket_from_json(const json& j, const std::string& ptr) {
  std::vector<cplx> out;
  const auto& a = array(j, ptr);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(complex_from_json(a[i], at(ptr, i)));
  return out;
}

// Wraps library validation errors with the pointer of the object being built.
template <typename F>
auto with_pointer(const std::string& ptr, F&& f) {
  try {
    return f();
  } catch (const SchemaError&) {
    throw;
  } catch (const ValidationError& e) {
    throw SchemaError(ptr.empty() ? "/" : ptr, e.what());
  }
}

DensityState local_state_from_json(const json& j, const Site& site, const std::string& ptr) {
  return with_pointer(ptr, [&] {
    if (j.is_string()) {
      const std::string s = j.get<std::string>();
      if (s.size() != 1 || site.dim != 2) throw SchemaError(ptr, "named local states are '0', '1', '+', '-' on qubits");
      return qubit_state(s[0]);
    }
    std::vector<cplx> ket = ket_from_json(j, ptr);
    if (ket.size() != site.dim) throw SchemaError(ptr, "ket length does not match site dimension");
    return DensityState::from_ket(ket, {site.dim});
  });
}

DensityState state_from_json(const json& j, const SiteLayout& layout, const std::string& label,
                             const std::string& ptr) {
  if (j.is_object() && j.contains("product")) {
    const auto& locals = array(j["product"], at(ptr, "product"));
    if (locals.size() != layout.size()) throw SchemaError(at(ptr, "product"), "one local state per site is required");
    std::vector<DensityState> states;
    for (std::size_t i = 0; i < locals.size(); ++i)
      states.push_back(local_state_from_json(locals[i], layout.site(i), at(at(ptr, "product"), i)));
    return with_pointer(ptr, [&] { return layout_product_state(layout, states, label); });
  }
  const auto& dims_j = array(field(j, "dims", ptr), at(ptr, "dims"));
  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i < dims_j.size(); ++i) {
    if (!dims_j[i].is_number_unsigned()) throw SchemaError(at(at(ptr, "dims"), i), "expected a positive integer");
    dims.push_back(dims_j[i].get<std::size_t>());
  }
  const auto& mat = array(field(j, "matrix", ptr), at(ptr, "matrix"));
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  if (mat.size() != n * n) throw SchemaError(at(ptr, "matrix"), "expected " + std::to_string(n * n) + " entries");
  std::vector<cplx> entries;
  for (std::size_t i = 0; i < mat.size(); ++i) entries.push_back(complex_from_json(mat[i], at(at(ptr, "matrix"), i)));
  return with_pointer(ptr, [&] {
    return DensityState(DenseOperator(n, std::move(entries)), dims, label, layout.labels());
  });
}

PauliOp pauli_from_json(const json& j, const LayoutPtr& layout, const std::string& ptr) {
  PauliOp op(layout);
  const auto& terms = array(j, ptr);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string tp = at(ptr, i);
    if (!terms[i].is_array() || terms[i].size() != 2) throw SchemaError(tp, "expected [pauli_text, [re, im]]");
    const std::string text = string(terms[i][0], at(tp, 0));
    const cplx c = complex_from_json(terms[i][1], at(tp, 1));
    with_pointer(tp, [&] {
      op.add_term(string_from_text(*layout, text), c);
      return 0;
    });
  }
  return op;
}

StepSpec step_from_json(const json& j, const LayoutPtr& layout, const std::string& ptr) {
  const auto sites = strings(field(j, "sites", ptr), at(ptr, "sites"));
  StepSpec step;
  if (j.contains("gate")) {
    const std::string name = string(j["gate"], at(ptr, "gate"));
    const GateKind kind = with_pointer(at(ptr, "gate"), [&] { return gate_from_name(name); });
    double angle = 0.0;
    if (gate_has_angle(kind)) angle = number(field(j, "angle", ptr), at(ptr, "angle"));
    step = gate_step(kind, sites, angle);
  } else if (j.contains("hamiltonian")) {
    PauliOp h = pauli_from_json(j["hamiltonian"], layout, at(ptr, "hamiltonian"));
    step = generator_step(sites, std::move(h), number(field(j, "angle", ptr), at(ptr, "angle")));
  } else {
    throw SchemaError(ptr, "step needs either 'gate' or 'hamiltonian'");
  }
  with_pointer(ptr, [&] {
    validate_step(step, *layout);
    return 0;
  });
  return step;
}

}  // namespace

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j, const std::string& ptr) {
  if (j.is_number()) return {number(j, ptr), 0.0};
  if (!j.is_array() || j.size() != 2) throw SchemaError(ptr, "expected [re, im]");
  return {number(j[0], at(ptr, 0)), number(j[1], at(ptr, 1))};
}

json matrix_to_json(const DenseOperator& m) {
  json out = json::array();
  for (const auto& x : m.entries()) out.push_back(complex_to_json(x));
  return out;
}

json state_to_json(const DensityState& s) {
  return {{"label", s.label()}, {"dims", s.dims()}, {"matrix", matrix_to_json(s.matrix())}};
}

json pauli_to_json(const PauliOp& op) {
  json out = json::array();
  for (const auto& [s, c] : op.terms()) out.push_back(json::array({string_to_text(*op.layout(), s), complex_to_json(c)}));
  return out;
}

json descriptors_to_json(const std::vector<DescriptorSet>& sets) {
  json out = json::object();
  for (const auto& set : sets) {
    json comps = json::object();
    for (const auto& c : set.components) comps[c.label] = pauli_to_json(c.op);
    out[set.subsystem] = comps;
  }
  return out;
}

json step_to_json(const StepSpec& step) {
  json out{{"sites", step.acts_on}};
  if (const auto* g = std::get_if<NamedGate>(&step.generator)) {
    out["gate"] = gate_name(g->kind);
    if (gate_has_angle(g->kind)) out["angle"] = g->angle;
  } else {
    const auto& gen = std::get<GeneratorStep>(step.generator);
    out["hamiltonian"] = pauli_to_json(gen.hamiltonian);
    out["angle"] = gen.angle;
  }
  return out;
}

json spec_to_json(const ProtocolSpec& spec) {
  json layout = json::array();
  for (const auto& s : spec.layout->sites()) layout.push_back({{"label", s.label}, {"dim", s.dim}});
  json stages = json::array();
  for (const auto& st : spec.stages) {
    json steps = json::array();
    for (const auto& step : st.steps) steps.push_back(step_to_json(step));
    stages.push_back({{"label", st.label}, {"sites", st.sites}, {"steps", steps}});
  }
  return {{"name", spec.name},
          {"layout", layout},
          {"classical_sites", spec.classical_sites},
          {"mediator", spec.mediator},
          {"initializations", {{"plus", state_to_json(spec.s_plus)}, {"minus", state_to_json(spec.s_minus)}}},
          {"stages", stages}};
}

ProtocolSpec spec_from_json(const json& j, const std::string& ptr) {
  const auto& layout_j = array(field(j, "layout", ptr), at(ptr, "layout"));
  std::vector<Site> sites;
  for (std::size_t i = 0; i < layout_j.size(); ++i) {
    const std::string sp = at(at(ptr, "layout"), i);
    const auto& d = field(layout_j[i], "dim", sp);
    if (!d.is_number_unsigned()) throw SchemaError(at(sp, "dim"), "expected a positive integer");
    sites.push_back({string(field(layout_j[i], "label", sp), at(sp, "label")), d.get<std::size_t>()});
  }
  const LayoutPtr layout = with_pointer(at(ptr, "layout"), [&] { return make_layout(sites); });

  std::set<std::string> classical;
  if (j.contains("classical_sites"))
    for (auto& s : strings(j["classical_sites"], at(ptr, "classical_sites"))) classical.insert(s);
  const std::string mediator = j.contains("mediator") ? string(j["mediator"], at(ptr, "mediator")) : "M";

  const std::string ip = at(ptr, "initializations");
  const auto& inits = field(j, "initializations", ptr);
  DensityState plus = state_from_json(field(inits, "plus", ip), *layout, "s+", at(ip, "plus"));
  DensityState minus = state_from_json(field(inits, "minus", ip), *layout, "s-", at(ip, "minus"));

  std::vector<Stage> stages;
  const auto& stages_j = array(field(j, "stages", ptr), at(ptr, "stages"));
  for (std::size_t i = 0; i < stages_j.size(); ++i) {
    const std::string sp = at(at(ptr, "stages"), i);
    Stage st;
    st.label = stages_j[i].contains("label") ? string(stages_j[i]["label"], at(sp, "label")) : "s" + std::to_string(i + 1);
    st.sites = strings(field(stages_j[i], "sites", sp), at(sp, "sites"));
    const auto& steps_j = array(field(stages_j[i], "steps", sp), at(sp, "steps"));
    for (std::size_t k = 0; k < steps_j.size(); ++k)
      st.steps.push_back(step_from_json(steps_j[k], layout, at(at(sp, "steps"), k)));
    stages.push_back(std::move(st));
  }
  ProtocolSpec spec{j.contains("name") ? string(j["name"], at(ptr, "name")) : "protocol",
                    layout,
                    classical,
                    mediator,
                    std::move(plus),
                    std::move(minus),
                    std::move(stages)};
  with_pointer(ptr, [&] {
    spec.validate();
    return 0;
  });
  return spec;
}

json variable_to_json(const VariableSpec& v) {
  json attrs = json::array();
  for (const auto& a : v.attributes) {
    json vecs = json::array();
    for (const auto& vec : a.vectors) {
      json entries = json::array();
      for (const auto& x : vec) entries.push_back(complex_to_json(x));
      vecs.push_back(entries);
    }
    attrs.push_back({{"label", a.label}, {"vectors", vecs}});
  }
  return {{"name", v.name}, {"dim", v.dim}, {"attributes", attrs}};
}

VariableSpec variable_from_json(const json& j, const std::string& ptr) {
  VariableSpec v;
  v.name = j.contains("name") ? string(j["name"], at(ptr, "name")) : "var";
  const auto& d = field(j, "dim", ptr);
  if (!d.is_number_unsigned()) throw SchemaError(at(ptr, "dim"), "expected a positive integer");
  v.dim = d.get<std::size_t>();
  const auto& attrs = array(field(j, "attributes", ptr), at(ptr, "attributes"));
  for (std::size_t i = 0; i < attrs.size(); ++i) {
    const std::string ap = at(at(ptr, "attributes"), i);
    Attribute a;
    a.label = attrs[i].contains("label") ? string(attrs[i]["label"], at(ap, "label")) : std::to_string(i);
    const auto& vecs = array(field(attrs[i], "vectors", ap), at(ap, "vectors"));
    for (std::size_t k = 0; k < vecs.size(); ++k) a.vectors.push_back(ket_from_json(vecs[k], at(at(ap, "vectors"), k)));
    v.attributes.push_back(std::move(a));
  }
  with_pointer(ptr, [&] {
    v.validate();
    return 0;
  });
  return v;
}

std::vector<VariableSpec> variables_from_json(const json& j, const std::string& ptr) {
  std::vector<VariableSpec> out;
  const auto& a = array(j, ptr);
  if (a.empty()) throw SchemaError(ptr, "at least one variable is required");
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(variable_from_json(a[i], at(ptr, i)));
  return out;
}

json entanglement_to_json(const EntanglementVerdict& v) {
  return {{"negativity", v.negativity},
          {"ppt", v.ppt},
          {"bipartition", json::array({v.bipartition.left, v.bipartition.right})},
          {"threshold", v.threshold}};
}

json evaluation_to_json(const Evaluation& e) {
  const auto& trace = e.trace;
  const auto& r = e.report;
  const auto& spec = trace.spec;
  const auto probes = spec.probes();
  const Bipartition cut{{probes[0]}, {probes[1]}};

  json steps = json::array();
  for (const auto& s : trace.steps) {
    json loc = json::array();
    for (const auto& a : s.locality)
      loc.push_back({{"subsystem", a.subsystem}, {"step_sites", a.step_sites}, {"ok", a.ok}, {"max_change", a.max_change}});
    steps.push_back({{"stage", s.stage},
                     {"index", s.index},
                     {"step", s.description},
                     {"acts_on", s.acts_on},
                     {"touches_mediator", s.touches_mediator},
                     {"classical_compatible", s.classical.compatible},
                     {"classical_violation", s.classical.violation},
                     {"locality", loc}});
  }

  json stages = json::array();
  for (const auto& rec : trace.records) {
    json loc = json::array();
    for (const auto& a : rec.stage_locality)
      loc.push_back({{"subsystem", a.subsystem}, {"step_sites", a.step_sites}, {"ok", a.ok}, {"max_change", a.max_change}});
    stages.push_back({{"label", rec.stage_label},
                      {"timestamp", rec.timestamp},
                      {"sites", rec.sites},
                      {"negativity_plus", negativity(probe_state(spec, rec.plus), cut).negativity},
                      {"negativity_minus", negativity(probe_state(spec, rec.minus), cut).negativity},
                      {"microcausality", {{"ok", rec.microcausality.ok}, {"max_violation", rec.microcausality.max_violation}}},
                      {"picture_error", rec.picture_error},
                      {"stage_locality", loc},
                      {"descriptors", descriptors_to_json(rec.descriptors)}});
  }

  json boundaries = json::array();
  for (const auto& b : r.mediator.boundaries)
    boundaries.push_back({{"timestamp", b.timestamp},
                          {"mediator_distance", b.mediator_distance},
                          {"joint_distance", b.joint_distance},
                          {"mediator_distinguishable", b.mediator_distinguishable},
                          {"joint_distinguishable", b.joint_distinguishable}});
  json mediator{{"suppressed", r.mediator.suppressed},
                {"note", r.mediator.note},
                {"non_classical_usage", r.mediator.non_classical_usage},
                {"boundaries", boundaries}};
  if (!r.mediator.boundaries.empty()) mediator["t1"] = boundaries.front();

  return {{"kind", "protocol"},
          {"name", spec.name},
          {"final_verdict", verdict_name(r.final_verdict)},
          {"negativity_AB", {{"plus", entanglement_to_json(r.task.plus)}, {"minus", entanglement_to_json(r.task.minus)}}},
          {"e_distance", r.task.probe_distance},
          {"e_distinguishable", r.task.distinguishable},
          {"task_te", r.task.ok},
          {"factorization", {{"ok", r.factorization.ok}, {"reason", r.factorization.reason}}},
          {"locality", r.locality_ok},
          {"classical_compatibility", r.classical_ok},
          {"microcausality", r.microcausality_ok},
          {"max_picture_error", r.max_picture_error},
          {"mediator_purity", {{"plus", r.mediator_purity_plus}, {"minus", r.mediator_purity_minus}}},
          {"mediator_analysis", mediator},
          {"thresholds",
           {{"entanglement", kEntanglementTol}, {"distinguishability", kDistinguishTol}, {"picture", kPictureTol}}},
          {"steps", steps},
          {"stages", stages},
          {"final_states",
           {{"plus", state_to_json(trace.final_record().plus)}, {"minus", state_to_json(trace.final_record().minus)}}}};
}

}  // namespace gwt::io

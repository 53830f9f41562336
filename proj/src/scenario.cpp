#include "gwt/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <mutex>
#include <thread>

#include "gwt/errors.hpp"
#include "gwt/json_io.hpp"
#include "gwt/nonclassicality.hpp"

namespace gwt {

using nlohmann::json;

SampleOutcome run_sample(const CampaignOptions& opts, std::uint64_t index) {
  const ProtocolSpec spec = sample_family(opts.family, opts.seed, opts.n_steps, index);
  const Evaluation e = evaluate(spec);
  SampleOutcome o;
  o.index = index;
  o.negativity_plus = e.report.task.plus.negativity;
  o.negativity_minus = e.report.task.minus.negativity;
  o.verdict = e.report.final_verdict;
  o.non_classical_usage = e.report.mediator.non_classical_usage;
  o.microcausality_ok = e.report.microcausality_ok;
  o.picture_error = e.report.max_picture_error;
  o.in_family = check_family(spec, {opts.family, spec.mediator}).ok;
  return o;
}

CampaignReport run_campaign(const CampaignOptions& opts) {
  if (opts.samples < 1) throw ValidationError("campaign needs samples >= 1");
  if (opts.n_steps < 1) throw ValidationError("campaign needs n_steps >= 1");
  if (!(opts.tolerance >= 0.0)) throw ValidationError("campaign tolerance must be non-negative");

  unsigned workers = opts.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opts.workers;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, opts.samples));
  std::vector<SampleOutcome> outcomes(opts.samples);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    try {
      for (std::uint64_t i; (i = next.fetch_add(1)) < opts.samples;) outcomes[i] = run_sample(opts, i);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = opts.samples;
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  CampaignReport r;
  r.options = opts;
  for (const auto& o : outcomes) {
    r.max_negativity = std::max(r.max_negativity, o.max_negativity());
    r.max_picture_error = std::max(r.max_picture_error, o.picture_error);
    if (o.max_negativity() > kEntanglementTol) ++r.entangled_samples;
    ++r.verdict_counts[verdict_name(o.verdict)];
    if (o.verdict == FinalVerdict::WitnessFiresNonclassical && !o.non_classical_usage)
      r.contrapositive_violations.push_back(o.index);
    if (!o.microcausality_ok) r.microcausality_failures.push_back(o.index);
    if (!o.in_family) r.family_violations.push_back(o.index);
    if (o.max_negativity() > opts.tolerance) r.violations.push_back(o);
  }
  r.pass = r.violations.empty();
  return r;
}

json campaign_to_json(const CampaignReport& r) {
  json violations = json::array();
  for (const auto& v : r.violations)
    violations.push_back({{"sample", v.index},
                          {"negativity_plus", v.negativity_plus},
                          {"negativity_minus", v.negativity_minus},
                          {"verdict", verdict_name(v.verdict)}});
  return {{"kind", "campaign"},
          {"family", kind_name(r.options.family)},
          {"samples", r.options.samples},
          {"seed", r.options.seed},
          {"n_steps", r.options.n_steps},
          {"tolerance", r.options.tolerance},
          {"max_negativity", r.max_negativity},
          {"max_picture_error", r.max_picture_error},
          {"entangled_samples", r.entangled_samples},
          {"verdict_counts", r.verdict_counts},
          {"contrapositive_violations", r.contrapositive_violations},
          {"microcausality_failures", r.microcausality_failures},
          {"family_violations", r.family_violations},
          {"violations", violations},
          {"pass", r.pass}};
}

json classification_to_json(const std::vector<VariableSpec>& vars) {
  json per_var = json::array();
  std::vector<DenseOperator> projectors;
  for (const auto& v : vars) {
    json entry{{"name", v.name}, {"dim", v.dim}, {"attributes", v.attributes.size()}};
    if (v.attributes.size() >= 2) {
      const auto iv = information_variable_check(v);
      entry["information_variable"] = iv.ok;
      entry["max_overlap"] = iv.max_overlap;
      entry["permutation_unitary"] = iv.permutation_unitary_exists;
    } else {
      entry["information_variable"] = false;
    }
    per_var.push_back(entry);
    for (std::size_t i = 0; i < v.attributes.size(); ++i) projectors.push_back(v.projector(i));
  }
  json pairs = json::array();
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j) {
      if (vars[i].dim != vars[j].dim || vars[i].attributes.size() != vars[j].attributes.size()) continue;
      const auto s = superinformation_check(vars[i], vars[j]);
      pairs.push_back({{"z", vars[i].name},
                       {"v", vars[j].name},
                       {"superinformation", s.ok},
                       {"disjoint", s.disjoint},
                       {"union_is_variable", s.union_is_variable},
                       {"max_cross_overlap", s.max_cross_overlap}});
    }
  const Classification c = classify_system(vars);
  json out{{"kind", "classification"}, {"classification", c.name()}, {"variables", per_var}, {"pairs", pairs}};
  if (c.witness) out["witness"] = json::array({vars[c.witness->first].name, vars[c.witness->second].name});
  bool same_dim = true;
  for (const auto& v : vars) same_dim &= v.dim == vars.front().dim;
  if (same_dim) {
    const AlgebraBasis alg = algebra_closure(projectors);
    out["algebra"] = {{"dimension", alg.dimension()}, {"commutative", alg.commutative}};
  }
  return out;
}

ProtocolSpec build_demo(const std::string& name) {
  if (name == "cnot-relay") return build_cnot_relay();
  if (name == "bmv-phase") return build_bmv_phase({0.0, 0.0, 0.0, std::numbers::pi});
  if (name == "nonlocal-cz") return build_nonlocal_demo();
  throw ValidationError("unknown demo '" + name + "' (expected cnot-relay, bmv-phase or nonlocal-cz)");
}

Scenario parse_scenario(const json& j) {
  if (!j.is_object()) throw io::SchemaError("/", "scenario must be a JSON object");
  auto v = j.find("version");
  if (v == j.end()) throw io::SchemaError("/version", "missing required field");
  if (!v->is_number_integer() || v->get<int>() != 1) throw io::SchemaError("/version", "only version 1 is supported");
  std::string kind;
  for (const char* k : {"protocol", "campaign", "variables", "demo"})
    if (j.contains(k)) {
      if (!kind.empty()) throw io::SchemaError(std::string("/") + k, "scenario has more than one payload");
      kind = k;
    }
  if (kind.empty()) throw io::SchemaError("/", "scenario needs one of protocol, campaign, variables, demo");
  return {j, kind};
}

namespace {

CampaignOptions campaign_from_json(const json& c, unsigned workers) {
  const std::string p = "/campaign";
  if (!c.is_object()) throw io::SchemaError(p, "expected an object");
  CampaignOptions o;
  o.workers = workers;
  if (!c.contains("family") || !c["family"].is_string()) throw io::SchemaError(p + "/family", "expected a string");
  try {
    o.family = kind_from_name(c["family"].get<std::string>());
  } catch (const ValidationError& e) {
    throw io::SchemaError(p + "/family", e.what());
  }
  auto uint_field = [&](const char* key, std::uint64_t fallback, bool required) -> std::uint64_t {
    if (!c.contains(key)) {
      if (required) throw io::SchemaError(p + "/" + key, "missing required field");
      return fallback;
    }
    if (!c[key].is_number_unsigned()) throw io::SchemaError(p + "/" + key, "expected a non-negative integer");
    return c[key].get<std::uint64_t>();
  };
  o.samples = uint_field("samples", 0, true);
  if (o.samples < 1) throw io::SchemaError(p + "/samples", "samples must be >= 1");
  o.seed = uint_field("seed", 0, true);
  o.n_steps = uint_field("n_steps", 12, false);
  if (o.n_steps < 1) throw io::SchemaError(p + "/n_steps", "n_steps must be >= 1");
  if (c.contains("thresholds")) {
    const auto& t = c["thresholds"];
    if (!t.is_object()) throw io::SchemaError(p + "/thresholds", "expected an object");
    if (t.contains("negativity")) {
      if (!t["negativity"].is_number() || t["negativity"].get<double>() < 0)
        throw io::SchemaError(p + "/thresholds/negativity", "expected a non-negative number");
      o.tolerance = t["negativity"].get<double>();
    }
  }
  return o;
}

json envelope(const json& scenario_echo, const json& seed, const json& result) {
  return {{"version", 1}, {"tool", kToolVersion}, {"seed", seed}, {"scenario", scenario_echo}, {"result", result}};
}

std::string summarize_classification(const json& r) {
  std::ostringstream os;
  os << "classification: " << r["classification"].get<std::string>();
  if (r.contains("witness")) os << "  witness=(" << r["witness"][0].get<std::string>() << ", "
                                << r["witness"][1].get<std::string>() << ")";
  os << "\n";
  for (const auto& v : r["variables"])
    os << "  " << std::left << std::setw(16) << v["name"].get<std::string>()
       << " information_variable=" << (v["information_variable"].get<bool>() ? "yes" : "no") << "\n";
  if (r.contains("algebra"))
    os << "  algebra dimension " << r["algebra"]["dimension"].get<std::size_t>()
       << (r["algebra"]["commutative"].get<bool>() ? " (commutative)" : " (non-commutative)") << "\n";
  return os.str();
}

}  // namespace

ScenarioResult execute_scenario(const Scenario& scenario, const RunOptions& opts) {
  const json& j = scenario.raw;
  if (scenario.kind == "demo" || scenario.kind == "protocol") {
    ProtocolSpec spec = scenario.kind == "demo"
                            ? [&] {
                                if (!j["demo"].is_string()) throw io::SchemaError("/demo", "expected a demo name");
                                try {
                                  return build_demo(j["demo"].get<std::string>());
                                } catch (const ValidationError& e) {
                                  throw io::SchemaError("/demo", e.what());
                                }
                              }()
                            : io::spec_from_json(j["protocol"], "/protocol");
    const Evaluation e = evaluate(spec);
    json echo{{"version", 1}, {"protocol", io::spec_to_json(spec)}};
    if (scenario.kind == "demo") echo["demo"] = j["demo"];
    return {envelope(echo, nullptr, io::evaluation_to_json(e)), summarize_evaluation(e)};
  }
  if (scenario.kind == "campaign") {
    const CampaignOptions o = campaign_from_json(j["campaign"], opts.workers);
    const CampaignReport r = run_campaign(o);
    json echo{{"version", 1},
              {"campaign",
               {{"family", kind_name(o.family)},
                {"samples", o.samples},
                {"seed", o.seed},
                {"n_steps", o.n_steps},
                {"thresholds", {{"negativity", o.tolerance}}}}}};
    return {envelope(echo, o.seed, campaign_to_json(r)), summarize_campaign(r)};
  }
  const auto vars = io::variables_from_json(j["variables"], "/variables");
  json echo_vars = json::array();
  for (const auto& v : vars) echo_vars.push_back(io::variable_to_json(v));
  const json result = classification_to_json(vars);
  return {envelope({{"version", 1}, {"variables", echo_vars}}, nullptr, result), summarize_classification(result)};
}

json wrap_report(const json& deterministic, double wall_seconds, unsigned workers) {
  return {{"report", deterministic}, {"footer", {{"wall_clock_seconds", wall_seconds}, {"workers", workers}}}};
}

int run_scenario(const std::string& path, const std::string& out_path, const RunOptions& opts, std::ostream& out,
                 std::ostream& err) {
  json raw;
  {
    std::ifstream in(path);
    if (!in) {
      err << "error: cannot read scenario file '" << path << "'\n";
      return kExitValidation;
    }
    try {
      raw = json::parse(in);
    } catch (const json::parse_error& e) {
      err << "error: malformed JSON in '" << path << "': " << e.what() << "\n";
      return kExitValidation;
    }
  }

  const auto start = std::chrono::steady_clock::now();
  ScenarioResult result;
  try {
    result = execute_scenario(parse_scenario(raw), opts);
  } catch (const io::SchemaError& e) {
    err << "error: invalid scenario at " << e.what() << "\n";
    return kExitValidation;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const unsigned workers = opts.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opts.workers;
  const json full = wrap_report(result.report, wall, workers);

  if (out_path.empty()) {
    out << full.dump(2) << "\n";
    if (!opts.quiet) err << result.summary;
  } else {
    std::ofstream f(out_path);
    if (!f) {
      err << "error: cannot write report to '" << out_path << "'\n";
      return kExitValidation;
    }
    f << full.dump(2) << "\n";
    if (!opts.quiet) out << result.summary;
  }
  return kExitOk;
}

std::string summarize_evaluation(const Evaluation& e) {
  const auto& r = e.report;
  std::ostringstream os;
  os << std::fixed << std::setprecision(6);
  os << "protocol " << e.trace.spec.name << "\n";
  os << "verdict: " << verdict_name(r.final_verdict) << "\n";
  os << "  negativity A:B   s+ " << std::setw(10) << r.task.plus.negativity << "   s- " << std::setw(10)
     << r.task.minus.negativity << "\n";
  os << "  e+/e- distance   " << std::setw(10) << r.task.probe_distance << "\n";
  os << "  mediator purity  s+ " << std::setw(10) << r.mediator_purity_plus << "   s- " << std::setw(10)
     << r.mediator_purity_minus << "\n";
  auto row = [&](const char* name, bool ok) { os << "  " << std::left << std::setw(26) << name << (ok ? "pass" : "FAIL") << std::right << "\n"; };
  os << "audits:\n";
  row("task T_E", r.task.ok);
  row("factorization", r.factorization.ok);
  row("locality", r.locality_ok);
  row("classical compatibility", r.classical_ok);
  row("microcausality", r.microcausality_ok);
  row("picture consistency", r.max_picture_error <= kPictureTol);
  if (r.mediator.suppressed) {
    os << "mediator analysis: " << r.mediator.note << "\n";
  } else if (!r.mediator.boundaries.empty()) {
    const auto& b = r.mediator.boundaries.front();
    os << "mediator analysis at " << b.timestamp << " (proxy): rho_M distance " << b.mediator_distance
       << ", joint A+M distance " << b.joint_distance
       << ", non-classical usage " << (r.mediator.non_classical_usage ? "yes" : "no") << "\n";
  }
  return os.str();
}

std::string summarize_campaign(const CampaignReport& r) {
  std::ostringstream os;
  os << "campaign " << kind_name(r.options.family) << "  samples=" << r.options.samples << " seed=" << r.options.seed
     << " steps=" << r.options.n_steps << "\n";
  os << "  max negativity     " << std::scientific << std::setprecision(3) << r.max_negativity << "\n";
  os << "  entangled samples  " << r.entangled_samples << "\n";
  os << "  violations         " << r.violations.size() << " (tolerance " << r.options.tolerance << ")\n";
  for (const auto& [k, v] : r.verdict_counts) os << "  " << std::left << std::setw(28) << k << v << std::right << "\n";
  os << "result: " << (r.pass ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace gwt

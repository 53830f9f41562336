#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "gwt/mediators.hpp"
#include "gwt/nonclassicality.hpp"
#include "gwt/protocol.hpp"

namespace gwt {

inline constexpr const char* kToolVersion = "gwt 0.1.0";
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

struct CampaignOptions {
  MediatorKind family = MediatorKind::ClassicalLocal;
  std::uint64_t samples = 1000;
  std::uint64_t seed = 42;
  std::size_t n_steps = 12;
  double tolerance = 1e-9;
  unsigned workers = 0;  ///< 0 = available parallelism
};

struct SampleOutcome {
  std::uint64_t index = 0;
  double negativity_plus = 0.0;
  double negativity_minus = 0.0;
  FinalVerdict verdict = FinalVerdict::ClassicalConsistent;
  bool non_classical_usage = false;
  bool microcausality_ok = true;
  bool in_family = true;
  double picture_error = 0.0;

  double max_negativity() const { return std::max(negativity_plus, negativity_minus); }
};

/**
 * Aggregate of a sampled campaign.
 *
 * Sample i is generated from the stream (seed, i), so the aggregate is the
 * same for any worker count. A sample violates when either initialization
 * ends with A:B negativity above the tolerance.
 */
struct CampaignReport {
  CampaignOptions options;
  double max_negativity = 0.0;
  double max_picture_error = 0.0;
  std::uint64_t entangled_samples = 0;
  std::map<std::string, std::uint64_t> verdict_counts;
  /// Samples with witness_fires_nonclassical but no non-classical mediator usage.
  std::vector<std::uint64_t> contrapositive_violations;
  std::vector<std::uint64_t> microcausality_failures;
  std::vector<std::uint64_t> family_violations;
  std::vector<SampleOutcome> violations;  ///< sorted by sample index
  bool pass = false;
};

SampleOutcome run_sample(const CampaignOptions& opts, std::uint64_t index);
CampaignReport run_campaign(const CampaignOptions& opts);

nlohmann::json campaign_to_json(const CampaignReport& r);
nlohmann::json classification_to_json(const std::vector<VariableSpec>& vars);

ProtocolSpec build_demo(const std::string& name);

/// Parsed scenario; exactly one payload is set.
struct Scenario {
  nlohmann::json raw;
  std::string kind;  ///< "protocol", "campaign", "variables" or "demo"
};

/// Validates the envelope (version 1, exactly one payload). Throws io::SchemaError.
Scenario parse_scenario(const nlohmann::json& j);

struct RunOptions {
  bool quiet = false;
  unsigned workers = 0;
};

struct ScenarioResult {
  nlohmann::json report;  ///< deterministic section
  std::string summary;    ///< human-readable text
};

/// Runs a validated scenario; throws ValidationError or NumericalError.
ScenarioResult execute_scenario(const Scenario& scenario, const RunOptions& opts);

/// Full report file: {"report": deterministic, "footer": {wall clock, workers}}.
nlohmann::json wrap_report(const nlohmann::json& deterministic, double wall_seconds, unsigned workers);

/**
 * Reads, runs and writes one scenario file.
 *
 * Returns 0 when a verdict was computed, 2 on validation errors (no report
 * is written) and 3 on numerical failures. Without out_path the report goes
 * to `out` and the summary to `err`.
 */
int run_scenario(const std::string& path, const std::string& out_path, const RunOptions& opts, std::ostream& out,
                 std::ostream& err);

/// Summaries used by the CLI.
std::string summarize_evaluation(const Evaluation& e);
std::string summarize_campaign(const CampaignReport& r);

}  // namespace gwt

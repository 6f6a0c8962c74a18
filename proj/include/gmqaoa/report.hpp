#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gmqaoa/core.hpp"
#include "gmqaoa/dla_analytic.hpp"
#include "gmqaoa/simulator.hpp"

namespace gmqaoa {

inline constexpr const char* kToolName = "gmqaoa";
inline constexpr const char* kToolVersion = "0.1.0";

/// "fnv1a64:<16 hex digits>" digest of raw input bytes.
std::string input_digest(std::string_view bytes);

enum class Verdict { Match, Mismatch, NotRun };

std::string to_string(Verdict verdict);
Verdict verdict_from_string(const std::string& text);

/// One prediction-vs-observation comparison.
struct Check {
  std::string name;
  std::optional<double> predicted;
  std::optional<double> observed;
  double tolerance = 0.0;
  Verdict verdict = Verdict::NotRun;

  bool operator==(const Check&) const = default;
};

struct InputDescriptor {
  std::string kind;    ///< maxcut | cnf | coloring | table | uniform | file
  std::string source;  ///< path, empty for built-ins
  std::string digest;  ///< empty for built-ins

  bool operator==(const InputDescriptor&) const = default;
};

struct ProblemDescriptor {
  InputDescriptor input;
  int n = 0;
  int q = 2;
  std::optional<int> colors;
  std::optional<double> threshold;
  bool threshold_strict = false;

  bool operator==(const ProblemDescriptor&) const = default;
};

struct OracleSection {
  std::string mixer;
  std::size_t closure_dim = 0;
  std::size_t closure_rounds = 0;
  bool closure_hit_cap = false;
  double max_residual_discarded = 0.0;
  std::optional<std::size_t> commutant_dim;
  std::optional<double> w0_residual;
  std::optional<double> complement_residual;
  double generator_span_residual = 0.0;
  std::vector<Check> checks;

  bool operator==(const OracleSection&) const = default;
};

struct AnalysisReport {
  std::string tool = kToolName;
  std::string version = kToolVersion;
  std::string command;
  nlohmann::json config;
  ProblemDescriptor problem;
  InputDescriptor init;

  std::size_t dimension = 0;
  std::vector<Level> levels;
  std::optional<std::string> overlap_error;
  std::vector<double> c;
  std::vector<std::size_t> supported_levels;
  std::optional<DlaPrediction> dla;
  std::optional<CommutantPrediction> commutant;
  std::optional<LossStatsPrediction> loss_stats;
  std::optional<std::pair<std::size_t, std::size_t>> isotypic;
  std::optional<OracleSection> oracle;

  bool operator==(const AnalysisReport&) const = default;
};

struct SimulationReport {
  std::string tool = kToolName;
  std::string version = kToolVersion;
  std::string command;
  nlohmann::json config;
  ProblemDescriptor problem;
  InputDescriptor init;
  std::vector<McReport> runs;
  std::optional<double> analytic_mean;
  std::optional<double> analytic_variance;
  std::vector<Check> mean_checks;
  std::vector<Check> variance_checks;

  bool operator==(const SimulationReport&) const = default;
};

/// |estimate - target| <= 3 * stderr; NotRun without a target.
Check within_three_stderr(const std::string& name, std::optional<double> target,
                          double estimate, double stderr_value);

void to_json(nlohmann::json& j, const Level& v);
void from_json(const nlohmann::json& j, Level& v);
void to_json(nlohmann::json& j, const Check& v);
void from_json(const nlohmann::json& j, Check& v);
void to_json(nlohmann::json& j, const InputDescriptor& v);
void from_json(const nlohmann::json& j, InputDescriptor& v);
void to_json(nlohmann::json& j, const ProblemDescriptor& v);
void from_json(const nlohmann::json& j, ProblemDescriptor& v);
void to_json(nlohmann::json& j, const DlaPrediction& v);
void from_json(const nlohmann::json& j, DlaPrediction& v);
void to_json(nlohmann::json& j, const LossStatsPrediction& v);
void from_json(const nlohmann::json& j, LossStatsPrediction& v);
void to_json(nlohmann::json& j, const OracleSection& v);
void from_json(const nlohmann::json& j, OracleSection& v);
void to_json(nlohmann::json& j, const McReport& v);
void from_json(const nlohmann::json& j, McReport& v);
void to_json(nlohmann::json& j, const AnalysisReport& v);
void from_json(const nlohmann::json& j, AnalysisReport& v);
void to_json(nlohmann::json& j, const SimulationReport& v);
void from_json(const nlohmann::json& j, SimulationReport& v);

/// Fixed CSV header shared by `simulate --format csv` and `sweep`.
inline constexpr const char* kSimulationCsvHeader =
    "p,samples,seed,mean,variance,stderr_mean,stderr_variance,analytic_mean,"
    "analytic_variance,mean_verdict,variance_verdict";

std::string to_csv(const SimulationReport& report);
/// Two-column "field,value" rendering of an analysis report.
std::string to_csv(const AnalysisReport& report);

/// RFC 4180 quoting when the field needs it.
std::string csv_field(const std::string& text);
/// Shortest round-trip decimal representation.
std::string format_double(double value);

}  // namespace gmqaoa

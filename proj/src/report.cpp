#include "gmqaoa/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace gmqaoa {

using nlohmann::json;

namespace {

template <typename T>
void put_optional(json& j, const char* key, const std::optional<T>& value) {
  j[key] = value ? json(*value) : json(nullptr);
}

template <typename T>
void get_optional(const json& j, const char* key, std::optional<T>& value) {
  if (j.contains(key) && !j.at(key).is_null()) {
    value = j.at(key).get<T>();
  } else {
    value.reset();
  }
}

}  // namespace

std::string input_digest(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    hash ^= ch;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return std::string("fnv1a64:") + buf;
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Match: return "match";
    case Verdict::Mismatch: return "mismatch";
    case Verdict::NotRun: return "not-run";
  }
  return "not-run";
}

Verdict verdict_from_string(const std::string& text) {
  if (text == "match") return Verdict::Match;
  if (text == "mismatch") return Verdict::Mismatch;
  if (text == "not-run") return Verdict::NotRun;
  throw std::invalid_argument("unknown verdict '" + text + "'");
}

Check within_three_stderr(const std::string& name, std::optional<double> target,
                          double estimate, double stderr_value) {
  Check check;
  check.name = name;
  check.predicted = target;
  check.observed = estimate;
  check.tolerance = 3.0 * stderr_value;
  if (target) {
    check.verdict = std::abs(estimate - *target) <= check.tolerance ? Verdict::Match
                                                                   : Verdict::Mismatch;
  }
  return check;
}

void to_json(json& j, const Level& v) {
  j = json{{"value", v.value}, {"multiplicity", v.multiplicity}};
}
void from_json(const json& j, Level& v) {
  j.at("value").get_to(v.value);
  j.at("multiplicity").get_to(v.multiplicity);
}

void to_json(json& j, const Check& v) {
  j = json{{"name", v.name}, {"tolerance", v.tolerance}, {"verdict", to_string(v.verdict)}};
  put_optional(j, "predicted", v.predicted);
  put_optional(j, "observed", v.observed);
}
void from_json(const json& j, Check& v) {
  j.at("name").get_to(v.name);
  j.at("tolerance").get_to(v.tolerance);
  v.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  get_optional(j, "predicted", v.predicted);
  get_optional(j, "observed", v.observed);
}

void to_json(json& j, const InputDescriptor& v) {
  j = json{{"kind", v.kind}, {"source", v.source}, {"digest", v.digest}};
}
void from_json(const json& j, InputDescriptor& v) {
  j.at("kind").get_to(v.kind);
  j.at("source").get_to(v.source);
  j.at("digest").get_to(v.digest);
}

void to_json(json& j, const ProblemDescriptor& v) {
  j = json{{"input", v.input}, {"n", v.n}, {"q", v.q}, {"threshold_strict", v.threshold_strict}};
  put_optional(j, "colors", v.colors);
  put_optional(j, "threshold", v.threshold);
}
void from_json(const json& j, ProblemDescriptor& v) {
  j.at("input").get_to(v.input);
  j.at("n").get_to(v.n);
  j.at("q").get_to(v.q);
  j.at("threshold_strict").get_to(v.threshold_strict);
  get_optional(j, "colors", v.colors);
  get_optional(j, "threshold", v.threshold);
}

void to_json(json& j, const DlaPrediction& v) {
  j = json{{"d", v.d},
           {"sum_c", v.sum_c},
           {"sum_c_squared", v.sum_c_squared},
           {"branch", to_string(v.branch)},
           {"semisimple", v.semisimple},
           {"abelian", v.abelian},
           {"algebra", v.algebra()},
           {"dim", v.dim},
           {"center_dim", v.center_dim},
           {"degenerate", v.degenerate}};
  put_optional(j, "span_dim", v.span_dim);
}
void from_json(const json& j, DlaPrediction& v) {
  j.at("d").get_to(v.d);
  j.at("sum_c").get_to(v.sum_c);
  j.at("sum_c_squared").get_to(v.sum_c_squared);
  const auto branch = j.at("branch").get<std::string>();
  v.branch = branch == to_string(DlaBranch::SumZero) ? DlaBranch::SumZero
                                                     : DlaBranch::SumNonzero;
  j.at("semisimple").get_to(v.semisimple);
  j.at("abelian").get_to(v.abelian);
  j.at("dim").get_to(v.dim);
  j.at("center_dim").get_to(v.center_dim);
  j.at("degenerate").get_to(v.degenerate);
  get_optional(j, "span_dim", v.span_dim);
}

void to_json(json& j, const LossStatsPrediction& v) {
  j = json{{"zeta_mean", v.zeta_mean}, {"zeta_var", v.zeta_var},
           {"p_su_rho", v.p_su_rho},   {"p_su_hp", v.p_su_hp},
           {"loss_variance", v.loss_variance},
           {"L1", v.L1},               {"L2", v.L2}};
  put_optional(j, "expected_loss", v.expected_loss);
}
void from_json(const json& j, LossStatsPrediction& v) {
  j.at("zeta_mean").get_to(v.zeta_mean);
  j.at("zeta_var").get_to(v.zeta_var);
  j.at("p_su_rho").get_to(v.p_su_rho);
  j.at("p_su_hp").get_to(v.p_su_hp);
  j.at("loss_variance").get_to(v.loss_variance);
  j.at("L1").get_to(v.L1);
  j.at("L2").get_to(v.L2);
  get_optional(j, "expected_loss", v.expected_loss);
}

void to_json(json& j, const OracleSection& v) {
  j = json{{"mixer", v.mixer},
           {"closure_dim", v.closure_dim},
           {"closure_rounds", v.closure_rounds},
           {"closure_hit_cap", v.closure_hit_cap},
           {"max_residual_discarded", v.max_residual_discarded},
           {"generator_span_residual", v.generator_span_residual},
           {"checks", v.checks}};
  put_optional(j, "commutant_dim", v.commutant_dim);
  put_optional(j, "w0_residual", v.w0_residual);
  put_optional(j, "complement_residual", v.complement_residual);
}
void from_json(const json& j, OracleSection& v) {
  j.at("mixer").get_to(v.mixer);
  j.at("closure_dim").get_to(v.closure_dim);
  j.at("closure_rounds").get_to(v.closure_rounds);
  j.at("closure_hit_cap").get_to(v.closure_hit_cap);
  j.at("max_residual_discarded").get_to(v.max_residual_discarded);
  j.at("generator_span_residual").get_to(v.generator_span_residual);
  j.at("checks").get_to(v.checks);
  get_optional(j, "commutant_dim", v.commutant_dim);
  get_optional(j, "w0_residual", v.w0_residual);
  get_optional(j, "complement_residual", v.complement_residual);
}

void to_json(json& j, const McReport& v) {
  j = json{{"p", v.p},
           {"samples", v.samples},
           {"mean", v.mean},
           {"variance", v.variance},
           {"stderr_mean", v.stderr_mean},
           {"stderr_variance", v.stderr_variance},
           {"seed", v.seed}};
}
void from_json(const json& j, McReport& v) {
  j.at("p").get_to(v.p);
  j.at("samples").get_to(v.samples);
  j.at("mean").get_to(v.mean);
  j.at("variance").get_to(v.variance);
  j.at("stderr_mean").get_to(v.stderr_mean);
  j.at("stderr_variance").get_to(v.stderr_variance);
  j.at("seed").get_to(v.seed);
}

void to_json(json& j, const AnalysisReport& v) {
  j = json{{"tool", v.tool},
           {"version", v.version},
           {"command", v.command},
           {"config", v.config},
           {"problem", v.problem},
           {"init", v.init},
           {"spectrum", {{"dimension", v.dimension},
                         {"r", v.levels.size()},
                         {"levels", v.levels}}},
           {"overlaps", {{"d", v.supported_levels.size()},
                         {"c", v.c},
                         {"supported_levels", v.supported_levels}}}};
  put_optional(j["overlaps"], "error", v.overlap_error);
  put_optional(j, "dla", v.dla);
  j["commutant"] = v.commutant ? json{{"dim", v.commutant->dim}} : json(nullptr);
  put_optional(j, "loss_stats", v.loss_stats);
  j["isotypic"] = v.isotypic ? json{{"irreducible_dim", v.isotypic->first},
                                    {"invariant_lines", v.isotypic->second}}
                             : json(nullptr);
  put_optional(j, "oracle", v.oracle);
}
void from_json(const json& j, AnalysisReport& v) {
  j.at("tool").get_to(v.tool);
  j.at("version").get_to(v.version);
  j.at("command").get_to(v.command);
  v.config = j.at("config");
  j.at("problem").get_to(v.problem);
  j.at("init").get_to(v.init);
  j.at("spectrum").at("dimension").get_to(v.dimension);
  j.at("spectrum").at("levels").get_to(v.levels);
  j.at("overlaps").at("c").get_to(v.c);
  j.at("overlaps").at("supported_levels").get_to(v.supported_levels);
  get_optional(j.at("overlaps"), "error", v.overlap_error);
  get_optional(j, "dla", v.dla);
  if (j.contains("commutant") && !j.at("commutant").is_null()) {
    v.commutant = CommutantPrediction{j.at("commutant").at("dim").get<std::size_t>()};
  } else {
    v.commutant.reset();
  }
  get_optional(j, "loss_stats", v.loss_stats);
  if (j.contains("isotypic") && !j.at("isotypic").is_null()) {
    v.isotypic = std::pair{j.at("isotypic").at("irreducible_dim").get<std::size_t>(),
                           j.at("isotypic").at("invariant_lines").get<std::size_t>()};
  } else {
    v.isotypic.reset();
  }
  get_optional(j, "oracle", v.oracle);
}

void to_json(json& j, const SimulationReport& v) {
  j = json{{"tool", v.tool},
           {"version", v.version},
           {"command", v.command},
           {"config", v.config},
           {"problem", v.problem},
           {"init", v.init},
           {"runs", v.runs},
           {"mean_checks", v.mean_checks},
           {"variance_checks", v.variance_checks}};
  put_optional(j, "analytic_mean", v.analytic_mean);
  put_optional(j, "analytic_variance", v.analytic_variance);
}
void from_json(const json& j, SimulationReport& v) {
  j.at("tool").get_to(v.tool);
  j.at("version").get_to(v.version);
  j.at("command").get_to(v.command);
  v.config = j.at("config");
  j.at("problem").get_to(v.problem);
  j.at("init").get_to(v.init);
  j.at("runs").get_to(v.runs);
  j.at("mean_checks").get_to(v.mean_checks);
  j.at("variance_checks").get_to(v.variance_checks);
  get_optional(j, "analytic_mean", v.analytic_mean);
  get_optional(j, "analytic_variance", v.analytic_variance);
}

std::string format_double(double value) {
  if (!std::isfinite(value)) return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

std::string to_csv(const SimulationReport& report) {
  std::ostringstream os;
  os << kSimulationCsvHeader << "\r\n";
  const auto opt = [](const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
  };
  for (std::size_t i = 0; i < report.runs.size(); ++i) {
    const auto& run = report.runs[i];
    os << run.p << ',' << run.samples << ',' << run.seed << ',' << format_double(run.mean)
       << ',' << format_double(run.variance) << ',' << format_double(run.stderr_mean) << ','
       << format_double(run.stderr_variance) << ',' << opt(report.analytic_mean) << ','
       << opt(report.analytic_variance) << ',' << to_string(report.mean_checks[i].verdict)
       << ',' << to_string(report.variance_checks[i].verdict) << "\r\n";
  }
  return os.str();
}

namespace {

// Flattens a JSON document into dotted-path rows.
void flatten(const json& j, const std::string& prefix, std::ostringstream& os) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      flatten(value, prefix.empty() ? key : prefix + "." + key, os);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      flatten(j[i], prefix + "." + std::to_string(i), os);
    }
  } else {
    std::string value;
    if (j.is_string()) {
      value = j.get<std::string>();
    } else if (j.is_number_float()) {
      value = format_double(j.get<double>());
    } else if (!j.is_null()) {
      value = j.dump();
    }
    os << csv_field(prefix) << ',' << csv_field(value) << "\r\n";
  }
}

}  // namespace

std::string to_csv(const AnalysisReport& report) {
  std::ostringstream os;
  os << "field,value\r\n";
  flatten(json(report), "", os);
  return os.str();
}

}  // namespace gmqaoa

#include "gmqaoa/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gmqaoa/core.hpp"
#include "gmqaoa/dla_analytic.hpp"
#include "gmqaoa/errors.hpp"
#include "gmqaoa/lie_oracle.hpp"
#include "gmqaoa/problems.hpp"
#include "gmqaoa/report.hpp"
#include "gmqaoa/simulator.hpp"

namespace gmqaoa {

using nlohmann::json;

namespace {

struct Options {
  std::string maxcut;
  std::string cnf;
  std::string coloring;
  std::string table;
  int colors = 0;
  std::string init = "uniform";
  std::string mixer = "grover";
  std::optional<double> threshold;
  bool threshold_strict = false;
  std::size_t depth = 32;
  std::string depths;
  std::size_t samples = 4096;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  double tol_zero = kDefaultTolZero;
  double tol_norm = kDefaultTolNorm;
  double tol_level = 0.0;
  double tol_indep = kDefaultTolIndep;
  double tol_rank = kDefaultTolRank;
  double tol_residual = 1e-8;
  std::size_t dim_cap = kDefaultClosureCap;
  std::size_t oracle_cap = kOracleDimCap;
  std::string format = "json";
  std::string out;
};

// Everything that determines the report; execution details (threads, output
// path) are left out so reports stay byte-identical across schedules.
json resolved_config(const std::string& command, const Options& o) {
  json j{{"init", o.init},
         {"tol_zero", o.tol_zero},
         {"tol_norm", o.tol_norm},
         {"tol_level", o.tol_level},
         {"format", o.format}};
  if (command == "verify") {
    j["mixer"] = o.mixer;
    j["tol_indep"] = o.tol_indep;
    j["tol_rank"] = o.tol_rank;
    j["tol_residual"] = o.tol_residual;
    j["dim_cap"] = o.dim_cap;
    j["oracle_cap"] = o.oracle_cap;
  }
  if (command == "simulate" || command == "sweep") {
    j["samples"] = o.samples;
    j["seed"] = o.seed;
    j["beta_range"] = json::array({0.0, ParameterRanges{}.beta_max});
    j["gamma_range"] = json::array({0.0, ParameterRanges{}.gamma_max});
  }
  if (command == "simulate") j["depth"] = o.depth;
  if (command == "sweep") j["depths"] = o.depths;
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct LoadedProblem {
  ObjectiveTable objective;
  ProblemDescriptor descriptor;
};

LoadedProblem load_problem(const Options& o) {
  const int given = !o.maxcut.empty() + !o.cnf.empty() + !o.coloring.empty() + !o.table.empty();
  if (given != 1) {
    throw InputError("exactly one of --maxcut, --cnf, --coloring, --table is required");
  }
  ProblemDescriptor desc;
  std::optional<ObjectiveTable> objective;
  if (!o.maxcut.empty()) {
    const auto text = read_file(o.maxcut);
    desc.input = {"maxcut", o.maxcut, input_digest(text)};
    objective = maxcut_objective(parse_graph(text));
  } else if (!o.cnf.empty()) {
    const auto text = read_file(o.cnf);
    desc.input = {"cnf", o.cnf, input_digest(text)};
    objective = cnf_objective(parse_cnf(text));
  } else if (!o.coloring.empty()) {
    if (o.colors < 2) throw InputError("--coloring requires --colors q with q >= 2");
    const auto text = read_file(o.coloring);
    desc.input = {"coloring", o.coloring, input_digest(text)};
    desc.colors = o.colors;
    objective = coloring_objective(parse_graph(text), o.colors);
  } else {
    const auto text = read_file(o.table);
    desc.input = {"table", o.table, input_digest(text)};
    objective = parse_custom_table(text);
  }
  if (o.threshold) {
    objective = threshold_transform(*objective, *o.threshold, o.threshold_strict);
    desc.threshold = o.threshold;
    desc.threshold_strict = o.threshold_strict;
  }
  desc.n = objective->n();
  desc.q = objective->q();
  return {std::move(*objective), std::move(desc)};
}

Complex parse_amplitude(const json& a) {
  if (a.is_number()) return {a.get<double>(), 0.0};
  if (a.is_array() && a.size() == 2 && a[0].is_number() && a[1].is_number()) {
    return {a[0].get<double>(), a[1].get<double>()};
  }
  throw ValidationError("amplitudes must be numbers or [re, im] pairs");
}

std::pair<InitialState, InputDescriptor> load_init(const Options& o, const ObjectiveTable& objective) {
  if (o.init == "uniform") {
    return {uniform_state(objective.n(), objective.q()), InputDescriptor{"uniform", "", ""}};
  }
  const auto text = read_file(o.init);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error&) {
    throw InputError("initial state '" + o.init + "' is not valid JSON");
  }
  const json& list = doc.is_object() && doc.contains("amplitudes") ? doc["amplitudes"] : doc;
  if (!list.is_array()) throw ValidationError("initial state must be a JSON array of amplitudes");
  if (list.size() != objective.size()) {
    throw ValidationError("initial state has " + std::to_string(list.size()) +
                          " amplitudes, expected " + std::to_string(objective.size()));
  }
  Eigen::VectorXcd amps(static_cast<Eigen::Index>(list.size()));
  for (std::size_t i = 0; i < list.size(); ++i) amps(static_cast<Eigen::Index>(i)) = parse_amplitude(list[i]);
  return {InitialState(std::move(amps), o.tol_norm),
          InputDescriptor{"file", o.init, input_digest(text)}};
}

std::vector<std::size_t> parse_depths(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  const auto to_size = [](const std::string& s) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || v == 0) {
      throw InputError("invalid depth '" + s + "'");
    }
    return v;
  };
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_size(item));
    } else {
      const auto lo = to_size(item.substr(0, dots));
      const auto hi = to_size(item.substr(dots + 2));
      if (hi < lo) throw InputError("empty depth range '" + item + "'");
      for (auto p = lo; p <= hi; ++p) out.push_back(p);
    }
  }
  if (out.empty()) throw InputError("--depths must list at least one depth");
  return out;
}

void emit(const Options& o, std::ostream& out, const std::string& body) {
  if (o.out.empty()) {
    out << body;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw InputError("cannot write '" + o.out + "'");
  file << body;
}

AnalysisReport analyze_report(const std::string& command, const Options& o,
                              const LoadedProblem& problem, const InitialState& state,
                              const InputDescriptor& init, const Spectrum& spectrum) {
  AnalysisReport report;
  report.command = command;
  report.config = resolved_config(command, o);
  report.problem = problem.descriptor;
  report.init = init;
  report.dimension = spectrum.dimension();
  report.levels = spectrum.levels;
  try {
    const auto overlaps = decompose_initial_state(state, spectrum, o.tol_zero, o.tol_norm);
    report.c = overlaps.c;
    report.supported_levels = overlaps.supported_levels;
    report.dla = predict_dla(spectrum, overlaps, o.tol_zero);
    report.commutant = predict_commutant(spectrum, overlaps);
    report.loss_stats = predict_loss_stats(spectrum, overlaps, o.tol_zero);
    report.isotypic = isotypic_summary(spectrum, overlaps);
  } catch (const ComplexOverlapError& e) {
    if (command != "verify") throw;
    report.overlap_error = e.what();
  }
  return report;
}

Check exact_check(const std::string& name, std::optional<double> predicted, double observed,
                  double tolerance) {
  Check check{name, predicted, observed, tolerance, Verdict::NotRun};
  if (predicted) check.verdict = *predicted == observed ? Verdict::Match : Verdict::Mismatch;
  return check;
}

Check residual_check(const std::string& name, double observed, double tolerance) {
  return {name, 0.0, observed, tolerance,
          observed < tolerance ? Verdict::Match : Verdict::Mismatch};
}

int cmd_analyze(const Options& o, std::ostream& out) {
  const auto problem = load_problem(o);
  const auto [state, init] = load_init(o, problem.objective);
  const auto spectrum = build_spectrum(problem.objective, o.tol_level);
  const auto report = analyze_report("analyze", o, problem, state, init, spectrum);
  emit(o, out, o.format == "csv" ? to_csv(report) : json(report).dump(2) + "\n");
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const auto problem = load_problem(o);
  if (problem.objective.size() > o.oracle_cap) {
    throw CapExceeded("instance dimension " + std::to_string(problem.objective.size()) +
                      " exceeds the oracle cap " + std::to_string(o.oracle_cap));
  }
  const auto [state, init] = load_init(o, problem.objective);
  const auto spectrum = build_spectrum(problem.objective, o.tol_level);
  auto report = analyze_report("verify", o, problem, state, init, spectrum);

  const auto gens = gm_generators(problem.objective, state, o.oracle_cap);
  std::vector<Eigen::MatrixXcd> generators;
  if (o.mixer == "x") {
    generators.push_back(centered_cost_generator(problem.objective, o.oracle_cap));
    generators.push_back(Complex(0.0, 1.0) *
                         x_mixer_generator(problem.objective.n(), problem.objective.q(), o.oracle_cap));
  } else {
    generators.push_back(gens.i_hp);
    generators.push_back(gens.i_gm);
  }
  const auto closure = lie_closure(generators, o.tol_indep, o.dim_cap);

  OracleSection oracle;
  oracle.mixer = o.mixer;
  oracle.closure_dim = closure.report.dimension;
  oracle.closure_rounds = closure.report.rounds;
  oracle.closure_hit_cap = closure.report.hit_cap;
  oracle.max_residual_discarded = closure.report.max_residual_discarded;
  for (const auto& g : generators) {
    oracle.generator_span_residual =
        std::max(oracle.generator_span_residual, span_residual(closure.basis, g));
  }
  oracle.commutant_dim = commutant_dimension(closure.basis, o.tol_rank, o.oracle_cap);

  const bool grover = o.mixer == "grover";
  const auto iso = isotypic_subspaces(spectrum, state, o.tol_zero);
  oracle.w0_residual = invariant_subspace_residual(closure.basis, iso.w0);
  oracle.complement_residual = eigenline_residual(closure.basis, iso.complement);

  std::optional<double> predicted_dim;
  std::optional<double> predicted_commutant;
  if (grover && report.dla) {
    predicted_dim = static_cast<double>(report.dla->degenerate ? *report.dla->span_dim
                                                               : report.dla->dim);
    predicted_commutant = static_cast<double>(report.commutant->dim);
  }
  auto dim_check = exact_check("dla_dim", predicted_dim,
                               static_cast<double>(oracle.closure_dim), o.tol_indep);
  if (oracle.closure_hit_cap && dim_check.verdict == Verdict::Mismatch &&
      oracle.closure_dim < *predicted_dim) {
    dim_check.verdict = Verdict::NotRun;
  }
  oracle.checks.push_back(dim_check);
  oracle.checks.push_back(exact_check("commutant_dim", predicted_commutant,
                                      static_cast<double>(*oracle.commutant_dim), o.tol_rank));
  if (grover) {
    oracle.checks.push_back(residual_check("w0_invariant", *oracle.w0_residual, o.tol_residual));
    oracle.checks.push_back(
        residual_check("complement_lines", *oracle.complement_residual, o.tol_residual));
  } else {
    oracle.checks.push_back({"w0_invariant", std::nullopt, *oracle.w0_residual, o.tol_residual,
                             Verdict::NotRun});
    oracle.checks.push_back({"complement_lines", std::nullopt, *oracle.complement_residual,
                             o.tol_residual, Verdict::NotRun});
  }
  oracle.checks.push_back(
      residual_check("generators_in_closure", oracle.generator_span_residual, o.tol_indep));
  report.oracle = oracle;

  emit(o, out, o.format == "csv" ? to_csv(report) : json(report).dump(2) + "\n");
  const bool mismatch = std::any_of(oracle.checks.begin(), oracle.checks.end(),
                                    [](const Check& c) { return c.verdict == Verdict::Mismatch; });
  return mismatch ? kExitMismatch : kExitOk;
}

int cmd_simulate(const std::string& command, const Options& o, std::ostream& out) {
  if (o.samples < 2) throw InputError("--samples must be at least 2");
  const auto depths = command == "sweep" ? parse_depths(o.depths)
                                         : std::vector<std::size_t>{o.depth};
  if (depths.front() < 1) throw InputError("--depth must be at least 1");
  const auto problem = load_problem(o);
  const auto [state, init] = load_init(o, problem.objective);
  const auto spectrum = build_spectrum(problem.objective, o.tol_level);

  SimulationReport report;
  report.command = command;
  report.config = resolved_config(command, o);
  report.problem = problem.descriptor;
  report.init = init;
  try {
    const auto overlaps = decompose_initial_state(state, spectrum, o.tol_zero, o.tol_norm);
    const auto stats = predict_loss_stats(spectrum, overlaps, o.tol_zero);
    report.analytic_mean = stats.expected_loss;
    report.analytic_variance = stats.loss_variance;
  } catch (const ComplexOverlapError&) {
    // Estimates are still meaningful; the analytic targets are not defined.
  }
  McOptions mc;
  mc.threads = o.threads;
  report.runs = depth_sweep(state, problem.objective, depths, o.samples, o.seed, mc);
  for (const auto& run : report.runs) {
    report.mean_checks.push_back(
        within_three_stderr("mean", report.analytic_mean, run.mean, run.stderr_mean));
    report.variance_checks.push_back(within_three_stderr(
        "variance", report.analytic_variance, run.variance, run.stderr_variance));
  }
  const bool csv = command == "sweep" || o.format == "csv";
  emit(o, out, csv ? to_csv(report) : json(report).dump(2) + "\n");
  return kExitOk;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--maxcut", o.maxcut, "MaxCut graph file");
  sub->add_option("--cnf", o.cnf, "DIMACS CNF file");
  sub->add_option("--coloring", o.coloring, "graph file for q-coloring");
  sub->add_option("--colors", o.colors, "number of colors for --coloring");
  sub->add_option("--table", o.table, "custom objective table (JSON)");
  sub->add_option("--init", o.init, "initial state: uniform or a JSON amplitude file");
  sub->add_option("--threshold", o.threshold, "replace F by the indicator F >= t");
  sub->add_flag("--threshold-strict", o.threshold_strict, "use F > t for --threshold");
  sub->add_option("--tol-zero", o.tol_zero, "level support / sum-of-coefficients tolerance");
  sub->add_option("--tol-norm", o.tol_norm, "initial-state normalization tolerance");
  sub->add_option("--tol-level", o.tol_level, "tie tolerance for grouping objective values");
  sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", o.out, "write the report to FILE");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"GM-QAOA Lie-algebra predictions and numerical verification", kToolName};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  Options o;

  auto* analyze = app.add_subcommand("analyze", "closed-form predictions");
  add_common(analyze, o);

  auto* verify = app.add_subcommand("verify", "predictions checked against the Lie-closure oracle");
  add_common(verify, o);
  verify->add_option("--mixer", o.mixer, "grover or x")->check(CLI::IsMember({"grover", "x"}));
  verify->add_option("--tol-indep", o.tol_indep, "closure independence tolerance");
  verify->add_option("--tol-rank", o.tol_rank, "commutant null-eigenvalue threshold");
  verify->add_option("--tol-residual", o.tol_residual, "invariant-subspace residual tolerance");
  verify->add_option("--dim-cap", o.dim_cap, "maximum closure dimension");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo loss statistics");
  add_common(simulate, o);
  simulate->add_option("--depth", o.depth, "circuit depth p");

  auto* sweep = app.add_subcommand("sweep", "Monte Carlo statistics over several depths (CSV)");
  add_common(sweep, o);
  sweep->add_option("--depths", o.depths, "comma-separated depths, a..b ranges allowed")->required();

  for (auto* sub : {simulate, sweep}) {
    sub->add_option("--samples", o.samples, "parameter samples M");
    sub->add_option("--seed", o.seed, "master seed");
    sub->add_option("--threads", o.threads, "worker threads (does not affect results)");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInput;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (simulate->parsed()) return cmd_simulate("simulate", o, out);
    return cmd_simulate("sweep", o, out);
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return verify->parsed() ? kExitCap : kExitInput;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

}  // namespace gmqaoa

#include "gmqaoa/problems.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <string>

#include <json.hpp>

#include "gmqaoa/errors.hpp"

namespace gmqaoa {

Graph::Graph(int vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  if (vertex_count_ < 1) throw ValidationError("graph needs at least one vertex");
  std::set<Edge> seen;
  for (const auto& [u, v] : edges_) {
    if (u < 1 || v < 1 || u > vertex_count_ || v > vertex_count_) {
      throw ValidationError("edge (" + std::to_string(u) + ", " +
                            std::to_string(v) + ") has an endpoint outside 1.." +
                            std::to_string(vertex_count_));
    }
    if (u == v) {
      throw ValidationError("self-loop at vertex " + std::to_string(u));
    }
    if (!seen.insert(std::minmax(u, v)).second) {
      throw ValidationError("duplicate edge (" + std::to_string(u) + ", " +
                            std::to_string(v) + ")");
    }
  }
}

CnfFormula::CnfFormula(int variable_count, std::vector<Clause> clauses)
    : variable_count_(variable_count), clauses_(std::move(clauses)) {
  if (variable_count_ < 1) {
    throw ValidationError("formula needs at least one variable");
  }
  for (std::size_t k = 0; k < clauses_.size(); ++k) {
    if (clauses_[k].empty()) {
      throw ValidationError("clause " + std::to_string(k + 1) + " is empty");
    }
    for (int lit : clauses_[k]) {
      if (lit == 0 || std::abs(lit) > variable_count_) {
        throw ValidationError("literal " + std::to_string(lit) + " in clause " +
                              std::to_string(k + 1) +
                              " references a variable outside 1.." +
                              std::to_string(variable_count_));
      }
    }
  }
}

Graph path_graph(int n) {
  std::vector<Graph::Edge> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back(v, v + 1);
  return Graph(n, std::move(edges));
}

Graph cycle_graph(int n) {
  std::vector<Graph::Edge> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back(v, v + 1);
  if (n >= 3) edges.emplace_back(n, 1);
  return Graph(n, std::move(edges));
}

Graph complete_graph(int n) {
  std::vector<Graph::Edge> edges;
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) edges.emplace_back(u, v);
  return Graph(n, std::move(edges));
}

Graph house_graph() {
  return Graph(5, {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {1, 5}, {4, 5}});
}

ObjectiveTable maxcut_objective(const Graph& graph, std::uint64_t limit) {
  const auto dim = dense_size(graph.vertex_count(), 2, limit);
  std::vector<double> values(dim, 0.0);
  for (std::size_t x = 0; x < dim; ++x) {
    int cut = 0;
    for (const auto& [u, v] : graph.edges()) {
      cut += static_cast<int>(((x >> (u - 1)) ^ (x >> (v - 1))) & 1u);
    }
    values[x] = cut;
  }
  return ObjectiveTable(graph.vertex_count(), 2, std::move(values), limit);
}

ObjectiveTable coloring_objective(const Graph& graph, int q,
                                  std::uint64_t limit) {
  const int n = graph.vertex_count();
  const auto dim = dense_size(n, q, limit);
  std::vector<double> values(dim, 0.0);
  for (std::size_t x = 0; x < dim; ++x) {
    const auto colors = decode_string(x, n, q);
    int violations = 0;
    for (const auto& [u, v] : graph.edges()) {
      violations += colors[u - 1] == colors[v - 1];
    }
    values[x] = violations;
  }
  return ObjectiveTable(n, q, std::move(values), limit);
}

ObjectiveTable cnf_objective(const CnfFormula& formula, std::uint64_t limit) {
  const auto dim = dense_size(formula.variable_count(), 2, limit);
  std::vector<double> values(dim, 0.0);
  for (std::size_t x = 0; x < dim; ++x) {
    int falsified = 0;
    for (const auto& clause : formula.clauses()) {
      const bool satisfied = std::any_of(clause.begin(), clause.end(), [x](int lit) {
        const bool value = (x >> (std::abs(lit) - 1)) & 1u;
        return lit > 0 ? value : !value;
      });
      falsified += !satisfied;
    }
    values[x] = falsified;
  }
  return ObjectiveTable(formula.variable_count(), 2, std::move(values), limit);
}

ObjectiveTable threshold_transform(const ObjectiveTable& objective, double t,
                                   bool strict) {
  std::vector<double> values(objective.size());
  for (std::size_t x = 0; x < values.size(); ++x) {
    const double f = objective[x];
    values[x] = (strict ? f > t : f >= t) ? 1.0 : 0.0;
  }
  return ObjectiveTable(objective.n(), objective.q(), std::move(values),
                        std::numeric_limits<std::uint64_t>::max());
}

namespace {

struct Token {
  std::string_view text;
  std::size_t line;
  std::size_t column;
};

// Splits one line into whitespace-separated tokens with 1-based columns.
std::vector<Token> tokenize(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const auto start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back({line.substr(start, i - start), line_no, start + 1});
  }
  return out;
}

template <typename F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t line_no = 1;
  while (!text.empty()) {
    const auto end = text.find('\n');
    auto line = text.substr(0, end);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    f(line, line_no);
    if (end == std::string_view::npos) break;
    text.remove_prefix(end + 1);
    ++line_no;
  }
}

int to_int(const Token& tok) {
  int value = 0;
  const auto* first = tok.text.data();
  const auto* last = first + tok.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("expected an integer, got '" + std::string(tok.text) + "'",
                     tok.line, tok.column);
  }
  return value;
}

std::size_t count_lines(std::string_view text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) + 1;
}

}  // namespace

Graph parse_graph(std::string_view text) {
  bool have_header = false;
  int n = 0;
  int m = 0;
  std::vector<Graph::Edge> edges;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    const auto tokens = tokenize(line, line_no);
    if (tokens.empty() || tokens.front().text.front() == '#') return;
    if (tokens.size() != 2) {
      throw ParseError(have_header ? "expected an edge line 'u v'"
                                   : "expected a header line 'n m'",
                       line_no, tokens.front().column);
    }
    const int a = to_int(tokens[0]);
    const int b = to_int(tokens[1]);
    if (!have_header) {
      if (a < 1) throw ParseError("vertex count must be positive", line_no, tokens[0].column);
      if (b < 0) throw ParseError("edge count must be non-negative", line_no, tokens[1].column);
      n = a;
      m = b;
      have_header = true;
      return;
    }
    if (static_cast<int>(edges.size()) == m) {
      throw ParseError("more edge lines than the header declares", line_no,
                       tokens.front().column);
    }
    edges.emplace_back(a, b);
  });
  if (!have_header) throw ParseError("missing header line 'n m'", count_lines(text), 1);
  if (static_cast<int>(edges.size()) != m) {
    throw ParseError("header declares " + std::to_string(m) + " edges, found " +
                         std::to_string(edges.size()),
                     count_lines(text), 1);
  }
  return Graph(n, std::move(edges));
}

CnfFormula parse_cnf(std::string_view text) {
  bool have_header = false;
  bool stopped = false;
  int variables = 0;
  int declared = 0;
  std::vector<CnfFormula::Clause> clauses;
  CnfFormula::Clause current;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    if (stopped) return;
    const auto tokens = tokenize(line, line_no);
    if (tokens.empty() || tokens.front().text == "c" ||
        tokens.front().text.front() == 'c') {
      return;
    }
    if (tokens.front().text == "%") {
      stopped = true;
      return;
    }
    if (tokens.front().text == "p") {
      if (have_header) throw ParseError("duplicate problem line", line_no, 1);
      if (tokens.size() != 4 || tokens[1].text != "cnf") {
        throw ParseError("expected 'p cnf <variables> <clauses>'", line_no,
                         tokens.front().column);
      }
      variables = to_int(tokens[2]);
      declared = to_int(tokens[3]);
      if (variables < 1) throw ParseError("variable count must be positive", line_no, tokens[2].column);
      if (declared < 0) throw ParseError("clause count must be non-negative", line_no, tokens[3].column);
      have_header = true;
      return;
    }
    if (!have_header) {
      throw ParseError("clause before the problem line", line_no, tokens.front().column);
    }
    for (const auto& tok : tokens) {
      const int lit = to_int(tok);
      if (lit == 0) {
        clauses.push_back(std::move(current));
        current.clear();
      } else {
        current.push_back(lit);
      }
    }
  });
  if (!have_header) throw ParseError("missing problem line 'p cnf V C'", count_lines(text), 1);
  if (!current.empty()) clauses.push_back(std::move(current));
  if (static_cast<int>(clauses.size()) != declared) {
    throw ParseError("problem line declares " + std::to_string(declared) +
                         " clauses, found " + std::to_string(clauses.size()),
                     count_lines(text), 1);
  }
  return CnfFormula(variables, std::move(clauses));
}

ObjectiveTable parse_custom_table(std::string_view text, std::uint64_t limit) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto offset = std::min<std::size_t>(e.byte, text.size());
    const auto before = text.substr(0, offset > 0 ? offset - 1 : 0);
    const auto line = static_cast<std::size_t>(std::count(before.begin(), before.end(), '\n')) + 1;
    const auto nl = before.rfind('\n');
    const auto column = nl == std::string_view::npos ? before.size() + 1 : before.size() - nl;
    throw ParseError("invalid JSON objective table", line, column);
  }
  if (!doc.is_object() || !doc.contains("q") || !doc.contains("n") ||
      !doc.contains("values")) {
    throw ValidationError("objective table must be an object with keys q, n, values");
  }
  if (!doc["q"].is_number_integer() || !doc["n"].is_number_integer() ||
      !doc["values"].is_array()) {
    throw ValidationError("objective table: q and n must be integers, values an array");
  }
  std::vector<double> values;
  values.reserve(doc["values"].size());
  for (const auto& v : doc["values"]) {
    if (!v.is_number()) throw ValidationError("objective table values must be numbers");
    values.push_back(v.get<double>());
  }
  return ObjectiveTable(doc["n"].get<int>(), doc["q"].get<int>(), std::move(values),
                        limit);
}

}  // namespace gmqaoa

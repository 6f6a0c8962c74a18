#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "gmqaoa/core.hpp"

namespace gmqaoa {

/// Simple undirected graph with 1-indexed vertices.
class Graph {
 public:
  using Edge = std::pair<int, int>;

  /// Rejects self-loops, out-of-range endpoints and duplicate edges.
  Graph(int vertex_count, std::vector<Edge> edges);

  int vertex_count() const noexcept { return vertex_count_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

 private:
  int vertex_count_;
  std::vector<Edge> edges_;
};

/// CNF formula with DIMACS-signed literals.
class CnfFormula {
 public:
  using Clause = std::vector<int>;

  CnfFormula(int variable_count, std::vector<Clause> clauses);

  int variable_count() const noexcept { return variable_count_; }
  const std::vector<Clause>& clauses() const noexcept { return clauses_; }

 private:
  int variable_count_;
  std::vector<Clause> clauses_;
};

Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
/// Square 1-2-3-4 with roof vertex 5 joined to 1 and 4.
Graph house_graph();

/// Number of cut edges; site k of the string is vertex k+1.
ObjectiveTable maxcut_objective(const Graph& graph,
                                std::uint64_t limit = kDefaultDenseLimit);

/// Number of monochromatic edges under a q-coloring (one dit per vertex).
ObjectiveTable coloring_objective(const Graph& graph, int q,
                                  std::uint64_t limit = kDefaultDenseLimit);

/// Number of falsified clauses; variable v is site v-1, digit 1 means true.
ObjectiveTable cnf_objective(const CnfFormula& formula,
                             std::uint64_t limit = kDefaultDenseLimit);

/// 1 where F(x) >= t (or F(x) > t when strict), else 0.
ObjectiveTable threshold_transform(const ObjectiveTable& objective, double t,
                                   bool strict = false);

/// "n m" header then m lines "u v"; '#' lines are comments.
Graph parse_graph(std::string_view text);
/// DIMACS cnf.
CnfFormula parse_cnf(std::string_view text);
/// JSON {"q": int, "n": int, "values": [...]}.
ObjectiveTable parse_custom_table(std::string_view text,
                                  std::uint64_t limit = kDefaultDenseLimit);

}  // namespace gmqaoa

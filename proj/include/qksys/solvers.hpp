#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qksys/hypergraph.hpp"

namespace qksys {

// Vertex -> color assignment with dense color ids starting at 0.
struct Coloring {
  std::vector<int> assignment;
  int num_colors = 0;
  std::string method;
  std::uint64_t seed = 0;
  nlohmann::json provenance = nlohmann::json::object();
};

struct ColoringCheck {
  bool proper = false;
  std::optional<std::vector<int>> violation;  // lexicographically least monochromatic edge
};

struct SolveResult {
  std::int64_t value = 0;
  bool exact = false;
  std::int64_t nodes_explored = 0;
  bool budget_exhausted = false;
  std::vector<int> witness_set;   // independence witness
  Coloring witness_coloring;      // chromatic witness
};

// Proper iff no edge has all k vertices in one color class. UncoloredVertex
// if the assignment does not cover every vertex.
ColoringCheck verify_coloring(const KGraph& graph, const Coloring& coloring);

// Branch and bound over vertices in ascending id order; exact with a witness
// when the node budget suffices, otherwise the best lower bound found with
// exact = false.
SolveResult exact_independence_number(const KGraph& graph,
                                      std::int64_t node_budget = 10'000'000);

// Iterative deepening on the color count with symmetry breaking (vertex 0
// gets color 0, new colors introduced in increasing order). On budget
// exhaustion during round c the result carries value = c as a lower bound
// with exact = false.
SolveResult exact_chromatic_number(const KGraph& graph,
                                   std::int64_t node_budget = 10'000'000);

// Random palette of ceil(m^(1/k)) colors, then repair: scan monochromatic
// edges in lexicographic order and move the least vertex of each surviving
// one into a fresh singleton color. Always proper.
Coloring greedy_coloring(const KGraph& graph, std::uint64_t seed);

// Two-phase coloring of a 1-system's k-graph: split vertices at degree
// threshold d = ceil(sqrt(e) * q^(k-1)), color the low-degree side and the
// high-degree side with disjoint palettes (cross edges can then never be
// monochromatic). NotOneSystem unless ell == 1.
Coloring split_coloring(const CliqueSystem& system, int k, std::uint64_t seed);

// Randomized min-degree greedy; the returned set is verified independent.
std::vector<int> greedy_independent_set(const KGraph& graph, std::uint64_t seed);

}  // namespace qksys

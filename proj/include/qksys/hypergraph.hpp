#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <json.hpp>

namespace qksys {

// A family of q-vertex cliques over vertex ids [0, n) that pairwise share at
// most ell vertices. Cliques are stored strictly sorted; the list keeps
// construction order (meaningful for process traces) and must be
// duplicate-free. Immutable by convention after construction.
struct CliqueSystem {
  int n = 0;
  int q = 0;
  int ell = 0;
  std::vector<std::vector<int>> cliques;
  nlohmann::json provenance = nlohmann::json::object();
};

// k-uniform hypergraph in canonical form: every edge strictly sorted, the
// edge list lexicographically sorted and deduplicated, so equality and
// serialization are well-defined.
struct KGraph {
  int n = 0;
  int k = 0;
  std::vector<std::vector<int>> edges;
  nlohmann::json provenance = nlohmann::json::object();
};

struct DegreeReport {
  std::vector<std::int64_t> degrees;
  std::int64_t max_degree = 0;
  double average_degree = 0.0;
  std::int64_t max_codegree = 0;
};

struct EllValidation {
  int max_pairwise_intersection = 0;
  bool ok = false;
};

// Three edges {a,b,x}, {a,b,y}, {a,b,z} over the same base pair.
struct Cherry {
  int a = 0;
  int b = 0;
  std::array<int, 3> apexes{};
};

// Canonicalizing constructors; throw MalformedClique on wrong sizes,
// out-of-range ids, repeated vertices, or (for clique systems) duplicate
// cliques.
CliqueSystem make_clique_system(int n, int q, int ell,
                                std::vector<std::vector<int>> cliques,
                                nlohmann::json provenance = nlohmann::json::object());
KGraph make_kgraph(int n, int k, std::vector<std::vector<int>> edges,
                   nlohmann::json provenance = nlohmann::json::object());

// Exact maximum over all clique pairs of the intersection size, bitset-based
// for n <= 4096 and sorted-merge based above.
EllValidation validate_ell_system(const CliqueSystem& system);

// Deduplicated union of all k-subsets of arbitrary vertex sets (sets smaller
// than k contribute nothing).
KGraph kgraph_from_sets(int n, int k, const std::vector<std::vector<int>>& sets,
                        nlohmann::json provenance = nlohmann::json::object());

// Union of the k-subsets of every clique; BadUniformity unless 1 <= k <= q.
KGraph expand_to_kgraph(const CliqueSystem& system, int k);

DegreeReport degree_report(const KGraph& graph);

// All cherries of a 3-graph, ordered by base pair then apex triple.
std::vector<Cherry> find_cherries(const KGraph& graph);

// Keep each vertex independently with probability prob, drop edges touching
// removed vertices, and compact ids; the old ids of kept vertices are
// recorded in provenance["kept"].
KGraph random_induced(const KGraph& graph, double prob, std::uint64_t seed);

}  // namespace qksys

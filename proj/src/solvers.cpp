#include "qksys/solvers.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "qksys/bitset.hpp"
#include "qksys/errors.hpp"
#include "qksys/rng.hpp"
#include "qksys/util.hpp"

namespace qksys {

namespace {

void check_assignment(const KGraph& graph, const Coloring& coloring) {
  if (static_cast<int>(coloring.assignment.size()) < graph.n) {
    throw UncoloredVertex("assignment covers " + std::to_string(coloring.assignment.size()) +
                          " of " + std::to_string(graph.n) + " vertices");
  }
  for (int v = 0; v < graph.n; ++v) {
    if (coloring.assignment[v] < 0) {
      throw UncoloredVertex("vertex " + std::to_string(v) + " is uncolored");
    }
  }
}

// Shared incremental state for independence search: cnt[e] counts chosen
// vertices of edge e, and forbid[v] counts edges that v would complete.
struct IndependenceState {
  const KGraph& graph;
  std::vector<std::vector<int>> edges_at;  // vertex -> incident edge indices
  std::vector<int> cnt;
  std::vector<int> forbid;
  Bitset chosen;

  explicit IndependenceState(const KGraph& g)
      : graph(g), edges_at(g.n), cnt(g.edges.size(), 0), forbid(g.n, 0), chosen(g.n) {
    for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
      for (int v : g.edges[ei]) edges_at[v].push_back(static_cast<int>(ei));
    }
  }

  void add(int v) {
    chosen.set(v);
    for (int ei : edges_at[v]) {
      if (++cnt[ei] == graph.k - 1) {
        for (int u : graph.edges[ei]) {
          if (!chosen.test(u)) {
            ++forbid[u];
            break;
          }
        }
      }
    }
  }

  void remove(int v) {
    for (int ei : edges_at[v]) {
      if (cnt[ei] == graph.k - 1) {
        for (int u : graph.edges[ei]) {
          if (!chosen.test(u)) {
            --forbid[u];
            break;
          }
        }
      }
      --cnt[ei];
    }
    chosen.reset(v);
  }
};

bool is_independent(const KGraph& graph, const std::vector<int>& set) {
  Bitset mask(graph.n);
  for (int v : set) mask.set(v);
  for (const auto& e : graph.edges) {
    bool inside = true;
    for (int v : e) {
      if (!mask.test(v)) {
        inside = false;
        break;
      }
    }
    if (inside) return false;
  }
  return true;
}

}  // namespace

ColoringCheck verify_coloring(const KGraph& graph, const Coloring& coloring) {
  check_assignment(graph, coloring);
  for (const auto& e : graph.edges) {  // edges are lex sorted
    const int c = coloring.assignment[e[0]];
    bool mono = true;
    for (int v : e) {
      if (coloring.assignment[v] != c) {
        mono = false;
        break;
      }
    }
    if (mono) return ColoringCheck{false, e};
  }
  return ColoringCheck{true, std::nullopt};
}

SolveResult exact_independence_number(const KGraph& graph, std::int64_t node_budget) {
  if (graph.k < 2) throw BadUniformity("independence search needs k >= 2");
  SolveResult result;
  IndependenceState st(graph);
  std::vector<int> current;
  std::vector<int> best;
  bool exhausted = false;
  std::int64_t nodes = 0;

  auto dfs = [&](auto&& self, int start) -> void {
    if (++nodes > node_budget) {
      exhausted = true;
      return;
    }
    if (current.size() > best.size()) best = current;
    for (int v = start; v < graph.n; ++v) {
      if (exhausted) return;
      if (static_cast<std::int64_t>(current.size()) + (graph.n - v) <=
          static_cast<std::int64_t>(best.size())) {
        break;  // not enough vertices left to improve
      }
      if (st.forbid[v] != 0) continue;
      current.push_back(v);
      st.add(v);
      self(self, v + 1);
      st.remove(v);
      current.pop_back();
    }
  };
  dfs(dfs, 0);

  result.value = static_cast<std::int64_t>(best.size());
  result.witness_set = best;
  result.nodes_explored = nodes;
  result.budget_exhausted = exhausted;
  result.exact = !exhausted;
  return result;
}

SolveResult exact_chromatic_number(const KGraph& graph, std::int64_t node_budget) {
  if (graph.k < 2) throw BadUniformity("chromatic search needs k >= 2");
  SolveResult result;
  if (graph.n == 0) {
    result.value = 0;
    result.exact = true;
    return result;
  }

  // Edges indexed at their maximum vertex: an edge can only become
  // monochromatic when its last vertex is assigned.
  std::vector<std::vector<int>> edges_ending_at(graph.n);
  for (std::size_t ei = 0; ei < graph.edges.size(); ++ei) {
    edges_ending_at[graph.edges[ei].back()].push_back(static_cast<int>(ei));
  }

  std::vector<int> colors(graph.n, -1);
  std::int64_t nodes = 0;
  bool exhausted = false;

  auto feasible = [&](int v, int col) {
    for (int ei : edges_ending_at[v]) {
      const auto& e = graph.edges[ei];
      bool mono = true;
      for (std::size_t i = 0; i + 1 < e.size(); ++i) {
        if (colors[e[i]] != col) {
          mono = false;
          break;
        }
      }
      if (mono) return false;
    }
    return true;
  };

  auto dfs = [&](auto&& self, int v, int introduced, int c) -> bool {
    if (v == graph.n) return true;
    if (++nodes > node_budget) {
      exhausted = true;
      return false;
    }
    const int limit = std::min(introduced, c - 1);
    for (int col = 0; col <= limit; ++col) {
      if (!feasible(v, col)) continue;
      colors[v] = col;
      if (self(self, v + 1, std::max(introduced, col + 1), c)) return true;
      colors[v] = -1;
      if (exhausted) return false;
    }
    return false;
  };

  for (int c = 1; c <= graph.n; ++c) {
    std::fill(colors.begin(), colors.end(), -1);
    if (dfs(dfs, 0, 0, c)) {
      result.value = c;
      result.exact = true;
      result.nodes_explored = nodes;
      result.witness_coloring =
          Coloring{colors, c, "exact_backtracking", 0, nlohmann::json::object()};
      const ColoringCheck check = verify_coloring(graph, result.witness_coloring);
      if (!check.proper) throw std::logic_error("backtracking produced an improper coloring");
      return result;
    }
    if (exhausted) {
      result.value = c;  // all counts below c were refuted completely
      result.exact = false;
      result.budget_exhausted = true;
      result.nodes_explored = nodes;
      return result;
    }
  }
  throw std::logic_error("chromatic search failed to terminate");
}

namespace {

// Shared phase primitive: random palette of palette_size colors on the given
// vertices (offset by color_base), then lexicographic repair of edges that
// stay monochromatic, using fresh colors from *next_fresh. Returns the
// number of phase-1 monochromatic edges.
int palette_and_repair(const std::vector<std::vector<int>>& edges,
                       const std::vector<int>& vertices, int palette_size, int color_base,
                       int* next_fresh, std::vector<int>& colors, Rng& rng) {
  for (int v : vertices) {
    colors[v] = color_base + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(palette_size)));
  }
  std::vector<int> mono;
  for (std::size_t ei = 0; ei < edges.size(); ++ei) {
    const auto& e = edges[ei];
    bool same = true;
    for (std::size_t i = 1; i < e.size(); ++i) {
      if (colors[e[i]] != colors[e[0]]) {
        same = false;
        break;
      }
    }
    if (same) mono.push_back(static_cast<int>(ei));
  }
  for (int ei : mono) {
    const auto& e = edges[ei];
    bool still = true;
    for (std::size_t i = 1; i < e.size(); ++i) {
      if (colors[e[i]] != colors[e[0]]) {
        still = false;
        break;
      }
    }
    if (still) colors[e[0]] = (*next_fresh)++;  // e is sorted; e[0] is least
  }
  return static_cast<int>(mono.size());
}

// Remap colors to dense ids in order of first appearance by vertex id.
int densify(std::vector<int>& colors) {
  std::vector<int> remap;
  std::vector<int> lookup;
  for (int& c : colors) {
    if (c >= static_cast<int>(lookup.size())) lookup.resize(c + 1, -1);
    if (lookup[c] < 0) {
      lookup[c] = static_cast<int>(remap.size());
      remap.push_back(c);
    }
    c = lookup[c];
  }
  return static_cast<int>(remap.size());
}

}  // namespace

Coloring greedy_coloring(const KGraph& graph, std::uint64_t seed) {
  Coloring col;
  col.method = "greedy_random_repair";
  col.seed = seed;
  col.assignment.assign(graph.n, 0);
  const std::int64_t m = static_cast<std::int64_t>(graph.edges.size());
  if (m == 0) {
    col.num_colors = graph.n > 0 ? 1 : 0;
    col.provenance["palette"] = 1;
    col.provenance["phase1_monochromatic"] = 0;
    return col;
  }
  const int palette = static_cast<int>(ceil_root(m, graph.k));
  Rng rng(seed);
  std::vector<int> vertices(graph.n);
  for (int v = 0; v < graph.n; ++v) vertices[v] = v;
  int next_fresh = palette;
  const int mono =
      palette_and_repair(graph.edges, vertices, palette, 0, &next_fresh, col.assignment, rng);
  col.num_colors = densify(col.assignment);
  col.provenance["palette"] = palette;
  col.provenance["phase1_monochromatic"] = mono;
  col.provenance["repairs"] = next_fresh - palette;
  const ColoringCheck check = verify_coloring(graph, col);
  if (!check.proper) throw std::logic_error("greedy coloring produced an improper coloring");
  if (col.num_colors > palette + mono) {
    throw std::logic_error("greedy coloring exceeded its palette + repairs bound");
  }
  return col;
}

Coloring split_coloring(const CliqueSystem& system, int k, std::uint64_t seed) {
  if (system.ell != 1) throw NotOneSystem("split coloring requires a 1-system (ell == 1)");
  if (k < 2 || k > system.q) throw BadUniformity("need 2 <= k <= q");

  const KGraph graph = expand_to_kgraph(system, k);
  const DegreeReport deg = degree_report(graph);
  const std::int64_t e = static_cast<std::int64_t>(system.cliques.size());
  std::int64_t qpow = 1;
  for (int i = 0; i < k - 1; ++i) qpow *= system.q;
  const std::int64_t d = ceil_sqrt(e * qpow * qpow);  // ceil(sqrt(e) * q^(k-1))

  std::vector<int> side_a, side_b;
  std::vector<char> in_b(graph.n, 0);
  for (int v = 0; v < graph.n; ++v) {
    if (deg.degrees[v] <= d) {
      side_a.push_back(v);
    } else {
      side_b.push_back(v);
      in_b[v] = 1;
    }
  }

  std::vector<std::vector<int>> edges_a, edges_b;
  for (const auto& edge : graph.edges) {
    int b_count = 0;
    for (int v : edge) b_count += in_b[v];
    if (b_count == 0) edges_a.push_back(edge);
    else if (b_count == static_cast<int>(edge.size())) edges_b.push_back(edge);
    // mixed edges get vertices from both palettes and cannot be monochromatic
  }

  Coloring col;
  col.method = "split_degree";
  col.seed = seed;
  col.assignment.assign(graph.n, -1);

  const int palette_a = static_cast<int>(
      ceil_root(std::max<std::int64_t>(1, static_cast<std::int64_t>(edges_a.size())), k));
  int next_fresh = palette_a;
  Rng rng_a(seed + 1);
  const int mono_a = palette_and_repair(edges_a, side_a, palette_a, 0, &next_fresh,
                                        col.assignment, rng_a);
  const int repairs_a = next_fresh - palette_a;

  const int palette_b = static_cast<int>(
      ceil_root(std::max<std::int64_t>(1, static_cast<std::int64_t>(edges_b.size())), k));
  const int base_b = next_fresh;
  next_fresh = base_b + palette_b;
  Rng rng_b(seed + 2);
  const int mono_b = side_b.empty() ? 0
                                    : palette_and_repair(edges_b, side_b, palette_b, base_b,
                                                         &next_fresh, col.assignment, rng_b);
  const int repairs_b = next_fresh - base_b - palette_b;
  if (side_b.empty() && !edges_b.empty()) throw std::logic_error("B-internal edges without B");

  col.num_colors = densify(col.assignment);

  // Degree-sum bound: every B vertex has degree > d, and the total degree is
  // k * m, so |B| * d <= sum of B degrees <= k * e * C(q, k).
  std::int64_t sum_b = 0;
  for (int v : side_b) sum_b += deg.degrees[v];
  const std::int64_t total = static_cast<std::int64_t>(k) * e * binom64(system.q, k);
  if (sum_b < static_cast<std::int64_t>(side_b.size()) * d || sum_b > total) {
    throw std::logic_error("degree-sum bound violated in split coloring");
  }

  // H[B] max degree: (q-1) * deg_B(v) <= (|B|-1) * C(q-1, k-1) exactly.
  std::vector<std::int64_t> deg_b(graph.n, 0);
  for (const auto& edge : edges_b) {
    for (int v : edge) ++deg_b[v];
  }
  std::int64_t max_deg_b = 0;
  for (int v : side_b) {
    max_deg_b = std::max(max_deg_b, deg_b[v]);
    if (deg_b[v] * (system.q - 1) >
        (static_cast<std::int64_t>(side_b.size()) - 1) * binom64(system.q - 1, k - 1)) {
      throw std::logic_error("H[B] max-degree bound violated in split coloring");
    }
  }

  col.provenance["d"] = d;
  col.provenance["size_a"] = side_a.size();
  col.provenance["size_b"] = side_b.size();
  col.provenance["palette_a"] = palette_a;
  col.provenance["palette_b"] = palette_b;
  col.provenance["phase1_monochromatic_a"] = mono_a;
  col.provenance["phase1_monochromatic_b"] = mono_b;
  col.provenance["repairs_a"] = repairs_a;
  col.provenance["repairs_b"] = repairs_b;
  col.provenance["edges_a"] = edges_a.size();
  col.provenance["edges_b"] = edges_b.size();
  col.provenance["sum_degrees_b"] = sum_b;
  col.provenance["max_degree_b"] = max_deg_b;

  const ColoringCheck check = verify_coloring(graph, col);
  if (!check.proper) throw std::logic_error("split coloring produced an improper coloring");
  return col;
}

std::vector<int> greedy_independent_set(const KGraph& graph, std::uint64_t seed) {
  if (graph.k < 2) throw BadUniformity("independence search needs k >= 2");
  IndependenceState st(graph);
  const DegreeReport deg = degree_report(graph);
  Rng rng(seed);
  std::vector<char> taken(graph.n, 0);
  std::vector<int> set;

  for (;;) {
    std::int64_t min_deg = -1;
    std::vector<int> minima;
    for (int v = 0; v < graph.n; ++v) {
      if (taken[v] || st.forbid[v] != 0) continue;
      if (min_deg < 0 || deg.degrees[v] < min_deg) {
        min_deg = deg.degrees[v];
        minima.clear();
      }
      if (deg.degrees[v] == min_deg) minima.push_back(v);
    }
    if (minima.empty()) break;
    const int v = minima[rng.bounded(minima.size())];
    taken[v] = 1;
    set.push_back(v);
    st.add(v);
  }
  std::sort(set.begin(), set.end());
  if (!is_independent(graph, set)) {
    throw std::logic_error("greedy independent set is not independent");
  }
  return set;
}

}  // namespace qksys

#include "qksys/hypergraph.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <unordered_map>

#include "qksys/bitset.hpp"
#include "qksys/errors.hpp"
#include "qksys/rng.hpp"
#include "qksys/util.hpp"

namespace qksys {

namespace {

constexpr int kBitsetMaxN = 4096;

void check_vertex_list(std::vector<int>& verts, int n, int expected_size,
                       const char* what) {
  if (expected_size >= 0 && static_cast<int>(verts.size()) != expected_size) {
    throw MalformedClique(std::string(what) + " has size " + std::to_string(verts.size()) +
                          ", expected " + std::to_string(expected_size));
  }
  std::sort(verts.begin(), verts.end());
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (verts[i] < 0 || verts[i] >= n) {
      throw MalformedClique(std::string(what) + " contains out-of-range vertex " +
                            std::to_string(verts[i]));
    }
    if (i > 0 && verts[i] == verts[i - 1]) {
      throw MalformedClique(std::string(what) + " repeats vertex " + std::to_string(verts[i]));
    }
  }
}

int sorted_intersection_size(const std::vector<int>& a, const std::vector<int>& b) {
  int i = 0, j = 0, c = 0;
  while (i < static_cast<int>(a.size()) && j < static_cast<int>(b.size())) {
    if (a[i] < b[j]) ++i;
    else if (a[i] > b[j]) ++j;
    else { ++c; ++i; ++j; }
  }
  return c;
}

}  // namespace

CliqueSystem make_clique_system(int n, int q, int ell,
                                std::vector<std::vector<int>> cliques,
                                nlohmann::json provenance) {
  if (n < 0 || q < 1 || ell < 0) throw MalformedClique("invalid system parameters");
  for (auto& c : cliques) check_vertex_list(c, n, q, "clique");
  auto sorted = cliques;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw MalformedClique("duplicate clique in system");
  }
  return CliqueSystem{n, q, ell, std::move(cliques), std::move(provenance)};
}

KGraph make_kgraph(int n, int k, std::vector<std::vector<int>> edges,
                   nlohmann::json provenance) {
  if (n < 0 || k < 1) throw MalformedClique("invalid graph parameters");
  for (auto& e : edges) check_vertex_list(e, n, k, "edge");
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return KGraph{n, k, std::move(edges), std::move(provenance)};
}

EllValidation validate_ell_system(const CliqueSystem& system) {
  for (const auto& c : system.cliques) {
    auto copy = c;
    check_vertex_list(copy, system.n, system.q, "clique");
    if (copy != c) throw MalformedClique("clique is not sorted");
  }
  const int e = static_cast<int>(system.cliques.size());
  int max_int = 0;
  if (system.n <= kBitsetMaxN) {
    std::vector<Bitset> masks;
    masks.reserve(e);
    for (const auto& c : system.cliques) {
      Bitset b(system.n);
      for (int v : c) b.set(v);
      masks.push_back(std::move(b));
    }
    for (int i = 0; i < e; ++i) {
      for (int j = i + 1; j < e; ++j) {
        max_int = std::max<int>(max_int,
                                static_cast<int>(Bitset::and_count(masks[i], masks[j])));
      }
    }
  } else {
    for (int i = 0; i < e; ++i) {
      for (int j = i + 1; j < e; ++j) {
        max_int = std::max(max_int,
                           sorted_intersection_size(system.cliques[i], system.cliques[j]));
      }
    }
  }
  return EllValidation{max_int, max_int <= system.ell};
}

KGraph kgraph_from_sets(int n, int k, const std::vector<std::vector<int>>& sets,
                        nlohmann::json provenance) {
  if (k < 1) throw BadUniformity("uniformity must be at least 1");
  std::vector<std::vector<int>> edges;
  std::vector<int> idx(k);
  for (const auto& s : sets) {
    const int sz = static_cast<int>(s.size());
    if (sz < k) continue;
    for (int i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
      std::vector<int> edge(k);
      for (int i = 0; i < k; ++i) edge[i] = s[idx[i]];
      edges.push_back(std::move(edge));
      int i = k - 1;
      while (i >= 0 && idx[i] == sz - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return make_kgraph(n, k, std::move(edges), std::move(provenance));
}

KGraph expand_to_kgraph(const CliqueSystem& system, int k) {
  if (k < 1 || k > system.q) {
    throw BadUniformity("expansion uniformity k = " + std::to_string(k) +
                        " must satisfy 1 <= k <= q = " + std::to_string(system.q));
  }
  nlohmann::json prov = nlohmann::json::object();
  prov["expanded_from"] = system.provenance;
  prov["k"] = k;
  return kgraph_from_sets(system.n, k, system.cliques, std::move(prov));
}

DegreeReport degree_report(const KGraph& graph) {
  DegreeReport rep;
  rep.degrees.assign(graph.n, 0);
  std::unordered_map<std::uint64_t, std::int64_t> codeg;
  codeg.reserve(graph.edges.size() * 4);
  for (const auto& e : graph.edges) {
    for (int v : e) ++rep.degrees[v];
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (std::size_t j = i + 1; j < e.size(); ++j) {
        const std::uint64_t key =
            static_cast<std::uint64_t>(e[i]) * static_cast<std::uint64_t>(graph.n) + e[j];
        ++codeg[key];
      }
    }
  }
  for (std::int64_t d : rep.degrees) rep.max_degree = std::max(rep.max_degree, d);
  rep.average_degree =
      graph.n == 0 ? 0.0
                   : static_cast<double>(graph.k) * static_cast<double>(graph.edges.size()) /
                         static_cast<double>(graph.n);
  for (const auto& [key, c] : codeg) rep.max_codegree = std::max(rep.max_codegree, c);
  return rep;
}

std::vector<Cherry> find_cherries(const KGraph& graph) {
  if (graph.k != 3) throw BadUniformity("cherries are defined for 3-graphs");
  // Base pair -> apexes; edges are lex-sorted so apex lists come out sorted.
  std::map<std::pair<int, int>, std::vector<int>> thirds;
  for (const auto& e : graph.edges) {
    thirds[{e[0], e[1]}].push_back(e[2]);
    thirds[{e[0], e[2]}].push_back(e[1]);
    thirds[{e[1], e[2]}].push_back(e[0]);
  }
  std::vector<Cherry> out;
  for (auto& [pair, apex] : thirds) {
    std::sort(apex.begin(), apex.end());
    const int t = static_cast<int>(apex.size());
    for (int i = 0; i < t; ++i) {
      for (int j = i + 1; j < t; ++j) {
        for (int l = j + 1; l < t; ++l) {
          out.push_back(Cherry{pair.first, pair.second, {apex[i], apex[j], apex[l]}});
        }
      }
    }
  }
  return out;
}

KGraph random_induced(const KGraph& graph, double prob, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<int> kept;
  std::vector<int> new_id(graph.n, -1);
  for (int v = 0; v < graph.n; ++v) {
    if (rng.bernoulli(prob)) {
      new_id[v] = static_cast<int>(kept.size());
      kept.push_back(v);
    }
  }
  std::vector<std::vector<int>> edges;
  for (const auto& e : graph.edges) {
    std::vector<int> mapped;
    mapped.reserve(e.size());
    for (int v : e) {
      if (new_id[v] < 0) break;
      mapped.push_back(new_id[v]);
    }
    if (mapped.size() == e.size()) edges.push_back(std::move(mapped));
  }
  nlohmann::json prov = nlohmann::json::object();
  prov["induced_from"] = graph.provenance;
  prov["kept"] = kept;
  prov["prob"] = prob;
  prov["seed"] = seed;
  prov["source_n"] = graph.n;
  return make_kgraph(static_cast<int>(kept.size()), graph.k, std::move(edges), std::move(prov));
}

}  // namespace qksys

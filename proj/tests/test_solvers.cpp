#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "qksys/constructions.hpp"
#include "qksys/errors.hpp"
#include "qksys/process.hpp"
#include "qksys/rng.hpp"
#include "qksys/solvers.hpp"
#include "qksys/util.hpp"

using namespace qksys;

namespace {

// Exhaustive subset oracle for alpha, n <= 20.
std::int64_t subset_alpha(const KGraph& g) {
  REQUIRE(g.n <= 20);
  std::vector<std::uint32_t> edge_bits;
  for (const auto& e : g.edges) {
    std::uint32_t m = 0;
    for (int v : e) m |= (1u << v);
    edge_bits.push_back(m);
  }
  std::int64_t best = 0;
  for (std::uint32_t s = 0; s < (1u << g.n); ++s) {
    bool independent = true;
    for (const std::uint32_t eb : edge_bits) {
      if ((s & eb) == eb) {
        independent = false;
        break;
      }
    }
    if (independent) best = std::max<std::int64_t>(best, __builtin_popcount(s));
  }
  return best;
}

// Exhaustive assignment oracle for chi, n small.
int assignment_chi(const KGraph& g) {
  if (g.n == 0) return 0;
  for (int c = 1; c <= g.n; ++c) {
    std::vector<int> colors(g.n, 0);
    for (;;) {
      Coloring col{colors, c, "oracle", 0, nlohmann::json::object()};
      if (verify_coloring(g, col).proper) return c;
      int i = 0;
      while (i < g.n && colors[i] == c - 1) colors[i++] = 0;
      if (i == g.n) break;
      ++colors[i];
    }
  }
  return g.n;
}

KGraph complete_3graph(int n) {
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  return kgraph_from_sets(n, 3, {all});
}

}  // namespace

TEST_SUITE("solvers") {

TEST_CASE("verify_coloring basics") {
  const KGraph g = make_kgraph(5, 3, {{0, 1, 2}, {1, 2, 3}, {2, 3, 4}});

  Coloring distinct{{0, 1, 2, 3, 4}, 5, "", 0, {}};
  CHECK(verify_coloring(g, distinct).proper);

  Coloring mono{{0, 0, 0, 0, 0}, 1, "", 0, {}};
  const ColoringCheck bad = verify_coloring(g, mono);
  CHECK(!bad.proper);
  CHECK(*bad.violation == std::vector<int>({0, 1, 2}));  // lexicographically least

  // Two colors on a 3-edge are enough: monochromatic means all equal.
  const KGraph single = make_kgraph(3, 3, {{0, 1, 2}});
  Coloring two{{0, 0, 1}, 2, "", 0, {}};
  CHECK(verify_coloring(single, two).proper);

  Coloring incomplete{{0, 1}, 2, "", 0, {}};
  CHECK_THROWS_AS(verify_coloring(g, incomplete), UncoloredVertex);
}

TEST_CASE("exact independence number on degenerate graphs") {
  const KGraph empty = make_kgraph(7, 3, {});
  const SolveResult r0 = exact_independence_number(empty);
  CHECK(r0.exact);
  CHECK(r0.value == 7);
  CHECK(r0.witness_set.size() == 7);

  const SolveResult r1 = exact_independence_number(complete_3graph(5));
  CHECK(r1.exact);
  CHECK(r1.value == 2);
}

TEST_CASE("alpha of the polynomial system expansion is within the pigeonhole bound") {
  const KGraph g = expand_to_kgraph(build_polynomial_system(5, 3), 3);
  const SolveResult r = exact_independence_number(g);
  CHECK(r.exact);
  CHECK(r.value <= 5);  // (k-1)^2 + 1
  // Two vertices per column across two columns are always independent.
  CHECK(r.value >= 4);
  // The witness certificate is genuinely independent.
  std::set<int> witness(r.witness_set.begin(), r.witness_set.end());
  for (const auto& e : g.edges) {
    int inside = 0;
    for (int v : e) inside += witness.count(v);
    CHECK(inside < 3);
  }
}

TEST_CASE("exact alpha agrees with the subset oracle up to n = 20") {
  std::vector<KGraph> corpus;
  corpus.push_back(expand_to_kgraph(lines_as_clique_system(build_affine_plane(3)), 3));
  corpus.push_back(complete_3graph(6));
  corpus.push_back(make_kgraph(12, 3, {}));
  Rng rng(5);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 12 + static_cast<int>(rng.bounded(9));  // up to 20
    const int k = 2 + static_cast<int>(rng.bounded(3));   // uniformities 2..4
    std::vector<std::vector<int>> sets;
    for (int s = 0; s < 14; ++s) {
      std::set<int> pick;
      while (static_cast<int>(pick.size()) < k + 1) pick.insert(static_cast<int>(rng.bounded(n)));
      sets.push_back(std::vector<int>(pick.begin(), pick.end()));
    }
    corpus.push_back(kgraph_from_sets(n, k, sets));
  }
  for (const KGraph& g : corpus) {
    const SolveResult r = exact_independence_number(g);
    REQUIRE(r.exact);
    CHECK(r.value == subset_alpha(g));
  }
}

TEST_CASE("budget exhaustion is flagged, not fatal") {
  const KGraph g = expand_to_kgraph(build_polynomial_system(5, 3), 3);
  const SolveResult r = exact_independence_number(g, 50);
  CHECK(!r.exact);
  CHECK(r.budget_exhausted);
  CHECK(r.value <= 5);  // still a valid lower bound

  const KGraph k4 = expand_to_kgraph(make_clique_system(4, 4, 3, {{0, 1, 2, 3}}), 2);
  const SolveResult chi = exact_chromatic_number(k4, 3);
  CHECK(!chi.exact);
  CHECK(chi.budget_exhausted);
  CHECK(chi.value <= 4);  // lower bound from the refuted rounds
}

TEST_CASE("exact chromatic number spot values") {
  const KGraph empty = make_kgraph(5, 3, {});
  CHECK(exact_chromatic_number(empty).value == 1);

  // Complete graph on 4 vertices as a 2-graph.
  const KGraph k4 = expand_to_kgraph(make_clique_system(4, 4, 3, {{0, 1, 2, 3}}), 2);
  const SolveResult r = exact_chromatic_number(k4);
  CHECK(r.exact);
  CHECK(r.value == 4);
  CHECK(verify_coloring(k4, r.witness_coloring).proper);
}

TEST_CASE("chi of the AG(2,3) collinear triples is 3") {
  const KGraph g = expand_to_kgraph(lines_as_clique_system(build_affine_plane(3)), 3);
  // Lower bound oracle: no proper 2-coloring exists (all 2^9 assignments).
  bool two_colorable = false;
  for (std::uint32_t mask = 0; mask < (1u << 9) && !two_colorable; ++mask) {
    std::vector<int> colors(9);
    for (int v = 0; v < 9; ++v) colors[v] = (mask >> v) & 1;
    two_colorable = verify_coloring(g, Coloring{colors, 2, "", 0, {}}).proper;
  }
  CHECK(!two_colorable);

  const SolveResult r = exact_chromatic_number(g);
  CHECK(r.exact);
  CHECK(r.value == 3);
  CHECK(verify_coloring(g, r.witness_coloring).proper);
}

TEST_CASE("exact chi agrees with the assignment oracle on small graphs") {
  std::vector<KGraph> corpus;
  corpus.push_back(expand_to_kgraph(make_clique_system(4, 4, 3, {{0, 1, 2, 3}}), 2));
  corpus.push_back(make_kgraph(6, 2, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}}));
  corpus.push_back(expand_to_kgraph(lines_as_clique_system(build_affine_plane(3)), 3));
  Rng rng(9);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<std::vector<int>> sets;
    for (int s = 0; s < 8; ++s) {
      std::set<int> pick;
      while (static_cast<int>(pick.size()) < 3) pick.insert(static_cast<int>(rng.bounded(10)));
      sets.push_back(std::vector<int>(pick.begin(), pick.end()));
    }
    corpus.push_back(kgraph_from_sets(10, 3, sets));
  }
  for (const KGraph& g : corpus) {
    const SolveResult r = exact_chromatic_number(g);
    REQUIRE(r.exact);
    CHECK(r.value == assignment_chi(g));
  }
}

TEST_CASE("greedy coloring is always proper and within its bound") {
  const KGraph empty = make_kgraph(4, 3, {});
  CHECK(greedy_coloring(empty, 1).num_colors == 1);

  // A single edge with palette 1 is monochromatic and repaired: 2 colors.
  const KGraph single = make_kgraph(3, 3, {{0, 1, 2}});
  const Coloring c1 = greedy_coloring(single, 5);
  CHECK(c1.num_colors == 2);
  CHECK(verify_coloring(single, c1).proper);

  std::vector<KGraph> corpus;
  corpus.push_back(expand_to_kgraph(build_polynomial_system(5, 3), 3));
  corpus.push_back(expand_to_kgraph(build_polynomial_system(7, 3), 3));
  corpus.push_back(expand_to_kgraph(lines_as_clique_system(build_affine_plane(5)), 3));
  for (const KGraph& g : corpus) {
    for (const std::uint64_t seed : {1, 2, 3}) {
      const Coloring c = greedy_coloring(g, seed);
      CHECK(verify_coloring(g, c).proper);
      const int palette = c.provenance["palette"].get<int>();
      const int mono = c.provenance["phase1_monochromatic"].get<int>();
      CHECK(c.num_colors <= palette + mono);
    }
  }
}

TEST_CASE("split coloring reduces to greedy when no vertex exceeds the threshold") {
  const ProcessTrace t = run_greedy_process(60, 5, 31, std::nullopt, 60000);
  const CliqueSystem sys = to_clique_system(t);
  const Coloring c = split_coloring(sys, 3, 8);
  CHECK(c.provenance["size_b"] == 0);
  CHECK(verify_coloring(expand_to_kgraph(sys, 3), c).proper);
}

TEST_CASE("split coloring handles a high-degree hub") {
  // A sunflower: one hub vertex in every clique.
  std::vector<std::vector<int>> cliques;
  int next = 1;
  for (int i = 0; i < 50; ++i) {
    cliques.push_back({0, next, next + 1});
    next += 2;
  }
  const CliqueSystem sys = make_clique_system(next, 3, 1, std::move(cliques));
  const Coloring c = split_coloring(sys, 2, 3);
  CHECK(c.provenance["size_b"].get<int>() >= 1);
  CHECK(verify_coloring(expand_to_kgraph(sys, 2), c).proper);
}

TEST_CASE("split coloring rejects non-1-systems") {
  CHECK_THROWS_AS(split_coloring(build_polynomial_system(5, 3), 3, 1), NotOneSystem);
  const CliqueSystem one = make_clique_system(6, 3, 1, {{0, 1, 2}, {3, 4, 5}});
  CHECK_THROWS_AS(split_coloring(one, 4, 1), BadUniformity);
}

TEST_CASE("greedy independent set certificates") {
  const KGraph empty = make_kgraph(6, 3, {});
  CHECK(greedy_independent_set(empty, 0).size() == 6);

  const KGraph k5 = complete_3graph(5);
  CHECK(greedy_independent_set(k5, 1).size() == 2);

  const KGraph g = expand_to_kgraph(build_polynomial_system(5, 3), 3);
  for (const std::uint64_t seed : {0, 1, 2}) {
    const std::vector<int> set = greedy_independent_set(g, seed);
    std::set<int> chosen(set.begin(), set.end());
    for (const auto& e : g.edges) {
      int inside = 0;
      for (int v : e) inside += chosen.count(v);
      CHECK(inside < g.k);
    }
  }
}

}  // TEST_SUITE

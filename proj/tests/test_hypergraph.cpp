#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "qksys/constructions.hpp"
#include "qksys/errors.hpp"
#include "qksys/hypergraph.hpp"
#include "qksys/rng.hpp"
#include "qksys/util.hpp"

using namespace qksys;

namespace {

// Test-side oracle: pairwise intersections via std::set_intersection.
int brute_max_intersection(const CliqueSystem& sys) {
  int best = 0;
  for (std::size_t i = 0; i < sys.cliques.size(); ++i) {
    for (std::size_t j = i + 1; j < sys.cliques.size(); ++j) {
      std::vector<int> common;
      std::set_intersection(sys.cliques[i].begin(), sys.cliques[i].end(),
                            sys.cliques[j].begin(), sys.cliques[j].end(),
                            std::back_inserter(common));
      best = std::max(best, static_cast<int>(common.size()));
    }
  }
  return best;
}

}  // namespace

TEST_SUITE("hypergraph") {

TEST_CASE("construction canonicalizes and rejects malformed input") {
  const KGraph g = make_kgraph(5, 2, {{3, 1}, {1, 3}, {0, 4}});
  CHECK(g.edges == std::vector<std::vector<int>>({{0, 4}, {1, 3}}));  // sorted, deduped

  CHECK_THROWS_AS(make_kgraph(5, 2, {{0, 0}}), MalformedClique);
  CHECK_THROWS_AS(make_kgraph(5, 2, {{0, 5}}), MalformedClique);
  CHECK_THROWS_AS(make_kgraph(5, 2, {{0, 1, 2}}), MalformedClique);
  CHECK_THROWS_AS(make_clique_system(5, 3, 1, {{0, 1, 2}, {2, 1, 0}}), MalformedClique);
}

TEST_CASE("validate_ell_system spot cases") {
  const CliqueSystem disjoint = make_clique_system(8, 4, 1, {{0, 1, 2, 3}, {4, 5, 6, 7}});
  const EllValidation v0 = validate_ell_system(disjoint);
  CHECK(v0.max_pairwise_intersection == 0);
  CHECK(v0.ok);

  // Two 4-cliques differing in one vertex share 3 vertices.
  const CliqueSystem bad = make_clique_system(5, 4, 1, {{0, 1, 2, 3}, {0, 1, 2, 4}});
  const EllValidation v1 = validate_ell_system(bad);
  CHECK(v1.max_pairwise_intersection == 3);
  CHECK(!v1.ok);
}

TEST_CASE("validate_ell_system agrees with the brute-force double loop") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 30 + static_cast<int>(rng.bounded(40));
    const int q = 3 + static_cast<int>(rng.bounded(4));
    const int e = 20 + static_cast<int>(rng.bounded(180));
    std::set<std::vector<int>> cliques;
    while (static_cast<int>(cliques.size()) < e) {
      std::set<int> c;
      while (static_cast<int>(c.size()) < q) c.insert(static_cast<int>(rng.bounded(n)));
      cliques.insert(std::vector<int>(c.begin(), c.end()));
    }
    const CliqueSystem sys =
        make_clique_system(n, q, q, std::vector<std::vector<int>>(cliques.begin(), cliques.end()));
    CHECK(validate_ell_system(sys).max_pairwise_intersection == brute_max_intersection(sys));
  }
}

TEST_CASE("validation falls back to sorted merging above the bitset range") {
  // n > 4096 takes the sorted-list path.
  const CliqueSystem sparse = make_clique_system(
      5000, 3, 1, {{0, 1, 4999}, {1, 2, 3}, {10, 11, 12}});
  const EllValidation v = validate_ell_system(sparse);
  CHECK(v.max_pairwise_intersection == 1);
  CHECK(v.ok);
}

TEST_CASE("expansion counts") {
  const CliqueSystem one = make_clique_system(4, 4, 3, {{0, 1, 2, 3}});
  CHECK(expand_to_kgraph(one, 3).edges.size() == 4);  // C(4,3)

  // Two cliques sharing k-1 = 2 vertices cannot share a 3-set.
  const CliqueSystem two = make_clique_system(8, 5, 2, {{0, 1, 2, 3, 4}, {0, 1, 5, 6, 7}});
  CHECK(expand_to_kgraph(two, 3).edges.size() == 2 * binom64(5, 3));

  CHECK_THROWS_AS(expand_to_kgraph(one, 5), BadUniformity);
}

TEST_CASE("an (e,q,k)-system expands to exactly e * C(q,k) edges") {
  const CliqueSystem hq = build_polynomial_system(5, 3);  // ell = 2, k = 3
  const KGraph g = expand_to_kgraph(hq, 3);
  CHECK(static_cast<std::int64_t>(g.edges.size()) ==
        static_cast<std::int64_t>(hq.cliques.size()) * binom64(5, 3));
}

TEST_CASE("degree_report basics") {
  const KGraph empty = make_kgraph(6, 3, {});
  const DegreeReport r0 = degree_report(empty);
  CHECK(r0.max_degree == 0);
  CHECK(r0.average_degree == 0.0);
  CHECK(r0.max_codegree == 0);

  // Complete 3-graph on 4 vertices: every vertex in C(3,2) = 3 edges.
  const CliqueSystem k4 = make_clique_system(4, 4, 3, {{0, 1, 2, 3}});
  const DegreeReport r1 = degree_report(expand_to_kgraph(k4, 3));
  for (const std::int64_t d : r1.degrees) CHECK(d == 3);

  // Degree sum identity k * m.
  const KGraph g = expand_to_kgraph(build_polynomial_system(5, 2), 2);
  const DegreeReport r2 = degree_report(g);
  std::int64_t sum = 0;
  for (const std::int64_t d : r2.degrees) sum += d;
  CHECK(sum == static_cast<std::int64_t>(g.k) * static_cast<std::int64_t>(g.edges.size()));
}

TEST_CASE("AG(2,5) collinear triples have codegree q-2 everywhere") {
  const KGraph g = expand_to_kgraph(lines_as_clique_system(build_affine_plane(5)), 3);
  std::map<std::pair<int, int>, int> codeg;
  for (const auto& e : g.edges) {
    ++codeg[{e[0], e[1]}];
    ++codeg[{e[0], e[2]}];
    ++codeg[{e[1], e[2]}];
  }
  CHECK(codeg.size() == static_cast<std::size_t>(binom64(25, 2)));
  for (const auto& [pair, c] : codeg) CHECK(c == 3);  // q - 2
  CHECK(degree_report(g).max_codegree == 3);
}

TEST_CASE("find_cherries on the definition instance") {
  const KGraph g = make_kgraph(6, 3, {{1, 2, 3}, {1, 2, 4}, {1, 2, 5}});
  const std::vector<Cherry> cherries = find_cherries(g);
  REQUIRE(cherries.size() == 1);
  CHECK(cherries[0].a == 1);
  CHECK(cherries[0].b == 2);
  CHECK(cherries[0].apexes == std::array<int, 3>{3, 4, 5});

  CHECK_THROWS_AS(find_cherries(make_kgraph(4, 2, {{0, 1}})), BadUniformity);
}

TEST_CASE("cherry counts in affine planes match the codegree formula") {
  const KGraph g3 = expand_to_kgraph(lines_as_clique_system(build_affine_plane(3)), 3);
  CHECK(find_cherries(g3).empty());  // codegree 1 everywhere

  const KGraph g5 = expand_to_kgraph(lines_as_clique_system(build_affine_plane(5)), 3);
  const std::vector<Cherry> cherries = find_cherries(g5);
  CHECK(cherries.size() == 300);  // C(25,2) pairs, C(3,3) each

  std::map<std::pair<int, int>, std::int64_t> codeg;
  for (const auto& e : g5.edges) {
    ++codeg[{e[0], e[1]}];
    ++codeg[{e[0], e[2]}];
    ++codeg[{e[1], e[2]}];
  }
  std::int64_t formula = 0;
  for (const auto& [pair, c] : codeg) formula += binom64(c, 3);
  CHECK(formula == static_cast<std::int64_t>(cherries.size()));
}

TEST_CASE("random_induced edge cases and determinism") {
  const KGraph g = expand_to_kgraph(build_polynomial_system(5, 2), 2);

  const KGraph all = random_induced(g, 1.0, 9);
  CHECK(all.n == g.n);
  CHECK(all.edges == g.edges);
  CHECK(all.provenance["kept"].size() == static_cast<std::size_t>(g.n));

  const KGraph none = random_induced(g, 0.0, 9);
  CHECK(none.n == 0);
  CHECK(none.edges.empty());

  const KGraph a = random_induced(g, 0.4, 123);
  const KGraph b = random_induced(g, 0.4, 123);
  CHECK(a.n == b.n);
  CHECK(a.edges == b.edges);
  CHECK(a.provenance == b.provenance);
  const KGraph c = random_induced(g, 0.4, 124);
  CHECK(a.provenance != c.provenance);
}

}  // TEST_SUITE

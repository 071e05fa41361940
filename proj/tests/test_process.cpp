#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "qksys/errors.hpp"
#include "qksys/json_io.hpp"
#include "qksys/process.hpp"
#include "qksys/solvers.hpp"
#include "qksys/util.hpp"

using namespace qksys;

namespace {

// Test-side oracle: plain enumeration of every independent set, descending
// vertex order, no pruning beyond the forbidden bookkeeping.
std::int64_t enumerate_alpha(const KGraph& g) {
  std::vector<std::vector<int>> edges_at(g.n);
  for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
    for (int v : g.edges[ei]) edges_at[v].push_back(static_cast<int>(ei));
  }
  std::vector<int> cnt(g.edges.size(), 0);
  std::vector<int> forbid(g.n, 0);
  std::vector<char> chosen(g.n, 0);
  std::int64_t best = 0;
  std::int64_t size = 0;

  auto touch = [&](int v, int delta) {
    if (delta > 0) chosen[v] = 1;  // v counts as chosen while edges are scanned
    for (int ei : edges_at[v]) {
      if (delta > 0) {
        if (++cnt[ei] == g.k - 1) {
          for (int u : g.edges[ei]) {
            if (!chosen[u]) { ++forbid[u]; break; }
          }
        }
      } else {
        if (cnt[ei] == g.k - 1) {
          for (int u : g.edges[ei]) {
            if (!chosen[u]) { --forbid[u]; break; }
          }
        }
        --cnt[ei];
      }
    }
    if (delta < 0) chosen[v] = 0;
  };

  auto dfs = [&](auto&& self, int from) -> void {
    best = std::max(best, size);
    for (int v = from; v >= 0; --v) {
      if (forbid[v] != 0) continue;
      ++size;
      touch(v, +1);
      self(self, v - 1);
      touch(v, -1);
      --size;
    }
  };
  dfs(dfs, g.n - 1);
  return best;
}

}  // namespace

TEST_SUITE("process") {

TEST_CASE("n = q accepts a single set and saturates") {
  const ProcessTrace t = run_greedy_process(6, 6, 1, std::nullopt, 100);
  CHECK(t.accepted.size() == 1);
  CHECK(t.accepted[0] == std::vector<int>({0, 1, 2, 3, 4, 5}));
  CHECK(t.stop_reason == StopReason::pair_saturation);
  CHECK(t.covered_pairs == binom64(6, 2));
}

TEST_CASE("pair-count cap and ell = 1 at (20, 10)") {
  for (const std::uint64_t seed : {1, 2, 3, 4, 5}) {
    const ProcessTrace t = run_greedy_process(20, 10, seed, std::nullopt, 20000);
    CHECK(static_cast<std::int64_t>(t.accepted.size()) <= 4);  // C(20,2)/C(10,2)
    const EllValidation v = validate_ell_system(to_clique_system(t));
    CHECK(v.ok);
    CHECK(v.max_pairwise_intersection <= 1);
  }
}

TEST_CASE("e stays below n^2/q^2 at (100, 5)") {
  const ProcessTrace t = run_greedy_process(100, 5, 42, std::nullopt, 100000);
  const std::int64_t e = static_cast<std::int64_t>(t.accepted.size());
  CHECK(e * 25 < 100 * 100);
  CHECK(e <= binom64(100, 2) / binom64(5, 2));
}

TEST_CASE("identical parameters give byte-identical serialization") {
  const ProcessTrace a = run_greedy_process(50, 4, 99, std::nullopt, 50000);
  const ProcessTrace b = run_greedy_process(50, 4, 99, std::nullopt, 50000);
  CHECK(dump_document(trace_to_json(a)) == dump_document(trace_to_json(b)));
  const ProcessTrace c = run_greedy_process(50, 4, 100, std::nullopt, 50000);
  CHECK(dump_document(trace_to_json(a)) != dump_document(trace_to_json(c)));
}

TEST_CASE("first draws are uniform over all q-sets (1e5 seeds, 3 sigma)") {
  // n = 6, q = 3: the first draw is always accepted, so the acceptance
  // distribution is the raw sampler's.
  std::map<std::vector<int>, int> counts;
  const int trials = 100000;
  for (int seed = 0; seed < trials; ++seed) {
    const ProcessTrace t = run_greedy_process(6, 3, seed, 1, 10);
    REQUIRE(t.accepted.size() == 1);
    ++counts[t.accepted[0]];
  }
  CHECK(counts.size() == 20);  // C(6,3)
  const double p = 1.0 / 20.0;
  const double sigma = std::sqrt(trials * p * (1 - p));
  for (const auto& [set, count] : counts) {
    CHECK(std::abs(count - trials * p) <= 3.0 * sigma);
  }
}

TEST_CASE("stats of degenerate traces") {
  const ProcessTrace empty = run_greedy_process(12, 3, 7, 0, 100);
  CHECK(empty.accepted.empty());
  CHECK(empty.stop_reason == StopReason::target_reached);
  const ProcessStats s0 = process_stats(empty, 3);
  CHECK(s0.e == 0);
  CHECK(s0.m == 0);
  CHECK(s0.alpha == 12);
  CHECK(s0.chi_lower_bound == 1);

  const ProcessTrace one = run_greedy_process(12, 5, 7, 1, 100);
  REQUIRE(one.accepted.size() == 1);
  const ProcessStats s1 = process_stats(one, 3);
  CHECK(s1.m == binom64(5, 3));
}

TEST_CASE("trace expansions have exactly e * C(q,k) edges") {
  // Accepted sets pairwise share at most one vertex, so no k-set repeats.
  const ProcessTrace t = run_greedy_process(80, 6, 5, std::nullopt, 80000);
  const ProcessStats s = process_stats(t, 3);
  CHECK(s.m == s.e * binom64(6, 3));
}

TEST_CASE("exact alpha at n = 30 agrees with plain enumeration") {
  const ProcessTrace t = run_greedy_process(30, 5, 2024, std::nullopt, 30000);
  const KGraph g = expand_to_kgraph(to_clique_system(t), 3);
  const SolveResult solver = exact_independence_number(g);
  REQUIRE(solver.exact);
  CHECK(solver.value == enumerate_alpha(g));

  const ProcessStats stats = process_stats(t, 3);
  CHECK(stats.alpha == solver.value);
  CHECK(stats.alpha_exact);
  CHECK(stats.alpha_method == "exact");
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(run_greedy_process(5, 1, 0, std::nullopt, 10), BadParams);
  CHECK_THROWS_AS(run_greedy_process(5, 6, 0, std::nullopt, 10), BadParams);
  CHECK_THROWS_AS(run_greedy_process(20000, 5, 0, std::nullopt, 10), BadParams);
  CHECK_THROWS_AS(run_greedy_process(10, 5, 0, std::nullopt, 0), BadParams);
  CHECK_THROWS_AS(process_stats(run_greedy_process(10, 3, 0, 1, 10), 4), BadUniformity);
}

}  // TEST_SUITE

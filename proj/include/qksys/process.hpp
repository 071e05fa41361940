#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qksys/hypergraph.hpp"

namespace qksys {

enum class StopReason { target_reached, reject_limit, pair_saturation };

const char* to_string(StopReason r);

// Record of one run of the random greedy (q,k)-process: uniformly random
// q-sets accepted exactly when they intersect every earlier accepted set in
// at most one vertex. Fully reproducible from (n, q, seed, target_e,
// reject_limit).
struct ProcessTrace {
  int n = 0;
  int q = 0;
  std::uint64_t seed = 0;
  std::optional<std::int64_t> target_e;
  std::int64_t reject_limit = 0;
  std::vector<std::vector<int>> accepted;
  std::vector<std::int64_t> rejections_before;  // per acceptance
  std::int64_t trailing_rejections = 0;
  std::int64_t covered_pairs = 0;
  StopReason stop_reason = StopReason::reject_limit;
};

// Draw uniform q-subsets of [n] and accept under the <=1-intersection rule
// (checked via an incrementally maintained covered-pair bitmap, which is
// exact because accepted sets never share a pair). Stops at target_e
// acceptances, after reject_limit consecutive rejections, or when every
// vertex pair is covered (which certifies saturation). BadParams unless
// 2 <= q <= n <= 10000 and reject_limit >= 1.
ProcessTrace run_greedy_process(int n, int q, std::uint64_t seed,
                                std::optional<std::int64_t> target_e,
                                std::int64_t reject_limit);

// The accepted sets as a 1-system, with the run parameters in provenance.
CliqueSystem to_clique_system(const ProcessTrace& trace);

struct ProcessStats {
  std::int64_t e = 0;
  std::int64_t m = 0;
  double pair_coverage = 0.0;
  std::int64_t alpha = 0;
  bool alpha_exact = false;
  std::string alpha_method;
  std::vector<int> alpha_witness;
  std::int64_t chi_lower_bound = 0;  // ceil(n / alpha); rigorous only when exact
};

// Expand a 1-system (typically a process trace) to its k-graph and measure
// it: alpha is exact for n <= 40 (subject to the node budget), otherwise a
// greedy certificate, with the method labeled either way.
ProcessStats process_stats(const CliqueSystem& system, int k,
                           std::int64_t node_budget = 10'000'000);
ProcessStats process_stats(const ProcessTrace& trace, int k,
                           std::int64_t node_budget = 10'000'000);

}  // namespace qksys

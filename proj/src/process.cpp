#include "qksys/process.hpp"

#include <algorithm>
#include <numeric>

#include "qksys/errors.hpp"
#include "qksys/rng.hpp"
#include "qksys/solvers.hpp"
#include "qksys/util.hpp"

namespace qksys {

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::target_reached: return "target_reached";
    case StopReason::reject_limit: return "reject_limit";
    case StopReason::pair_saturation: return "pair_saturation";
  }
  return "unknown";
}

namespace {

// Index of the unordered pair {u, v}, u < v, in the triangular layout.
inline std::int64_t pair_index(int u, int v, int n) {
  return static_cast<std::int64_t>(u) * n - static_cast<std::int64_t>(u) * (u + 1) / 2 +
         (v - u - 1);
}

}  // namespace

ProcessTrace run_greedy_process(int n, int q, std::uint64_t seed,
                                std::optional<std::int64_t> target_e,
                                std::int64_t reject_limit) {
  if (q < 2 || q > n) throw BadParams("need 2 <= q <= n");
  if (n > 10000) throw BadParams("n above 10000 is unsupported (pair bitmap size)");
  if (reject_limit < 1) throw BadParams("reject_limit must be positive");
  if (target_e && *target_e < 0) throw BadParams("target_e must be nonnegative");

  ProcessTrace trace;
  trace.n = n;
  trace.q = q;
  trace.seed = seed;
  trace.target_e = target_e;
  trace.reject_limit = reject_limit;

  const std::int64_t total_pairs = binom64(n, 2);
  std::vector<std::uint64_t> covered((total_pairs + 63) / 64, 0);
  auto pair_covered = [&](std::int64_t i) { return (covered[i >> 6] >> (i & 63)) & 1; };
  auto cover_pair = [&](std::int64_t i) { covered[i >> 6] |= (std::uint64_t{1} << (i & 63)); };

  Rng rng(seed);
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<int> candidate(q);
  std::vector<std::pair<int, int>> swaps(q);

  std::int64_t rejections = 0;
  for (;;) {
    if (target_e && static_cast<std::int64_t>(trace.accepted.size()) >= *target_e) {
      trace.stop_reason = StopReason::target_reached;
      break;
    }
    if (trace.covered_pairs == total_pairs) {
      trace.stop_reason = StopReason::pair_saturation;
      break;
    }

    // Uniform q-subset via a partial Fisher-Yates shuffle, undone afterwards.
    for (int j = 0; j < q; ++j) {
      const int r = j + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(n - j)));
      swaps[j] = {j, r};
      std::swap(idx[j], idx[r]);
      candidate[j] = idx[j];
    }
    for (int j = q - 1; j >= 0; --j) std::swap(idx[swaps[j].first], idx[swaps[j].second]);

    bool admissible = true;
    for (int i = 0; i < q && admissible; ++i) {
      for (int j = i + 1; j < q; ++j) {
        const int u = std::min(candidate[i], candidate[j]);
        const int v = std::max(candidate[i], candidate[j]);
        if (pair_covered(pair_index(u, v, n))) {
          admissible = false;
          break;
        }
      }
    }

    if (admissible) {
      std::vector<int> accepted = candidate;
      std::sort(accepted.begin(), accepted.end());
      for (int i = 0; i < q; ++i) {
        for (int j = i + 1; j < q; ++j) {
          cover_pair(pair_index(accepted[i], accepted[j], n));
        }
      }
      trace.covered_pairs += binom64(q, 2);
      trace.accepted.push_back(std::move(accepted));
      trace.rejections_before.push_back(rejections);
      rejections = 0;
    } else {
      ++rejections;
      if (rejections >= reject_limit) {
        trace.stop_reason = StopReason::reject_limit;
        trace.trailing_rejections = rejections;
        break;
      }
    }
  }
  if (trace.stop_reason != StopReason::reject_limit) trace.trailing_rejections = rejections;
  return trace;
}

CliqueSystem to_clique_system(const ProcessTrace& trace) {
  nlohmann::json prov = nlohmann::json::object();
  prov["construction"] = "greedy_process";
  prov["seed"] = trace.seed;
  prov["reject_limit"] = trace.reject_limit;
  prov["stop_reason"] = to_string(trace.stop_reason);
  prov["rejections_before"] = trace.rejections_before;
  prov["trailing_rejections"] = trace.trailing_rejections;
  prov["covered_pairs"] = trace.covered_pairs;
  if (trace.target_e) {
    prov["target_e"] = *trace.target_e;
  } else {
    prov["target_e"] = nullptr;
  }
  return make_clique_system(trace.n, trace.q, 1, trace.accepted, std::move(prov));
}

ProcessStats process_stats(const CliqueSystem& system, int k, std::int64_t node_budget) {
  if (k < 2 || k > system.q) throw BadUniformity("need 2 <= k <= q");
  ProcessStats stats;
  stats.e = static_cast<std::int64_t>(system.cliques.size());
  const KGraph graph = expand_to_kgraph(system, k);
  stats.m = static_cast<std::int64_t>(graph.edges.size());
  const std::int64_t total_pairs = binom64(system.n, 2);
  stats.pair_coverage =
      total_pairs == 0
          ? 0.0
          : static_cast<double>(stats.e * binom64(system.q, 2)) / static_cast<double>(total_pairs);

  if (system.n <= 40) {
    const SolveResult r = exact_independence_number(graph, node_budget);
    stats.alpha = r.value;
    stats.alpha_exact = r.exact;
    stats.alpha_method = r.exact ? "exact" : "exact_budget_exhausted";
    stats.alpha_witness = r.witness_set;
  } else {
    stats.alpha_witness = greedy_independent_set(graph, system.provenance.contains("seed")
                                                            ? system.provenance["seed"].get<std::uint64_t>()
                                                            : 0);
    stats.alpha = static_cast<std::int64_t>(stats.alpha_witness.size());
    stats.alpha_exact = false;
    stats.alpha_method = "greedy";
  }
  stats.chi_lower_bound =
      stats.alpha == 0 ? (system.n > 0 ? system.n : 0)
                       : (system.n + stats.alpha - 1) / stats.alpha;
  return stats;
}

ProcessStats process_stats(const ProcessTrace& trace, int k, std::int64_t node_budget) {
  return process_stats(to_clique_system(trace), k, node_budget);
}

}  // namespace qksys

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qksys/hypergraph.hpp"

namespace qksys {

// Affine plane AG(2,q): points are field pairs encoded x*q + y, lines are
// the q^2 graphs y = m*x + b followed by the q verticals x = c.
struct IncidencePlane {
  int q = 0;
  std::vector<std::vector<int>> lines;
  nlohmann::json provenance = nlohmann::json::object();

  int point_count() const { return q * q; }
};

// Outcome of sampling a vertex subset W and cutting every clique down to its
// trace on W. Failure (some trace larger than q_target after all resamples)
// is a flagged state, not an error.
struct RestrictionResult {
  int source_n = 0;
  int source_q = 0;
  int source_ell = 0;
  int q_target = 0;
  std::vector<int> kept;                    // W, ascending original ids
  std::vector<std::vector<int>> traces;     // per clique: clique ∩ W, original ids
  double prob = 0.0;
  std::uint64_t seed = 0;                   // seed of the first attempt
  int resample_count = 0;                   // extra attempts used (seed+1, ...)
  bool failed = false;
  int max_trace = 0;
  // Chernoff diagnostics for the per-clique overflow event |f ∩ W| > q_target;
  // reported, never asserted.
  double chernoff_tail_per_clique = 1.0;
  double chernoff_union_bound = 1.0;
  nlohmann::json provenance = nlohmann::json::object();
};

// Vertex set F_Q x F_Q; one Q-clique per degree-<k polynomial (the graph
// {(x, p(x))}) plus the Q columns. Exactly Q^k + Q cliques with pairwise
// intersections at most k-1. Q must be prime (NotPrime) and 2 <= k < Q
// (BadDegreeBound).
CliqueSystem build_polynomial_system(int Q, int k);

// Sample W by keeping each vertex with the given probability; if any trace
// exceeds q_target, retry with seeds seed+1, seed+2, ... up to max_resamples
// times, flagging failure if the last attempt still overflows.
RestrictionResult random_restriction(const CliqueSystem& system, int q_target, double prob,
                                     std::uint64_t seed, int max_resamples);

// Grow every trace back to a q_target-clique with fresh vertices. W keeps
// ids 0..|W|-1 in sorted order; padding ids are allocated clique by clique,
// each used exactly once, so intersections can only shrink.
CliqueSystem pad_cliques(const RestrictionResult& restriction, int q_target);

// The k-graph on W whose edges are the k-subsets of the traces, with ids
// compacted to 0..|W|-1.
KGraph restriction_kgraph(const RestrictionResult& restriction, int k);

// NotPrimePower unless GF(q) exists.
IncidencePlane build_affine_plane(int q);

// Lines reinterpreted as the cliques of a (q,*)-system with ell = 1.
CliqueSystem lines_as_clique_system(const IncidencePlane& plane);

// Enlarge each of the p^2+p lines of AG(2,p) by q-p fresh vertices (p the
// largest prime with p^2+p <= e and p <= q), then append e-(p^2+p) disjoint
// fresh q-cliques. RangeError unless q < e <= q^2; NoValidPrime if no p fits.
CliqueSystem build_enlarged_plane_system(int e, int q);

enum class ChernoffTail { lower, upper };

// exp(-delta^2*mu/2) for the lower tail, exp(-delta^2*mu/(2+delta)) for the
// upper; BadParams on negative mu or nonpositive delta.
double chernoff_bound(double mu, double delta, ChernoffTail tail);

struct BudgetPrime {
  int Q = 0;        // largest prime with Q^k + Q <= e
  bool lower_ok = false;  // whether Q^k + Q > e/2 as well
};

// Helper for sizing a polynomial system against a clique budget e.
std::optional<BudgetPrime> clique_budget_prime(std::int64_t e, int k);

// Whether (e, q, k) lies in the regime 2^q > e > (50q)^k. Reported as a
// diagnostic only; nothing enforces it.
bool restriction_regime_ok(std::int64_t e, int q, int k);

}  // namespace qksys

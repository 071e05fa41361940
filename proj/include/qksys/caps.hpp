#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qksys/constructions.hpp"

namespace qksys {

// Census of caps (point sets with no 3 collinear) in an affine plane,
// counted as unordered sets; sizes 0, 1, 2 are included, so counts[0] = 1,
// counts[1] = q^2 and counts[2] = C(q^2, 2) always.
struct CapReport {
  int q = 0;
  std::vector<std::int64_t> counts;            // counts[t] = number of caps of size t
  int max_cap_size = 0;
  bool exhaustive = false;
  bool budget_exhausted = false;
  std::int64_t total = 0;                      // sum of counts (unordered convention)
  std::vector<double> bounds;                  // bounds[t] for 3 <= t <= q+2, else 0
  // The mixed ordered/unordered assembly q^2 + q^2(q^2-1) + q * max_t I_{q,t},
  // emitted for comparison with the unordered total.
  std::optional<double> assembly_total;
  std::vector<std::vector<int>> witnesses;     // one cap per size when not count_only

  std::int64_t count(int t) const {
    return (t >= 0 && t < static_cast<int>(counts.size())) ? counts[t] : 0;
  }
};

struct MixingCheck {
  std::int64_t observed = 0;
  double predicted = 0.0;
  double deviation = 0.0;
  double bound = 0.0;
  bool holds = false;
};

struct CapTraceRow {
  int i = 0;                 // cap size when the row was recorded
  std::int64_t z_size = 0;   // lines through at least two chosen points
  std::int64_t x_size = 0;   // admissible next points
};

struct CapTrace {
  std::vector<int> cap;
  std::vector<CapTraceRow> rows;
};

// Depth-first census in ascending point-id order with an incrementally
// maintained forbidden mask (third points of lines through chosen pairs), so
// every unordered cap is visited exactly once. max_t truncates the search
// depth; budget exhaustion leaves partial counts flagged non-exhaustive.
CapReport enumerate_caps(const IncidencePlane& plane, std::optional<int> max_t = std::nullopt,
                         bool count_only = false,
                         std::int64_t node_budget = 4'000'000'000LL);

// Independent subset filter over all 2^(q^2) point sets; RangeError for
// q^2 > 25. Used as the census cross-check.
std::vector<std::int64_t> brute_force_cap_counts(const IncidencePlane& plane);

// q^4 * prod_{i=2}^{t-1} min(q^2, q^3/C(i,2)) / t! evaluated in exact
// rational arithmetic and converted once; RangeError outside 3 <= t <= q+2.
double cap_bound(int q, int t);

// Exact rational comparison count <= cap_bound(q, t).
bool cap_count_within_bound(std::int64_t count, int q, int t);

// Incidences between a point set and a line set versus the |X||Y|/q
// prediction; holds when the deviation is strictly below sqrt(q|X||Y|),
// with equality tolerated for empty sets.
MixingCheck mixing_check(const IncidencePlane& plane, const std::vector<int>& points,
                         const std::vector<int>& lines);

// Singular values of the point-line biadjacency matrix, descending.
std::vector<double> plane_singular_values(const IncidencePlane& plane);
double second_singular_value(const IncidencePlane& plane);

// Grow a cap by uniform random admissible extensions, recording per step the
// blocked-line count |Z_i| (must equal C(i,2)) and the admissible-point
// count |X_i| (must satisfy |X_i| * C(i,2) <= q^3).
CapTrace greedy_cap_extension_trace(const IncidencePlane& plane, std::uint64_t seed);

}  // namespace qksys

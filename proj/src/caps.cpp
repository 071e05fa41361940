#include "qksys/caps.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "qksys/bitset.hpp"
#include "qksys/errors.hpp"
#include "qksys/rng.hpp"
#include "qksys/util.hpp"

namespace qksys {

namespace {

// Incidence scaffolding shared by the census, the mixing check and the
// greedy trace: line masks plus the line id through each point pair.
struct PlaneIndex {
  int q;
  int points;
  std::vector<Bitset> line_mask;
  std::vector<int> line_of;  // (u * points + v) -> line id

  explicit PlaneIndex(const IncidencePlane& plane)
      : q(plane.q), points(plane.point_count()), line_of(points * points, -1) {
    line_mask.reserve(plane.lines.size());
    for (std::size_t li = 0; li < plane.lines.size(); ++li) {
      Bitset mask(points);
      const auto& line = plane.lines[li];
      for (int p : line) {
        if (p < 0 || p >= points) throw MalformedInput("line contains out-of-range point");
        mask.set(p);
      }
      for (std::size_t i = 0; i < line.size(); ++i) {
        for (std::size_t j = 0; j < line.size(); ++j) {
          if (i != j) line_of[line[i] * points + line[j]] = static_cast<int>(li);
        }
      }
      line_mask.push_back(std::move(mask));
    }
  }

  int line_through(int u, int v) const { return line_of[u * points + v]; }
};

}  // namespace

CapReport enumerate_caps(const IncidencePlane& plane, std::optional<int> max_t,
                         bool count_only, std::int64_t node_budget) {
  const PlaneIndex index(plane);
  const int n = index.points;
  const int depth_cap = max_t ? std::min(*max_t, n) : n;

  CapReport report;
  report.q = plane.q;
  report.counts.assign(depth_cap + 1, 0);
  if (!count_only) report.witnesses.assign(depth_cap + 1, {});

  std::vector<int> stack;
  std::vector<Bitset> forbidden(depth_cap + 1, Bitset(n));
  std::int64_t nodes = 0;
  bool truncated = false;

  auto dfs = [&](auto&& self, int last) -> void {
    const int size = static_cast<int>(stack.size());
    ++report.counts[size];
    if (!count_only && report.witnesses[size].empty() && size > 0) {
      report.witnesses[size] = stack;
    }
    if (size == depth_cap) return;
    const Bitset& forb = forbidden[size];
    for (int v = last + 1; v < n; ++v) {
      if (forb.test(v)) continue;
      if (++nodes > node_budget) {
        truncated = true;
        return;
      }
      Bitset& next = forbidden[size + 1];
      next = forb;
      for (int u : stack) next.or_with(index.line_mask[index.line_through(u, v)]);
      stack.push_back(v);
      self(self, v);
      stack.pop_back();
      if (truncated) return;
    }
  };
  dfs(dfs, -1);

  while (report.counts.size() > 1 && report.counts.back() == 0) report.counts.pop_back();
  report.max_cap_size = static_cast<int>(report.counts.size()) - 1;
  report.total = std::accumulate(report.counts.begin(), report.counts.end(), std::int64_t{0});
  report.budget_exhausted = truncated;
  report.exhaustive = !truncated && depth_cap >= std::min(n, plane.q + 2);

  report.bounds.assign(std::max<std::size_t>(report.counts.size(), plane.q + 3), 0.0);
  for (int t = 3; t <= plane.q + 2 && t < static_cast<int>(report.bounds.size()); ++t) {
    report.bounds[t] = cap_bound(plane.q, t);
  }
  if (report.exhaustive) {
    std::int64_t max_large = 0;
    for (int t = 3; t <= plane.q + 2; ++t) max_large = std::max(max_large, report.count(t));
    const double q2 = static_cast<double>(plane.q) * plane.q;
    report.assembly_total = q2 + q2 * (q2 - 1) + plane.q * static_cast<double>(max_large);
  }
  if (!count_only && !report.witnesses.empty()) {
    report.witnesses.resize(report.counts.size());
  }
  return report;
}

std::vector<std::int64_t> brute_force_cap_counts(const IncidencePlane& plane) {
  const int n = plane.point_count();
  if (n > 25) throw RangeError("brute-force cap census supports q^2 <= 25");
  std::vector<std::uint64_t> line_bits;
  line_bits.reserve(plane.lines.size());
  for (const auto& line : plane.lines) {
    std::uint64_t m = 0;
    for (int p : line) m |= (std::uint64_t{1} << p);
    line_bits.push_back(m);
  }
  std::vector<std::int64_t> counts(n + 1, 0);
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t s = 0; s < limit; ++s) {
    bool cap = true;
    for (std::uint64_t lb : line_bits) {
      if (std::popcount(s & lb) >= 3) {
        cap = false;
        break;
      }
    }
    if (cap) ++counts[std::popcount(s)];
  }
  while (counts.size() > 1 && counts.back() == 0) counts.pop_back();
  return counts;
}

namespace {

// Reduced fraction on __int128; magnitudes stay far below the type limit for
// the supported q range.
struct Rational {
  __int128 num;
  __int128 den;

  static __int128 gcd(__int128 a, __int128 b) {
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    return a < 0 ? -a : a;
  }

  void reduce() {
    const __int128 g = gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  void mul(__int128 n, __int128 d) {
    num *= n;
    den *= d;
    reduce();
  }

  double to_double() const {
    return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
  }
};

Rational cap_bound_rational(int q, int t) {
  if (q < 2 || q > 16) throw RangeError("cap bound supports 2 <= q <= 16");
  if (t < 3 || t > q + 2) {
    throw RangeError("cap bound defined for 3 <= t <= q+2, got t = " + std::to_string(t));
  }
  const __int128 q2 = static_cast<__int128>(q) * q;
  const __int128 q3 = q2 * q;
  Rational r{q2 * q2, 1};
  for (int i = 2; i <= t - 1; ++i) {
    const __int128 pairs = static_cast<__int128>(i) * (i - 1) / 2;
    // min(q^2, q^3 / C(i,2)): the second branch wins exactly when C(i,2) > q.
    if (pairs > q) {
      r.mul(q3, pairs);
    } else {
      r.mul(q2, 1);
    }
  }
  for (int j = 2; j <= t; ++j) r.mul(1, j);
  return r;
}

}  // namespace

double cap_bound(int q, int t) { return cap_bound_rational(q, t).to_double(); }

bool cap_count_within_bound(std::int64_t count, int q, int t) {
  const Rational r = cap_bound_rational(q, t);
  return static_cast<__int128>(count) * r.den <= r.num;
}

MixingCheck mixing_check(const IncidencePlane& plane, const std::vector<int>& points,
                         const std::vector<int>& lines) {
  const int n = plane.point_count();
  Bitset x_mask(n);
  for (int p : points) {
    if (p < 0 || p >= n) throw BadParams("point index out of range");
    x_mask.set(p);
  }
  std::vector<Bitset> line_masks;
  MixingCheck check;
  for (int li : lines) {
    if (li < 0 || li >= static_cast<int>(plane.lines.size())) {
      throw BadParams("line index out of range");
    }
    Bitset m(n);
    for (int p : plane.lines[li]) m.set(p);
    check.observed += Bitset::and_count(m, x_mask);
  }
  const double sx = static_cast<double>(points.size());
  const double sy = static_cast<double>(lines.size());
  check.predicted = sx * sy / static_cast<double>(plane.q);
  check.deviation = std::abs(static_cast<double>(check.observed) - check.predicted);
  check.bound = std::sqrt(static_cast<double>(plane.q) * sx * sy);
  check.holds = check.deviation < check.bound || (check.deviation == 0.0 && check.bound == 0.0);
  return check;
}

std::vector<double> plane_singular_values(const IncidencePlane& plane) {
  const int n = plane.point_count();
  const int l = static_cast<int>(plane.lines.size());
  Eigen::MatrixXd biadj = Eigen::MatrixXd::Zero(n, l);
  for (int li = 0; li < l; ++li) {
    for (int p : plane.lines[li]) biadj(p, li) = 1.0;
  }
  const Eigen::MatrixXd gram = biadj * biadj.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  std::vector<double> singular(n);
  for (int i = 0; i < n; ++i) {
    singular[i] = std::sqrt(std::max(0.0, solver.eigenvalues()[n - 1 - i]));
  }
  return singular;
}

double second_singular_value(const IncidencePlane& plane) {
  const std::vector<double> s = plane_singular_values(plane);
  if (s.size() < 2) throw RangeError("plane too small for a second singular value");
  return s[1];
}

CapTrace greedy_cap_extension_trace(const IncidencePlane& plane, std::uint64_t seed) {
  const PlaneIndex index(plane);
  const int n = index.points;
  const std::int64_t q3 = static_cast<std::int64_t>(plane.q) * plane.q * plane.q;
  Rng rng(seed);
  CapTrace trace;

  const int v1 = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(n)));
  trace.cap.push_back(v1);
  int v2 = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(n - 1)));
  if (v2 >= v1) ++v2;
  trace.cap.push_back(v2);

  Bitset blocked_lines(static_cast<int>(plane.lines.size()));
  Bitset blocked_points(n);
  auto block_pairs_with = [&](int v) {
    for (int u : trace.cap) {
      if (u == v) continue;
      const int li = index.line_through(u, v);
      blocked_lines.set(li);
      blocked_points.or_with(index.line_mask[li]);
    }
  };
  block_pairs_with(v1);  // marks the single line through v1, v2

  for (;;) {
    const int i = static_cast<int>(trace.cap.size());
    const std::int64_t z = blocked_lines.count();
    const std::int64_t pairs = binom64(i, 2);
    if (z != pairs) {
      throw std::logic_error("blocked-line count differs from the pair count");
    }
    std::int64_t x = 0;
    for (int p = 0; p < n; ++p) {
      if (!blocked_points.test(p)) ++x;
    }
    if (x * pairs > q3) {
      throw std::logic_error("admissible set exceeds the mixing-lemma bound");
    }
    trace.rows.push_back(CapTraceRow{i, z, x});
    if (x == 0) break;

    std::int64_t pick = static_cast<std::int64_t>(rng.bounded(static_cast<std::uint64_t>(x)));
    int next = -1;
    for (int p = 0; p < n; ++p) {
      if (!blocked_points.test(p) && pick-- == 0) {
        next = p;
        break;
      }
    }
    trace.cap.push_back(next);
    block_pairs_with(next);
  }
  if (static_cast<int>(trace.cap.size()) > plane.q + 2) {
    throw std::logic_error("cap grew beyond q + 2");
  }
  std::sort(trace.cap.begin(), trace.cap.end());
  return trace;
}

}  // namespace qksys

#include "qksys/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qksys/errors.hpp"
#include "qksys/field.hpp"
#include "qksys/rng.hpp"

namespace qksys {

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; static_cast<long long>(d) * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

constexpr long long kMaxCliques = 2'000'000;

}  // namespace

CliqueSystem build_polynomial_system(int Q, int k) {
  if (!is_prime(Q)) throw NotPrime("Q = " + std::to_string(Q) + " is not prime");
  if (k < 2 || k >= Q) {
    throw BadDegreeBound("degree bound k = " + std::to_string(k) +
                         " must satisfy 2 <= k < Q = " + std::to_string(Q));
  }
  long long count = 1;
  for (int i = 0; i < k; ++i) {
    count *= Q;
    if (count > kMaxCliques) throw RangeError("Q^k exceeds the supported system size");
  }

  const FiniteField f = FiniteField::create(Q);
  const int n = Q * Q;
  std::vector<std::vector<int>> cliques;
  cliques.reserve(static_cast<std::size_t>(count) + Q);

  // One clique per coefficient vector (a_0, ..., a_{k-1}), enumerated by
  // base-Q value; ids x*Q + y come out sorted because x is the major digit.
  std::vector<int> coeffs(k, 0);
  for (long long v = 0; v < count; ++v) {
    long long rest = v;
    for (int i = 0; i < k; ++i) {
      coeffs[i] = static_cast<int>(rest % Q);
      rest /= Q;
    }
    std::vector<int> clique(Q);
    for (int x = 0; x < Q; ++x) {
      int y = 0;
      for (int i = k - 1; i >= 0; --i) y = f.add(f.mul(y, x), coeffs[i]);
      clique[x] = x * Q + y;
    }
    cliques.push_back(std::move(clique));
  }
  for (int x = 0; x < Q; ++x) {
    std::vector<int> col(Q);
    for (int y = 0; y < Q; ++y) col[y] = x * Q + y;
    cliques.push_back(std::move(col));
  }

  nlohmann::json prov = nlohmann::json::object();
  prov["construction"] = "polynomial_system";
  prov["Q"] = Q;
  prov["k"] = k;
  return make_clique_system(n, Q, k - 1, std::move(cliques), std::move(prov));
}

RestrictionResult random_restriction(const CliqueSystem& system, int q_target, double prob,
                                     std::uint64_t seed, int max_resamples) {
  if (!(prob > 0.0 && prob <= 1.0)) throw BadParams("sampling probability must lie in (0, 1]");
  if (q_target < 0) throw BadParams("q_target must be nonnegative");
  if (max_resamples < 0) throw BadParams("max_resamples must be nonnegative");

  RestrictionResult r;
  r.source_n = system.n;
  r.source_q = system.q;
  r.source_ell = system.ell;
  r.q_target = q_target;
  r.prob = prob;
  r.seed = seed;

  for (int attempt = 0; attempt <= max_resamples; ++attempt) {
    Rng rng(seed + static_cast<std::uint64_t>(attempt));
    std::vector<char> in_w(system.n, 0);
    std::vector<int> kept;
    for (int v = 0; v < system.n; ++v) {
      if (rng.bernoulli(prob)) {
        in_w[v] = 1;
        kept.push_back(v);
      }
    }
    std::vector<std::vector<int>> traces;
    traces.reserve(system.cliques.size());
    int max_trace = 0;
    for (const auto& c : system.cliques) {
      std::vector<int> t;
      for (int v : c) {
        if (in_w[v]) t.push_back(v);
      }
      max_trace = std::max(max_trace, static_cast<int>(t.size()));
      traces.push_back(std::move(t));
    }
    r.kept = std::move(kept);
    r.traces = std::move(traces);
    r.max_trace = max_trace;
    r.resample_count = attempt;
    if (max_trace <= q_target) {
      r.failed = false;
      break;
    }
    r.failed = true;
  }

  // Upper-tail diagnostic for a single clique: mu = prob*q, overflow means
  // exceeding q_target = (1+delta)*mu.
  const double mu = prob * system.q;
  if (mu > 0 && q_target > mu) {
    const double delta = static_cast<double>(q_target) / mu - 1.0;
    r.chernoff_tail_per_clique = chernoff_bound(mu, delta, ChernoffTail::upper);
    r.chernoff_union_bound =
        std::min(1.0, r.chernoff_tail_per_clique * static_cast<double>(system.cliques.size()));
  }
  r.provenance = nlohmann::json::object();
  r.provenance["source"] = system.provenance;
  return r;
}

CliqueSystem pad_cliques(const RestrictionResult& restriction, int q_target) {
  if (restriction.failed || restriction.max_trace > q_target) {
    throw TraceTooLarge("restriction has a trace larger than q_target = " +
                        std::to_string(q_target));
  }
  std::vector<int> new_id(restriction.source_n, -1);
  for (std::size_t i = 0; i < restriction.kept.size(); ++i) {
    new_id[restriction.kept[i]] = static_cast<int>(i);
  }
  int next_fresh = static_cast<int>(restriction.kept.size());
  std::vector<std::vector<int>> cliques;
  cliques.reserve(restriction.traces.size());
  for (const auto& t : restriction.traces) {
    std::vector<int> c;
    c.reserve(q_target);
    for (int v : t) c.push_back(new_id[v]);
    while (static_cast<int>(c.size()) < q_target) c.push_back(next_fresh++);
    cliques.push_back(std::move(c));
  }
  nlohmann::json prov = nlohmann::json::object();
  prov["construction"] = "padded_restriction";
  prov["seed"] = restriction.seed;
  prov["prob"] = restriction.prob;
  prov["resample_count"] = restriction.resample_count;
  prov["kept_count"] = restriction.kept.size();
  return make_clique_system(next_fresh, q_target, restriction.source_ell, std::move(cliques),
                            std::move(prov));
}

KGraph restriction_kgraph(const RestrictionResult& restriction, int k) {
  std::vector<int> new_id(restriction.source_n, -1);
  for (std::size_t i = 0; i < restriction.kept.size(); ++i) {
    new_id[restriction.kept[i]] = static_cast<int>(i);
  }
  std::vector<std::vector<int>> sets;
  sets.reserve(restriction.traces.size());
  for (const auto& t : restriction.traces) {
    std::vector<int> s;
    s.reserve(t.size());
    for (int v : t) s.push_back(new_id[v]);
    sets.push_back(std::move(s));
  }
  nlohmann::json prov = nlohmann::json::object();
  prov["construction"] = "restriction_kgraph";
  prov["seed"] = restriction.seed;
  prov["prob"] = restriction.prob;
  prov["k"] = k;
  return kgraph_from_sets(static_cast<int>(restriction.kept.size()), k, sets, std::move(prov));
}

IncidencePlane build_affine_plane(int q) {
  const FiniteField f = FiniteField::create(q);  // NotPrimePower propagates
  IncidencePlane plane;
  plane.q = q;
  plane.lines.reserve(static_cast<std::size_t>(q) * q + q);
  for (int m = 0; m < q; ++m) {
    for (int b = 0; b < q; ++b) {
      std::vector<int> line(q);
      for (int x = 0; x < q; ++x) line[x] = x * q + f.add(f.mul(m, x), b);
      plane.lines.push_back(std::move(line));
    }
  }
  for (int c = 0; c < q; ++c) {
    std::vector<int> line(q);
    for (int y = 0; y < q; ++y) line[y] = c * q + y;
    plane.lines.push_back(std::move(line));
  }
  plane.provenance = nlohmann::json::object();
  plane.provenance["construction"] = "affine_plane";
  plane.provenance["q"] = q;
  return plane;
}

CliqueSystem lines_as_clique_system(const IncidencePlane& plane) {
  nlohmann::json prov = plane.provenance;
  prov["as"] = "line_cliques";
  return make_clique_system(plane.point_count(), plane.q, 1, plane.lines, std::move(prov));
}

CliqueSystem build_enlarged_plane_system(int e, int q) {
  if (!(q < e && static_cast<long long>(e) <= static_cast<long long>(q) * q)) {
    throw RangeError("need q < e <= q^2, got e = " + std::to_string(e) +
                     ", q = " + std::to_string(q));
  }
  int p = 0;
  for (int cand = 2; cand <= q; ++cand) {
    if (is_prime(cand) && cand * cand + cand <= e) p = cand;
  }
  if (p == 0) {
    throw NoValidPrime("no prime p <= q with p^2 + p <= e for e = " + std::to_string(e) +
                       ", q = " + std::to_string(q));
  }
  const IncidencePlane plane = build_affine_plane(p);
  std::vector<std::vector<int>> cliques;
  cliques.reserve(e);
  int next_fresh = p * p;
  for (const auto& line : plane.lines) {
    std::vector<int> c = line;
    while (static_cast<int>(c.size()) < q) c.push_back(next_fresh++);
    cliques.push_back(std::move(c));
  }
  for (int extra = static_cast<int>(plane.lines.size()); extra < e; ++extra) {
    std::vector<int> c(q);
    for (int i = 0; i < q; ++i) c[i] = next_fresh++;
    cliques.push_back(std::move(c));
  }
  nlohmann::json prov = nlohmann::json::object();
  prov["construction"] = "enlarged_plane";
  prov["e"] = e;
  prov["q"] = q;
  prov["p"] = p;
  return make_clique_system(next_fresh, q, 1, std::move(cliques), std::move(prov));
}

double chernoff_bound(double mu, double delta, ChernoffTail tail) {
  if (mu < 0 || delta <= 0) throw BadParams("chernoff_bound needs mu >= 0 and delta > 0");
  switch (tail) {
    case ChernoffTail::lower:
      return std::exp(-delta * delta * mu / 2.0);
    case ChernoffTail::upper:
      return std::exp(-delta * delta * mu / (2.0 + delta));
  }
  throw BadParams("unknown tail");
}

std::optional<BudgetPrime> clique_budget_prime(std::int64_t e, int k) {
  if (k < 2) throw BadParams("k must be at least 2");
  std::optional<BudgetPrime> best;
  for (int Q = 2; ; ++Q) {
    __int128 val = Q;
    __int128 power = 1;
    for (int i = 0; i < k; ++i) power *= Q;
    val = power + Q;
    if (val > e) break;
    if (is_prime(Q)) best = BudgetPrime{Q, 2 * val > e};
  }
  return best;
}

bool restriction_regime_ok(std::int64_t e, int q, int k) {
  if (q < 63) {
    if (e >= (std::int64_t{1} << q)) return false;
  }
  long double lower = 1.0L;
  for (int i = 0; i < k; ++i) lower *= 50.0L * q;
  return static_cast<long double>(e) > lower;
}

}  // namespace qksys

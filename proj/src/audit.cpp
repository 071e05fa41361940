#include "qksys/audit.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>
#include <utility>

#include "qksys/caps.hpp"
#include "qksys/cli_app.hpp"
#include "qksys/constructions.hpp"
#include "qksys/errors.hpp"
#include "qksys/json_io.hpp"
#include "qksys/process.hpp"
#include "qksys/rng.hpp"
#include "qksys/solvers.hpp"
#include "qksys/util.hpp"

namespace qksys {

namespace {

// Collects expectation failures; the first few are kept verbatim so a red
// row names what broke.
class Check {
 public:
  void expect(bool cond, const std::string& what) {
    if (cond) return;
    ok_ = false;
    ++failures_;
    if (failures_ <= 4) {
      if (!detail_.empty()) detail_ += "; ";
      detail_ += what;
    }
  }

  void note(const std::string& summary) { summary_ = summary; }

  bool ok() const { return ok_; }
  std::string detail() const {
    if (ok_) return summary_;
    std::string d = detail_;
    if (failures_ > 4) d += "; (+" + std::to_string(failures_ - 4) + " more)";
    return d;
  }

 private:
  bool ok_ = true;
  int failures_ = 0;
  std::string detail_;
  std::string summary_;
};

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

constexpr std::pair<int, int> kPolyParams[] = {{3, 2}, {5, 2}, {5, 3}, {7, 3}};

void check_hq_clique_count(Check& c, AuditScale) {
  for (const auto& [Q, k] : kPolyParams) {
    const CliqueSystem sys = build_polynomial_system(Q, k);
    const std::int64_t expected = ipow(Q, k) + Q;
    c.expect(static_cast<std::int64_t>(sys.cliques.size()) == expected,
             "Q=" + std::to_string(Q) + ",k=" + std::to_string(k) + ": got " +
                 std::to_string(sys.cliques.size()) + " cliques, expected " +
                 std::to_string(expected));
  }
  c.note("clique count equals Q^k + Q for all four parameter sets");
}

void check_hq_ell_validation(Check& c, AuditScale) {
  for (const auto& [Q, k] : kPolyParams) {
    const CliqueSystem sys = build_polynomial_system(Q, k);
    const EllValidation v = validate_ell_system(sys);
    c.expect(v.ok && v.max_pairwise_intersection <= k - 1,
             "Q=" + std::to_string(Q) + ",k=" + std::to_string(k) +
                 ": max pairwise intersection " + std::to_string(v.max_pairwise_intersection));
  }
  c.note("all clique pairs intersect in at most k-1 vertices");
}

void check_hq_alpha_certification(Check& c, AuditScale scale) {
  const int runs = scale == AuditScale::small ? 5 : 20;
  for (const int Q : {5, 7}) {
    const CliqueSystem sys = build_polynomial_system(Q, 3);
    const KGraph graph = expand_to_kgraph(sys, 3);
    const SolveResult full = exact_independence_number(graph);
    c.expect(full.exact && full.value <= 5,
             "Q=" + std::to_string(Q) + ": alpha " + std::to_string(full.value) +
                 " (exact=" + std::to_string(full.exact) + ") exceeds 5");
    for (int seed = 1; seed <= runs; ++seed) {
      const RestrictionResult r = random_restriction(sys, Q, 0.5, seed, 0);
      c.expect(!r.failed, "restriction flagged failed at q_target = Q");
      const KGraph restricted = restriction_kgraph(r, 3);
      const SolveResult part = exact_independence_number(restricted);
      c.expect(part.exact && part.value <= 5,
               "Q=" + std::to_string(Q) + ", seed " + std::to_string(seed) + ": alpha " +
                   std::to_string(part.value) + " on restriction");
    }
  }
  c.note("alpha <= (k-1)^2+1 = 5 certified on both expansions and all restrictions");
}

void check_prop2_chromatic_lower(Check& c, AuditScale) {
  const CliqueSystem sys = build_enlarged_plane_system(9, 4);
  const KGraph graph = expand_to_kgraph(sys, 2);
  const SolveResult r = exact_chromatic_number(graph);
  c.expect(r.exact, "chromatic search not exact");
  c.expect(r.value >= 4, "chi = " + std::to_string(r.value) + " below p^2 = 4");
  c.note("chi = " + std::to_string(r.value) + " >= p^2 = 4 on the e=9, q=4 instance");
}

void check_greedy_process_bounds(Check& c, AuditScale scale) {
  const int runs = scale == AuditScale::small ? 10 : 50;
  for (const auto& [n, q] : {std::pair<int, int>{100, 5}, {200, 8}}) {
    for (int seed = 1; seed <= runs; ++seed) {
      const ProcessTrace trace =
          run_greedy_process(n, q, seed, std::nullopt, 1000LL * n);
      const CliqueSystem sys = to_clique_system(trace);
      const EllValidation v = validate_ell_system(sys);
      c.expect(v.ok, "trace (" + std::to_string(n) + "," + std::to_string(q) + ") seed " +
                         std::to_string(seed) + " fails ell=1 validation");
      const std::int64_t e = static_cast<std::int64_t>(trace.accepted.size());
      const std::int64_t cap =
          (static_cast<std::int64_t>(n) * (n - 1)) / (static_cast<std::int64_t>(q) * (q - 1));
      c.expect(e <= cap, "e = " + std::to_string(e) + " above pair-count cap " +
                             std::to_string(cap));
      c.expect(e * q * q < static_cast<std::int64_t>(n) * n,
               "e = " + std::to_string(e) + " not below n^2/q^2");
    }
  }
  c.note("every trace validates at ell=1 with e <= n(n-1)/(q(q-1)) < n^2/q^2");
}

void check_caps_census_oracles(Check& c, AuditScale) {
  const CapReport rep2 = enumerate_caps(build_affine_plane(2));
  c.expect(rep2.total == 16, "AG(2,2) total " + std::to_string(rep2.total) + " != 16");
  c.expect(rep2.counts == std::vector<std::int64_t>({1, 4, 6, 4, 1}),
           "AG(2,2) census is not the binomial row of 4");

  const CapReport rep3 = enumerate_caps(build_affine_plane(3));
  c.expect(rep3.count(3) == 72, "I_{3,3} = " + std::to_string(rep3.count(3)) + " != 72");
  c.expect(rep3.max_cap_size == 4,
           "AG(2,3) max cap " + std::to_string(rep3.max_cap_size) + " != 4");

  const IncidencePlane plane4 = build_affine_plane(4);
  const CapReport rep4 = enumerate_caps(plane4);
  const std::vector<std::int64_t> brute = brute_force_cap_counts(plane4);
  c.expect(rep4.counts == brute, "AG(2,4) census differs from the subset filter");
  c.note("q=2 power set, I_{3,3}=72, max cap 4, and q=4 census matches the subset filter");
}

void check_caps_bound_formula(Check& c, AuditScale scale) {
  const std::vector<int> qs = scale == AuditScale::small ? std::vector<int>{3, 4}
                                                         : std::vector<int>{3, 4, 5};
  for (const int q : qs) {
    const CapReport rep = enumerate_caps(build_affine_plane(q), std::nullopt, q >= 5);
    c.expect(rep.exhaustive, "census for q=" + std::to_string(q) + " not exhaustive");
    for (int t = 3; t <= q + 2; ++t) {
      c.expect(cap_count_within_bound(rep.count(t), q, t),
               "I_{" + std::to_string(q) + "," + std::to_string(t) + "} = " +
                   std::to_string(rep.count(t)) + " above the product-formula bound");
    }
  }
  c.note("every exact count stays below the product-formula bound (exact rationals)");
}

void check_spectral_mixing(Check& c, AuditScale scale) {
  for (const int q : {2, 3, 4, 5, 7}) {
    const double sigma2 = second_singular_value(build_affine_plane(q));
    c.expect(std::abs(sigma2 - std::sqrt(static_cast<double>(q))) <= 1e-9,
             "q=" + std::to_string(q) + ": second singular value " + std::to_string(sigma2));
  }
  const int samples = scale == AuditScale::small ? 200 : 1000;
  for (const int q : {3, 5, 7}) {
    const IncidencePlane plane = build_affine_plane(q);
    Rng rng(777 + static_cast<std::uint64_t>(q));
    for (int s = 0; s < samples; ++s) {
      const double px = rng.unit_real();
      const double py = rng.unit_real();
      std::vector<int> points, lines;
      for (int p = 0; p < plane.point_count(); ++p) {
        if (rng.bernoulli(px)) points.push_back(p);
      }
      for (int l = 0; l < static_cast<int>(plane.lines.size()); ++l) {
        if (rng.bernoulli(py)) lines.push_back(l);
      }
      const MixingCheck mc = mixing_check(plane, points, lines);
      c.expect(mc.holds, "mixing violated at q=" + std::to_string(q) + ", sample " +
                             std::to_string(s) + " (|X|=" + std::to_string(points.size()) +
                             ", |Y|=" + std::to_string(lines.size()) + ")");
    }
  }
  c.note("second singular value is sqrt(q) within 1e-9; mixing holds on every sample");
}

void check_cap_trace_bounds(Check& c, AuditScale scale) {
  const int runs = scale == AuditScale::small ? 20 : 100;
  for (const int q : {5, 7, 9}) {
    const IncidencePlane plane = build_affine_plane(q);
    const std::int64_t q3 = static_cast<std::int64_t>(q) * q * q;
    for (int seed = 1; seed <= runs; ++seed) {
      const CapTrace trace = greedy_cap_extension_trace(plane, seed);
      for (const CapTraceRow& row : trace.rows) {
        c.expect(row.z_size == binom64(row.i, 2),
                 "q=" + std::to_string(q) + " seed " + std::to_string(seed) + ": |Z_" +
                     std::to_string(row.i) + "| != C(i,2)");
        c.expect(row.x_size * binom64(row.i, 2) <= q3,
                 "q=" + std::to_string(q) + " seed " + std::to_string(seed) + ": |X_" +
                     std::to_string(row.i) + "| above q^3/C(i,2)");
      }
      c.expect(static_cast<int>(trace.cap.size()) <= q + 2,
               "cap grew beyond q+2 at q=" + std::to_string(q));
    }
  }
  c.note("|Z_i| = C(i,2) and |X_i| <= q^3/C(i,2) on every step; final size <= q+2");
}

CliqueSystem sunflower(int petals, int q) {
  std::vector<std::vector<int>> cliques;
  int next = 1;
  for (int i = 0; i < petals; ++i) {
    std::vector<int> cl{0};
    for (int j = 1; j < q; ++j) cl.push_back(next++);
    cliques.push_back(std::move(cl));
  }
  nlohmann::json prov{{"construction", "sunflower"}, {"petals", petals}, {"q", q}};
  return make_clique_system(next, q, 1, std::move(cliques), std::move(prov));
}

// Two hubs joined by one shared clique, plus private petals on each hub, so
// the high-degree side B has an internal edge.
CliqueSystem double_sunflower(int petals_a, int petals_b, int q) {
  std::vector<std::vector<int>> cliques;
  int next = 2;
  std::vector<int> bridge{0, 1};
  while (static_cast<int>(bridge.size()) < q) bridge.push_back(next++);
  cliques.push_back(std::move(bridge));
  for (int hub = 0; hub <= 1; ++hub) {
    const int petals = hub == 0 ? petals_a : petals_b;
    for (int i = 0; i < petals; ++i) {
      std::vector<int> cl{hub};
      for (int j = 1; j < q; ++j) cl.push_back(next++);
      cliques.push_back(std::move(cl));
    }
  }
  nlohmann::json prov{{"construction", "double_sunflower"}};
  return make_clique_system(next, q, 1, std::move(cliques), std::move(prov));
}

void check_coloring_properness(Check& c, AuditScale scale) {
  struct Instance {
    CliqueSystem sys;
    int k;
    std::uint64_t seed;
  };
  std::vector<Instance> corpus;
  const bool small = scale == AuditScale::small;
  const std::pair<int, int> process_params[] = {{60, 5}, {80, 6}, {70, 4}, {90, 5}, {100, 5}};
  std::uint64_t seed = 101;
  for (const auto& [n, q] : process_params) {
    for (int rep = 0; rep < (small ? 1 : 2); ++rep) {
      const ProcessTrace trace = run_greedy_process(n, q, seed, std::nullopt, 1000LL * n);
      corpus.push_back({to_clique_system(trace), 3, seed});
      ++seed;
    }
    if (small && corpus.size() >= 3) break;
  }
  corpus.push_back({sunflower(40, 3), 2, 201});
  corpus.push_back({double_sunflower(30, 30, 3), 2, 205});
  corpus.push_back({build_enlarged_plane_system(12, 5), 2, 301});
  if (!small) {
    corpus.push_back({sunflower(40, 4), 3, 202});
    corpus.push_back({sunflower(60, 3), 3, 203});
    corpus.push_back({sunflower(60, 4), 2, 204});
    corpus.push_back({double_sunflower(25, 35, 4), 3, 206});
    corpus.push_back({build_enlarged_plane_system(9, 4), 2, 302});
    corpus.push_back({build_enlarged_plane_system(20, 6), 3, 303});
    corpus.push_back({build_enlarged_plane_system(30, 6), 2, 304});
  }

  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& [sys, k, inst_seed] = corpus[i];
    const std::string tag = "instance " + std::to_string(i);
    const KGraph graph = expand_to_kgraph(sys, k);

    const Coloring split = split_coloring(sys, k, inst_seed);
    c.expect(verify_coloring(graph, split).proper, tag + ": split coloring improper");

    // Recompute the degree-split inequalities from scratch.
    const DegreeReport deg = degree_report(graph);
    const std::int64_t e = static_cast<std::int64_t>(sys.cliques.size());
    std::int64_t qpow = 1;
    for (int j = 0; j < k - 1; ++j) qpow *= sys.q;
    const std::int64_t d = ceil_sqrt(e * qpow * qpow);
    std::vector<char> in_b(graph.n, 0);
    std::int64_t b_size = 0, b_degree_sum = 0;
    for (int v = 0; v < graph.n; ++v) {
      if (deg.degrees[v] > d) {
        in_b[v] = 1;
        ++b_size;
        b_degree_sum += deg.degrees[v];
      }
    }
    c.expect(b_degree_sum >= b_size * d, tag + ": degree sum below |B| * d");
    c.expect(b_degree_sum <= static_cast<std::int64_t>(k) * e * binom64(sys.q, k),
             tag + ": degree sum above k*e*C(q,k)");
    std::vector<std::int64_t> deg_b(graph.n, 0);
    for (const auto& edge : graph.edges) {
      bool inside = true;
      for (int v : edge) {
        if (!in_b[v]) { inside = false; break; }
      }
      if (inside) {
        for (int v : edge) ++deg_b[v];
      }
    }
    for (int v = 0; v < graph.n; ++v) {
      if (!in_b[v]) continue;
      c.expect(deg_b[v] * (sys.q - 1) <= (b_size - 1) * binom64(sys.q - 1, k - 1),
               tag + ": H[B] degree bound violated at vertex " + std::to_string(v));
    }

    const Coloring greedy = greedy_coloring(graph, inst_seed);
    c.expect(verify_coloring(graph, greedy).proper, tag + ": greedy coloring improper");
    const int palette = greedy.provenance["palette"].get<int>();
    const int mono = greedy.provenance["phase1_monochromatic"].get<int>();
    c.expect(greedy.num_colors <= palette + mono, tag + ": greedy color count above bound");
  }
  c.note("all split and greedy colorings proper; degree-split inequalities hold");
}

void check_cherry_counts(Check& c, AuditScale) {
  auto census = [&](int q) {
    const KGraph graph = expand_to_kgraph(lines_as_clique_system(build_affine_plane(q)), 3);
    const std::vector<Cherry> cherries = find_cherries(graph);
    // Independent route: pair codegrees summed as C(codeg, 3).
    std::map<std::pair<int, int>, std::int64_t> codeg;
    for (const auto& e : graph.edges) {
      ++codeg[{e[0], e[1]}];
      ++codeg[{e[0], e[2]}];
      ++codeg[{e[1], e[2]}];
    }
    std::int64_t formula = 0;
    for (const auto& [pair, cd] : codeg) formula += binom64(cd, 3);
    return std::pair<std::int64_t, std::int64_t>(
        static_cast<std::int64_t>(cherries.size()), formula);
  };
  const auto [count5, formula5] = census(5);
  c.expect(count5 == 300, "AG(2,5) cherry count " + std::to_string(count5) + " != 300");
  c.expect(formula5 == count5, "AG(2,5) enumeration disagrees with the codegree formula");
  const auto [count3, formula3] = census(3);
  c.expect(count3 == 0, "AG(2,3) cherry count " + std::to_string(count3) + " != 0");
  c.expect(formula3 == 0, "AG(2,3) codegree formula nonzero");
  c.note("300 cherries in AG(2,5), none in AG(2,3), matching the codegree formula");
}

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

CliRun call_cli(const std::vector<std::string>& args, const std::string& stdin_text) {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = run_cli(args, in, out, err);
  return CliRun{code, out.str(), err.str()};
}

void check_cli_determinism(Check& c, AuditScale) {
  const std::string poly52 = call_cli({"construct", "poly", "--Q", "5", "--k", "2"}, "").out;
  const std::string poly32 = call_cli({"construct", "poly", "--Q", "3", "--k", "2"}, "").out;
  const std::string plane4 = call_cli({"construct", "plane", "--q", "4"}, "").out;
  const std::string plane3 = call_cli({"construct", "plane", "--q", "3"}, "").out;
  const std::string plane5 = call_cli({"construct", "plane", "--q", "5"}, "").out;
  const std::string kg43 = call_cli({"expand", "--k", "3"}, plane4).out;
  const std::string kg33 = call_cli({"expand", "--k", "3"}, plane3).out;
  const std::string kg53 = call_cli({"expand", "--k", "3"}, plane5).out;
  const std::string restr =
      call_cli({"restrict", "--q-target", "5", "--prob", "0.3", "--seed", "7"}, poly52).out;
  const std::string proc = call_cli({"process", "--n", "50", "--q", "4", "--seed", "11"}, "").out;

  const std::vector<std::pair<std::vector<std::string>, std::string>> commands = {
      {{"construct", "poly", "--Q", "5", "--k", "2"}, ""},
      {{"construct", "plane", "--q", "4"}, ""},
      {{"construct", "prop2", "--e", "9", "--q", "4"}, ""},
      {{"restrict", "--q-target", "5", "--prob", "0.3", "--seed", "7"}, poly52},
      {{"pad"}, restr},
      {{"expand", "--k", "2"}, poly32},
      {{"process", "--n", "50", "--q", "4", "--seed", "11"}, ""},
      {{"stats", "--k", "3"}, proc},
      {{"color", "--method", "greedy", "--seed", "3"}, kg43},
      {{"color", "--method", "split", "--k", "2", "--seed", "5"}, poly52},
      {{"alpha"}, kg33},
      {{"chi"}, kg33},
      {{"induce", "--prob", "0.5", "--seed", "13"}, kg53},
      {{"caps", "--q", "3"}, ""},
      {{"spectrum", "--q", "3"}, ""},
      {{"cherries"}, kg53},
      {{"verify"}, proc},
  };
  for (const auto& [args, input] : commands) {
    const CliRun first = call_cli(args, input);
    const CliRun second = call_cli(args, input);
    std::string label;
    for (const auto& a : args) label += (label.empty() ? "" : " ") + a;
    c.expect(first.code == 0, "'" + label + "' exited " + std::to_string(first.code));
    c.expect(!first.out.empty(), "'" + label + "' produced no output");
    c.expect(first.out == second.out && first.code == second.code,
             "'" + label + "' is not byte-identical across runs");
  }
  c.note("all representative commands re-run byte-identically");
}

struct NamedCheck {
  const char* name;
  double budget_millis;
  void (*fn)(Check&, AuditScale);
};

constexpr NamedCheck kChecks[] = {
    {"hq_clique_count", 4000, check_hq_clique_count},
    {"hq_ell_validation", 10000, check_hq_ell_validation},
    {"hq_alpha_certification", 60000, check_hq_alpha_certification},
    {"prop2_chromatic_lower", 5000, check_prop2_chromatic_lower},
    {"greedy_process_bounds", 60000, check_greedy_process_bounds},
    {"caps_census_oracles", 120000, check_caps_census_oracles},
    {"caps_bound_formula", 300000, check_caps_bound_formula},
    {"spectral_mixing", 60000, check_spectral_mixing},
    {"cap_trace_bounds", 30000, check_cap_trace_bounds},
    {"coloring_properness", 60000, check_coloring_properness},
    {"cherry_counts", 5000, check_cherry_counts},
    {"cli_determinism", 30000, check_cli_determinism},
};

}  // namespace

std::vector<CheckResult> run_audit(AuditScale scale) {
  std::vector<CheckResult> results;
  for (const NamedCheck& named : kChecks) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      named.fn(check, scale);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const auto end = std::chrono::steady_clock::now();
    CheckResult result;
    result.name = named.name;
    result.millis = std::chrono::duration<double, std::milli>(end - start).count();
    result.budget_millis = named.budget_millis;
    result.passed = check.ok() && result.millis <= named.budget_millis;
    result.detail = check.detail();
    if (check.ok() && result.millis > named.budget_millis) {
      result.detail = "exceeded the time budget of " +
                      std::to_string(static_cast<long long>(named.budget_millis)) + " ms";
    }
    results.push_back(std::move(result));
  }
  return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    if (!r.passed) return false;
  }
  return true;
}

std::string format_audit_table(const std::vector<CheckResult>& results) {
  std::ostringstream out;
  int passed = 0;
  for (const auto& r : results) {
    out << (r.passed ? "PASS" : "FAIL") << "  " << std::left << std::setw(26) << r.name
        << std::right << std::setw(9) << std::fixed << std::setprecision(1) << r.millis
        << " ms  " << r.detail << "\n";
    if (r.passed) ++passed;
  }
  out << passed << "/" << results.size() << " checks passed\n";
  return out.str();
}

}  // namespace qksys

#include "qksys/cli_app.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "qksys/audit.hpp"
#include "qksys/caps.hpp"
#include "qksys/constructions.hpp"
#include "qksys/errors.hpp"
#include "qksys/json_io.hpp"
#include "qksys/process.hpp"
#include "qksys/solvers.hpp"
#include "qksys/util.hpp"
#include "qksys/version.hpp"

namespace qksys {

namespace {

struct CommonOpts {
  std::string in_path;
  std::string out_path;
  std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts* opts, bool with_input) {
  if (with_input) {
    cmd->add_option("--in", opts->in_path, "input document path ('-' or omitted for stdin)");
  }
  cmd->add_option("--out", opts->out_path, "output path (omitted for stdout)");
  cmd->add_option("--format", opts->format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
}

nlohmann::json read_input(const CommonOpts& opts, std::istream& in) {
  std::string text;
  if (opts.in_path.empty() || opts.in_path == "-") {
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  } else {
    std::ifstream file(opts.in_path);
    if (!file) throw MalformedInput("cannot open input file: " + opts.in_path);
    std::ostringstream buf;
    buf << file.rdbuf();
    text = buf.str();
  }
  return parse_document(text);
}

void write_output(const CommonOpts& opts, const std::string& content, std::ostream& out) {
  if (opts.out_path.empty()) {
    out << content;
  } else {
    std::ofstream file(opts.out_path, std::ios::binary);
    if (!file) throw BadParams("cannot open output file: " + opts.out_path);
    file << content;
  }
}

// Shortest round-trip decimal form, identical to the JSON encoding.
std::string fmt_double(double v) { return nlohmann::json(v).dump(); }

nlohmann::json tool_stamp() {
  nlohmann::json j;
  j["name"] = kToolName;
  j["version"] = kToolVersion;
  return j;
}

// Every emitted document carries the tool stamp and the parsed config.
void stamp(nlohmann::json& doc, nlohmann::json config) {
  if (!doc.contains("provenance") || !doc["provenance"].is_object()) {
    doc["provenance"] = nlohmann::json::object();
  }
  doc["provenance"]["tool"] = tool_stamp();
  doc["provenance"]["config"] = std::move(config);
}

std::string type_of(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string()) {
    throw MalformedInput("input document has no type field");
  }
  return doc["type"].get<std::string>();
}

// Accept a clique system directly, a plane (lines as cliques), or a
// restriction (its k-graph is built separately by the caller).
CliqueSystem system_like_from(const nlohmann::json& doc) {
  const std::string t = type_of(doc);
  if (t == "clique_system") return system_from_json(doc);
  if (t == "plane") return lines_as_clique_system(plane_from_json(doc));
  throw MalformedInput("expected a clique_system or plane document, got '" + t + "'");
}

std::string process_csv(const ProcessTrace& trace) {
  std::ostringstream csv;
  csv << "n,q,seed,e,covered_pairs,total_pairs,stop_reason,trailing_rejections\n";
  csv << trace.n << ',' << trace.q << ',' << trace.seed << ',' << trace.accepted.size() << ','
      << trace.covered_pairs << ',' << binom64(trace.n, 2) << ',' << to_string(trace.stop_reason)
      << ',' << trace.trailing_rejections << '\n';
  return csv.str();
}

std::string caps_csv(const CapReport& report) {
  std::ostringstream csv;
  csv << "t,count,bound,ratio\n";
  for (std::size_t t = 0; t < report.counts.size(); ++t) {
    csv << t << ',' << report.counts[t] << ',';
    if (t >= 3 && t < report.bounds.size() && report.bounds[t] > 0) {
      csv << fmt_double(report.bounds[t]) << ','
          << fmt_double(static_cast<double>(report.counts[t]) / report.bounds[t]);
    } else {
      csv << ',';
    }
    csv << '\n';
  }
  return csv.str();
}

std::string audit_csv(const std::vector<CheckResult>& results) {
  std::ostringstream csv;
  csv << "name,passed,millis,detail\n";
  for (const auto& r : results) {
    std::string detail = r.detail;
    std::replace(detail.begin(), detail.end(), ',', ';');
    csv << r.name << ',' << (r.passed ? "true" : "false") << ',' << fmt_double(r.millis) << ','
        << detail << '\n';
  }
  return csv.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"constructions, simulations and audits for nearly disjoint clique systems"};
  app.name("qksys");
  app.require_subcommand(1);

  // construct
  auto* construct = app.add_subcommand("construct", "build a named object");
  construct->require_subcommand(1);

  CommonOpts poly_opts;
  int poly_Q = 0, poly_k = 0;
  auto* poly = construct->add_subcommand("poly", "polynomial-line system over F_Q x F_Q");
  poly->add_option("--Q", poly_Q, "prime field order")->required();
  poly->add_option("--k", poly_k, "degree bound (2 <= k < Q)")->required();
  add_common(poly, &poly_opts, false);

  CommonOpts plane_opts;
  int plane_q = 0;
  auto* plane_cmd = construct->add_subcommand("plane", "affine plane of prime-power order");
  plane_cmd->add_option("--q", plane_q, "plane order")->required();
  add_common(plane_cmd, &plane_opts, false);

  CommonOpts prop2_opts;
  int prop2_e = 0, prop2_q = 0;
  auto* prop2 = construct->add_subcommand("prop2", "enlarged-plane (q,2)-system with e cliques");
  prop2->add_option("--e", prop2_e, "clique count (q < e <= q^2)")->required();
  prop2->add_option("--q", prop2_q, "clique size")->required();
  add_common(prop2, &prop2_opts, false);

  // pipeline
  CommonOpts restrict_opts;
  int restrict_q_target = 0;
  double restrict_prob = -1.0;
  std::uint64_t restrict_seed = 0;
  int restrict_max_resamples = 64;
  auto* restrict_cmd = app.add_subcommand("restrict", "sample a random vertex restriction");
  restrict_cmd->add_option("--q-target", restrict_q_target, "maximum allowed trace size")
      ->required();
  restrict_cmd->add_option("--prob", restrict_prob,
                           "keep probability (default q_target / (10 * source q))");
  restrict_cmd->add_option("--seed", restrict_seed, "rng seed");
  restrict_cmd->add_option("--max-resamples", restrict_max_resamples,
                           "resample attempts before flagging failure");
  add_common(restrict_cmd, &restrict_opts, true);

  CommonOpts pad_opts;
  int pad_q_target = -1;
  auto* pad_cmd = app.add_subcommand("pad", "pad restriction traces to full cliques");
  pad_cmd->add_option("--q-target", pad_q_target, "target clique size (default from input)");
  add_common(pad_cmd, &pad_opts, true);

  CommonOpts expand_opts;
  int expand_k = 0;
  auto* expand_cmd = app.add_subcommand("expand", "expand cliques to a k-uniform hypergraph");
  expand_cmd->add_option("--k", expand_k, "uniformity")->required();
  add_common(expand_cmd, &expand_opts, true);

  CommonOpts process_opts;
  int process_n = 0, process_q = 0;
  std::uint64_t process_seed = 0;
  std::int64_t process_target = -1, process_reject_limit = -1;
  auto* process_cmd = app.add_subcommand("process", "run the random greedy (q,k)-process");
  process_cmd->add_option("--n", process_n, "vertex count")->required();
  process_cmd->add_option("--q", process_q, "clique size")->required();
  process_cmd->add_option("--seed", process_seed, "rng seed");
  process_cmd->add_option("--target-e", process_target, "stop after this many acceptances");
  process_cmd->add_option("--reject-limit", process_reject_limit,
                          "consecutive rejections before stopping (default 1000 * n)");
  add_common(process_cmd, &process_opts, false);

  CommonOpts stats_opts;
  int stats_k = 0;
  std::int64_t stats_budget = 10'000'000;
  auto* stats_cmd = app.add_subcommand("stats", "expand a trace and measure alpha / chi bound");
  stats_cmd->add_option("--k", stats_k, "uniformity")->required();
  stats_cmd->add_option("--budget", stats_budget, "search node budget");
  add_common(stats_cmd, &stats_opts, true);

  CommonOpts color_opts;
  std::string color_method = "greedy";
  int color_k = 0;
  std::uint64_t color_seed = 0;
  auto* color_cmd = app.add_subcommand("color", "produce a proper coloring");
  color_cmd->add_option("--method", color_method, "greedy (kgraph input) or split (system input)")
      ->check(CLI::IsMember({"greedy", "split"}));
  color_cmd->add_option("--k", color_k, "uniformity (split only)");
  color_cmd->add_option("--seed", color_seed, "rng seed");
  add_common(color_cmd, &color_opts, true);

  CommonOpts alpha_opts;
  std::string alpha_method = "exact";
  std::int64_t alpha_budget = 10'000'000;
  std::uint64_t alpha_seed = 0;
  auto* alpha_cmd = app.add_subcommand("alpha", "independence number of a k-graph");
  alpha_cmd->add_option("--method", alpha_method, "exact or greedy")
      ->check(CLI::IsMember({"exact", "greedy"}));
  alpha_cmd->add_option("--budget", alpha_budget, "search node budget");
  alpha_cmd->add_option("--seed", alpha_seed, "rng seed (greedy method)");
  add_common(alpha_cmd, &alpha_opts, true);

  CommonOpts chi_opts;
  std::int64_t chi_budget = 10'000'000;
  auto* chi_cmd = app.add_subcommand("chi", "chromatic number of a k-graph");
  chi_cmd->add_option("--budget", chi_budget, "search node budget");
  add_common(chi_cmd, &chi_opts, true);

  CommonOpts caps_opts;
  int caps_q = 0, caps_max_t = -1;
  bool caps_count_only = false;
  std::int64_t caps_budget = 4'000'000'000LL;
  auto* caps_cmd = app.add_subcommand("caps", "cap census of an affine plane");
  caps_cmd->add_option("--q", caps_q, "plane order (alternative to --in)");
  caps_cmd->add_option("--max-t", caps_max_t, "truncate the census at this cap size");
  caps_cmd->add_flag("--count-only", caps_count_only, "skip witness caps");
  caps_cmd->add_option("--budget", caps_budget, "search node budget");
  add_common(caps_cmd, &caps_opts, true);

  CommonOpts spectrum_opts;
  int spectrum_q = 0;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "singular values of the incidence matrix");
  spectrum_cmd->add_option("--q", spectrum_q, "plane order (alternative to --in)");
  add_common(spectrum_cmd, &spectrum_opts, true);

  CommonOpts induce_opts;
  double induce_prob = 0.5;
  std::uint64_t induce_seed = 0;
  auto* induce_cmd = app.add_subcommand("induce", "random induced subgraph of a k-graph");
  induce_cmd->add_option("--prob", induce_prob, "keep probability per vertex");
  induce_cmd->add_option("--seed", induce_seed, "rng seed");
  add_common(induce_cmd, &induce_opts, true);

  CommonOpts cherries_opts;
  auto* cherries_cmd = app.add_subcommand("cherries", "enumerate cherries of a 3-graph");
  add_common(cherries_cmd, &cherries_opts, true);

  CommonOpts verify_opts;
  auto* verify_cmd = app.add_subcommand("verify", "re-check pairwise intersections of a system");
  add_common(verify_cmd, &verify_opts, true);

  CommonOpts audit_opts;
  std::string audit_scale = "medium";
  auto* audit_cmd = app.add_subcommand("audit", "run the full verification suite");
  audit_cmd->add_option("--scale", audit_scale, "small or medium")
      ->check(CLI::IsMember({"small", "medium"}));
  add_common(audit_cmd, &audit_opts, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help lands here; CLI11 prints via app.exit
      return app.exit(e, out, err);
    }
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (poly->parsed()) {
      CliqueSystem system = build_polynomial_system(poly_Q, poly_k);
      nlohmann::json doc = system_to_json(system);
      stamp(doc, {{"subcommand", "construct poly"}, {"Q", poly_Q}, {"k", poly_k}});
      if (poly_opts.format != "json") throw BadParams("csv output is not available here");
      write_output(poly_opts, dump_document(doc), out);
      return 0;
    }
    if (plane_cmd->parsed()) {
      IncidencePlane plane = build_affine_plane(plane_q);
      nlohmann::json doc = plane_to_json(plane);
      stamp(doc, {{"subcommand", "construct plane"}, {"q", plane_q}});
      if (plane_opts.format != "json") throw BadParams("csv output is not available here");
      write_output(plane_opts, dump_document(doc), out);
      return 0;
    }
    if (prop2->parsed()) {
      CliqueSystem system = build_enlarged_plane_system(prop2_e, prop2_q);
      nlohmann::json doc = system_to_json(system);
      stamp(doc, {{"subcommand", "construct prop2"}, {"e", prop2_e}, {"q", prop2_q}});
      if (prop2_opts.format != "json") throw BadParams("csv output is not available here");
      write_output(prop2_opts, dump_document(doc), out);
      return 0;
    }
    if (restrict_cmd->parsed()) {
      const CliqueSystem system = system_from_json(read_input(restrict_opts, in));
      const double prob = restrict_prob > 0
                              ? restrict_prob
                              : static_cast<double>(restrict_q_target) / (10.0 * system.q);
      const int k_guess = system.ell + 1;
      if (!restriction_regime_ok(static_cast<std::int64_t>(system.cliques.size()),
                             restrict_q_target, k_guess)) {
        err << "note: (e, q, k) = (" << system.cliques.size() << ", " << restrict_q_target
            << ", " << k_guess << ") lies outside the regime 2^q > e > (50q)^k\n";
      }
      RestrictionResult r =
          random_restriction(system, restrict_q_target, prob, restrict_seed,
                             restrict_max_resamples);
      nlohmann::json doc = restriction_to_json(r);
      stamp(doc, {{"subcommand", "restrict"},
                  {"q_target", restrict_q_target},
                  {"prob", prob},
                  {"seed", restrict_seed},
                  {"max_resamples", restrict_max_resamples}});
      if (restrict_opts.format != "json") throw BadParams("csv output is not available here");
      write_output(restrict_opts, dump_document(doc), out);
      return 0;
    }
    if (pad_cmd->parsed()) {
      RestrictionResult r = restriction_from_json(read_input(pad_opts, in));
      const int q_target = pad_q_target >= 0 ? pad_q_target : r.q_target;
      CliqueSystem system = pad_cliques(r, q_target);
      nlohmann::json doc = system_to_json(system);
      stamp(doc, {{"subcommand", "pad"}, {"q_target", q_target}});
      if (pad_opts.format != "json") throw BadParams("csv output is not available here");
      write_output(pad_opts, dump_document(doc), out);
      return 0;
    }
    if (expand_cmd->parsed()) {
      const nlohmann::json input = read_input(expand_opts, in);
      KGraph graph;
      if (type_of(input) == "restriction") {
        graph = restriction_kgraph(restriction_from_json(input), expand_k);
      } else {
        graph = expand_to_kgraph(system_like_from(input), expand_k);
      }
      nlohmann::json doc = kgraph_to_json(graph);
      stamp(doc, {{"subcommand", "expand"}, {"k", expand_k}});
      if (expand_opts.format != "json") throw BadParams("csv output is not available here");
      write_output(expand_opts, dump_document(doc), out);
      return 0;
    }
    if (process_cmd->parsed()) {
      const std::int64_t reject_limit =
          process_reject_limit > 0 ? process_reject_limit : 1000LL * process_n;
      std::optional<std::int64_t> target;
      if (process_cmd->count("--target-e") > 0) target = process_target;
      ProcessTrace trace = run_greedy_process(process_n, process_q, process_seed, target,
                                              reject_limit);
      if (process_opts.format == "csv") {
        write_output(process_opts, process_csv(trace), out);
      } else {
        nlohmann::json doc = trace_to_json(trace);
        stamp(doc, {{"subcommand", "process"},
                    {"n", process_n},
                    {"q", process_q},
                    {"seed", process_seed},
                    {"target_e", target ? nlohmann::json(*target) : nlohmann::json(nullptr)},
                    {"reject_limit", reject_limit}});
        write_output(process_opts, dump_document(doc), out);
      }
      return 0;
    }
    if (stats_cmd->parsed()) {
      const CliqueSystem system = system_from_json(read_input(stats_opts, in));
      const ProcessStats stats = process_stats(system, stats_k, stats_budget);
      nlohmann::json doc = stats_to_json(stats, system.n, stats_k);
      stamp(doc, {{"subcommand", "stats"}, {"k", stats_k}, {"budget", stats_budget}});
      if (stats_opts.format != "json") throw BadParams("csv output is not available here");
      write_output(stats_opts, dump_document(doc), out);
      return stats.alpha_method == "exact_budget_exhausted" ? 4 : 0;
    }
    if (color_cmd->parsed()) {
      const nlohmann::json input = read_input(color_opts, in);
      Coloring coloring;
      int n = 0;
      if (color_method == "greedy") {
        const KGraph graph = kgraph_from_json(input);
        coloring = greedy_coloring(graph, color_seed);
        n = graph.n;
      } else {
        if (color_k <= 0) throw BadParams("--k is required for split coloring");
        const CliqueSystem system = system_like_from(input);
        coloring = split_coloring(system, color_k, color_seed);
        n = system.n;
      }
      nlohmann::json doc = coloring_to_json(coloring, n);
      stamp(doc, {{"subcommand", "color"},
                  {"method", color_method},
                  {"k", color_k},
                  {"seed", color_seed}});
      if (color_opts.format != "json") throw BadParams("csv output is not available here");
      write_output(color_opts, dump_document(doc), out);
      return 0;
    }
    if (alpha_cmd->parsed()) {
      const KGraph graph = kgraph_from_json(read_input(alpha_opts, in));
      SolveResult result;
      if (alpha_method == "exact") {
        result = exact_independence_number(graph, alpha_budget);
      } else {
        result.witness_set = greedy_independent_set(graph, alpha_seed);
        result.value = static_cast<std::int64_t>(result.witness_set.size());
        result.exact = false;
      }
      nlohmann::json doc = solve_result_to_json(result, "alpha");
      doc["method"] = alpha_method;
      stamp(doc, {{"subcommand", "alpha"},
                  {"method", alpha_method},
                  {"budget", alpha_budget},
                  {"seed", alpha_seed}});
      if (alpha_opts.format != "json") throw BadParams("csv output is not available here");
      write_output(alpha_opts, dump_document(doc), out);
      return result.budget_exhausted ? 4 : 0;
    }
    if (chi_cmd->parsed()) {
      const KGraph graph = kgraph_from_json(read_input(chi_opts, in));
      const SolveResult result = exact_chromatic_number(graph, chi_budget);
      nlohmann::json doc = solve_result_to_json(result, "chi");
      stamp(doc, {{"subcommand", "chi"}, {"budget", chi_budget}});
      if (chi_opts.format != "json") throw BadParams("csv output is not available here");
      write_output(chi_opts, dump_document(doc), out);
      return result.budget_exhausted ? 4 : 0;
    }
    if (caps_cmd->parsed()) {
      IncidencePlane plane;
      if (caps_cmd->count("--in") > 0) {
        plane = plane_from_json(read_input(caps_opts, in));
      } else if (caps_q >= 2) {
        plane = build_affine_plane(caps_q);
      } else {
        throw BadParams("caps needs --q or --in");
      }
      std::optional<int> max_t;
      if (caps_max_t >= 0) max_t = caps_max_t;
      const CapReport report = enumerate_caps(plane, max_t, caps_count_only, caps_budget);
      if (caps_opts.format == "csv") {
        write_output(caps_opts, caps_csv(report), out);
      } else {
        nlohmann::json doc = cap_report_to_json(report);
        stamp(doc, {{"subcommand", "caps"},
                    {"q", plane.q},
                    {"max_t", max_t ? nlohmann::json(*max_t) : nlohmann::json(nullptr)},
                    {"count_only", caps_count_only},
                    {"budget", caps_budget}});
        write_output(caps_opts, dump_document(doc), out);
      }
      return report.budget_exhausted ? 4 : 0;
    }
    if (spectrum_cmd->parsed()) {
      IncidencePlane plane;
      if (spectrum_cmd->count("--in") > 0) {
        plane = plane_from_json(read_input(spectrum_opts, in));
      } else if (spectrum_q >= 2) {
        plane = build_affine_plane(spectrum_q);
      } else {
        throw BadParams("spectrum needs --q or --in");
      }
      const std::vector<double> values = plane_singular_values(plane);
      nlohmann::json doc;
      doc["version"] = 1;
      doc["type"] = "spectrum";
      doc["q"] = plane.q;
      doc["top_singular_value"] = values[0];
      doc["second_singular_value"] = values.size() > 1 ? values[1] : 0.0;
      stamp(doc, {{"subcommand", "spectrum"}, {"q", plane.q}});
      if (spectrum_opts.format != "json") throw BadParams("csv output is not available here");
      write_output(spectrum_opts, dump_document(doc), out);
      return 0;
    }
    if (induce_cmd->parsed()) {
      const KGraph graph = kgraph_from_json(read_input(induce_opts, in));
      const KGraph induced = random_induced(graph, induce_prob, induce_seed);
      nlohmann::json doc = kgraph_to_json(induced);
      stamp(doc, {{"subcommand", "induce"}, {"prob", induce_prob}, {"seed", induce_seed}});
      if (induce_opts.format != "json") throw BadParams("csv output is not available here");
      write_output(induce_opts, dump_document(doc), out);
      return 0;
    }
    if (cherries_cmd->parsed()) {
      const KGraph graph = kgraph_from_json(read_input(cherries_opts, in));
      const std::vector<Cherry> cherries = find_cherries(graph);
      nlohmann::json doc;
      doc["version"] = 1;
      doc["type"] = "cherry_report";
      doc["count"] = cherries.size();
      nlohmann::json list = nlohmann::json::array();
      for (const auto& c : cherries) {
        list.push_back({{"pair", {c.a, c.b}}, {"apexes", c.apexes}});
      }
      doc["cherries"] = list;
      stamp(doc, {{"subcommand", "cherries"}});
      if (cherries_opts.format != "json") throw BadParams("csv output is not available here");
      write_output(cherries_opts, dump_document(doc), out);
      return 0;
    }
    if (verify_cmd->parsed()) {
      const CliqueSystem system = system_from_json(read_input(verify_opts, in));
      const EllValidation validation = validate_ell_system(system);
      nlohmann::json doc = validation_to_json(validation, system.ell);
      stamp(doc, {{"subcommand", "verify"}});
      if (verify_opts.format != "json") throw BadParams("csv output is not available here");
      write_output(verify_opts, dump_document(doc), out);
      return 0;
    }
    if (audit_cmd->parsed()) {
      const AuditScale scale =
          audit_scale == "small" ? AuditScale::small : AuditScale::medium;
      const std::vector<CheckResult> results = run_audit(scale);
      if (audit_opts.format == "csv") {
        write_output(audit_opts, audit_csv(results), out);
      } else {
        write_output(audit_opts, format_audit_table(results), out);
      }
      return all_passed(results) ? 0 : 1;
    }
  } catch (const MalformedInput& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no subcommand dispatched\n";
  return 2;
}

}  // namespace qksys

#include "qksys/json_io.hpp"

#include <string>

#include "qksys/errors.hpp"

namespace qksys {

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw MalformedInput("malformed document: " + what);
}

int get_int(const nlohmann::json& doc, const char* key) {
  require(doc.contains(key) && doc[key].is_number_integer(), std::string(key) + " missing");
  return doc[key].get<int>();
}

std::vector<std::vector<int>> get_lists(const nlohmann::json& doc, const char* key) {
  require(doc.contains(key) && doc[key].is_array(), std::string(key) + " missing");
  std::vector<std::vector<int>> out;
  out.reserve(doc[key].size());
  for (const auto& row : doc[key]) {
    require(row.is_array(), std::string(key) + " rows must be arrays");
    std::vector<int> r;
    r.reserve(row.size());
    for (const auto& v : row) {
      require(v.is_number_integer(), std::string(key) + " entries must be integers");
      r.push_back(v.get<int>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

void check_type(const nlohmann::json& doc, const char* expected) {
  require(doc.is_object(), "top level must be an object");
  require(doc.contains("type") && doc["type"].is_string(), "type field missing");
  const std::string t = doc["type"].get<std::string>();
  require(t == expected, "expected type '" + std::string(expected) + "', got '" + t + "'");
}

nlohmann::json provenance_of(const nlohmann::json& doc) {
  return doc.contains("provenance") ? doc["provenance"] : nlohmann::json::object();
}

}  // namespace

nlohmann::json system_to_json(const CliqueSystem& system) {
  nlohmann::json doc;
  doc["version"] = 1;
  doc["type"] = "clique_system";
  doc["n"] = system.n;
  doc["q"] = system.q;
  doc["ell"] = system.ell;
  doc["cliques"] = system.cliques;
  doc["provenance"] = system.provenance;
  return doc;
}

CliqueSystem system_from_json(const nlohmann::json& doc) {
  check_type(doc, "clique_system");
  try {
    return make_clique_system(get_int(doc, "n"), get_int(doc, "q"), get_int(doc, "ell"),
                              get_lists(doc, "cliques"), provenance_of(doc));
  } catch (const MalformedClique& e) {
    throw MalformedInput(std::string("invalid clique system: ") + e.what());
  }
}

nlohmann::json kgraph_to_json(const KGraph& graph) {
  nlohmann::json doc;
  doc["version"] = 1;
  doc["type"] = "kgraph";
  doc["n"] = graph.n;
  doc["k"] = graph.k;
  doc["edges"] = graph.edges;
  doc["provenance"] = graph.provenance;
  return doc;
}

KGraph kgraph_from_json(const nlohmann::json& doc) {
  check_type(doc, "kgraph");
  try {
    return make_kgraph(get_int(doc, "n"), get_int(doc, "k"), get_lists(doc, "edges"),
                       provenance_of(doc));
  } catch (const MalformedClique& e) {
    throw MalformedInput(std::string("invalid kgraph: ") + e.what());
  }
}

nlohmann::json plane_to_json(const IncidencePlane& plane) {
  nlohmann::json doc;
  doc["type"] = "plane";
  doc["q"] = plane.q;
  doc["lines"] = plane.lines;
  doc["provenance"] = plane.provenance;
  return doc;
}

IncidencePlane plane_from_json(const nlohmann::json& doc) {
  check_type(doc, "plane");
  IncidencePlane plane;
  plane.q = get_int(doc, "q");
  plane.lines = get_lists(doc, "lines");
  plane.provenance = provenance_of(doc);
  require(plane.q >= 2, "plane order must be at least 2");
  const int n = plane.point_count();
  require(static_cast<int>(plane.lines.size()) == n + plane.q, "plane must have q^2 + q lines");
  for (const auto& line : plane.lines) {
    require(static_cast<int>(line.size()) == plane.q, "every line must have q points");
    for (int p : line) require(p >= 0 && p < n, "line point out of range");
  }
  return plane;
}

nlohmann::json restriction_to_json(const RestrictionResult& r) {
  nlohmann::json doc;
  doc["version"] = 1;
  doc["type"] = "restriction";
  doc["source_n"] = r.source_n;
  doc["source_q"] = r.source_q;
  doc["source_ell"] = r.source_ell;
  doc["q_target"] = r.q_target;
  doc["kept"] = r.kept;
  doc["traces"] = r.traces;
  doc["prob"] = r.prob;
  doc["seed"] = r.seed;
  doc["resample_count"] = r.resample_count;
  doc["failed"] = r.failed;
  doc["max_trace"] = r.max_trace;
  doc["chernoff_tail_per_clique"] = r.chernoff_tail_per_clique;
  doc["chernoff_union_bound"] = r.chernoff_union_bound;
  doc["provenance"] = r.provenance;
  return doc;
}

RestrictionResult restriction_from_json(const nlohmann::json& doc) {
  check_type(doc, "restriction");
  RestrictionResult r;
  r.source_n = get_int(doc, "source_n");
  r.source_q = get_int(doc, "source_q");
  r.source_ell = get_int(doc, "source_ell");
  r.q_target = get_int(doc, "q_target");
  require(doc.contains("kept") && doc["kept"].is_array(), "kept missing");
  for (const auto& v : doc["kept"]) {
    require(v.is_number_integer(), "kept entries must be integers");
    r.kept.push_back(v.get<int>());
  }
  r.traces = get_lists(doc, "traces");
  require(doc.contains("prob") && doc["prob"].is_number(), "prob missing");
  r.prob = doc["prob"].get<double>();
  require(doc.contains("seed") && doc["seed"].is_number_unsigned(), "seed missing");
  r.seed = doc["seed"].get<std::uint64_t>();
  r.resample_count = get_int(doc, "resample_count");
  require(doc.contains("failed") && doc["failed"].is_boolean(), "failed missing");
  r.failed = doc["failed"].get<bool>();
  r.max_trace = get_int(doc, "max_trace");
  if (doc.contains("chernoff_tail_per_clique")) {
    r.chernoff_tail_per_clique = doc["chernoff_tail_per_clique"].get<double>();
  }
  if (doc.contains("chernoff_union_bound")) {
    r.chernoff_union_bound = doc["chernoff_union_bound"].get<double>();
  }
  r.provenance = provenance_of(doc);
  return r;
}

nlohmann::json trace_to_json(const ProcessTrace& trace) {
  return system_to_json(to_clique_system(trace));
}

nlohmann::json coloring_to_json(const Coloring& coloring, int n) {
  nlohmann::json doc;
  doc["version"] = 1;
  doc["type"] = "coloring";
  doc["n"] = n;
  doc["num_colors"] = coloring.num_colors;
  doc["assignment"] = coloring.assignment;
  doc["method"] = coloring.method;
  doc["seed"] = coloring.seed;
  doc["provenance"] = coloring.provenance;
  return doc;
}

Coloring coloring_from_json(const nlohmann::json& doc) {
  check_type(doc, "coloring");
  Coloring c;
  require(doc.contains("assignment") && doc["assignment"].is_array(), "assignment missing");
  for (const auto& v : doc["assignment"]) {
    require(v.is_number_integer(), "assignment entries must be integers");
    c.assignment.push_back(v.get<int>());
  }
  c.num_colors = get_int(doc, "num_colors");
  if (doc.contains("method")) c.method = doc["method"].get<std::string>();
  if (doc.contains("seed")) c.seed = doc["seed"].get<std::uint64_t>();
  c.provenance = provenance_of(doc);
  return c;
}

nlohmann::json solve_result_to_json(const SolveResult& result, const std::string& kind) {
  nlohmann::json doc;
  doc["version"] = 1;
  doc["type"] = "solve_result";
  doc["kind"] = kind;
  doc["value"] = result.value;
  doc["exact"] = result.exact;
  doc["nodes_explored"] = result.nodes_explored;
  doc["budget_exhausted"] = result.budget_exhausted;
  if (kind == "chi") {
    doc["coloring"] = result.witness_coloring.assignment;
  } else {
    doc["witness"] = result.witness_set;
  }
  doc["provenance"] = nlohmann::json::object();
  return doc;
}

nlohmann::json cap_report_to_json(const CapReport& report) {
  nlohmann::json doc;
  doc["version"] = 1;
  doc["type"] = "cap_report";
  doc["q"] = report.q;
  nlohmann::json counts = nlohmann::json::object();
  for (std::size_t t = 0; t < report.counts.size(); ++t) {
    counts[std::to_string(t)] = report.counts[t];
  }
  doc["counts"] = counts;
  nlohmann::json bounds = nlohmann::json::object();
  for (int t = 3; t <= report.q + 2 && t < static_cast<int>(report.bounds.size()); ++t) {
    bounds[std::to_string(t)] = report.bounds[t];
  }
  doc["bounds"] = bounds;
  doc["max_cap"] = report.max_cap_size;
  doc["exhaustive"] = report.exhaustive;
  doc["budget_exhausted"] = report.budget_exhausted;
  doc["total"] = report.total;
  if (report.assembly_total) {
    doc["assembly_total"] = *report.assembly_total;
  } else {
    doc["assembly_total"] = nullptr;
  }
  doc["provenance"] = nlohmann::json::object();
  return doc;
}

nlohmann::json stats_to_json(const ProcessStats& stats, int n, int k) {
  nlohmann::json doc;
  doc["version"] = 1;
  doc["type"] = "process_stats";
  doc["n"] = n;
  doc["k"] = k;
  doc["e"] = stats.e;
  doc["m"] = stats.m;
  doc["pair_coverage"] = stats.pair_coverage;
  doc["alpha"] = stats.alpha;
  doc["alpha_exact"] = stats.alpha_exact;
  doc["alpha_method"] = stats.alpha_method;
  doc["alpha_witness"] = stats.alpha_witness;
  doc["chi_lower_bound"] = stats.chi_lower_bound;
  doc["provenance"] = nlohmann::json::object();
  return doc;
}

nlohmann::json validation_to_json(const EllValidation& validation, int ell) {
  nlohmann::json doc;
  doc["version"] = 1;
  doc["type"] = "ell_validation";
  doc["ell"] = ell;
  doc["max_pairwise_intersection"] = validation.max_pairwise_intersection;
  doc["ok"] = validation.ok;
  doc["provenance"] = nlohmann::json::object();
  return doc;
}

nlohmann::json mixing_to_json(const MixingCheck& check) {
  nlohmann::json doc;
  doc["version"] = 1;
  doc["type"] = "mixing_check";
  doc["observed"] = check.observed;
  doc["predicted"] = check.predicted;
  doc["deviation"] = check.deviation;
  doc["bound"] = check.bound;
  doc["holds"] = check.holds;
  return doc;
}

nlohmann::json parse_document(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedInput(std::string("JSON parse error: ") + e.what());
  }
}

std::string dump_document(const nlohmann::json& doc) { return doc.dump() + "\n"; }

}  // namespace qksys

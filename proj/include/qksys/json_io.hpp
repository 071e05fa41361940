#pragma once

#include <string>

#include <json.hpp>

#include "qksys/caps.hpp"
#include "qksys/constructions.hpp"
#include "qksys/hypergraph.hpp"
#include "qksys/process.hpp"
#include "qksys/solvers.hpp"

namespace qksys {

// Versioned JSON documents. nlohmann::json keeps object keys sorted, so
// dumping the same value twice is byte-identical; every *_from_json checks
// shape and throws MalformedInput on anything unexpected.

nlohmann::json system_to_json(const CliqueSystem& system);
CliqueSystem system_from_json(const nlohmann::json& doc);

nlohmann::json kgraph_to_json(const KGraph& graph);
KGraph kgraph_from_json(const nlohmann::json& doc);

nlohmann::json plane_to_json(const IncidencePlane& plane);
IncidencePlane plane_from_json(const nlohmann::json& doc);

nlohmann::json restriction_to_json(const RestrictionResult& restriction);
RestrictionResult restriction_from_json(const nlohmann::json& doc);

// A trace serializes as a clique_system document (ell = 1) whose provenance
// carries seed, reject_limit, stop_reason and the rejection counts.
nlohmann::json trace_to_json(const ProcessTrace& trace);

nlohmann::json coloring_to_json(const Coloring& coloring, int n);
Coloring coloring_from_json(const nlohmann::json& doc);

nlohmann::json solve_result_to_json(const SolveResult& result, const std::string& kind);

nlohmann::json cap_report_to_json(const CapReport& report);

nlohmann::json stats_to_json(const ProcessStats& stats, int n, int k);

nlohmann::json validation_to_json(const EllValidation& validation, int ell);

nlohmann::json mixing_to_json(const MixingCheck& check);

// Parse with MalformedInput on syntax errors; dump() + '\n'.
nlohmann::json parse_document(const std::string& text);
std::string dump_document(const nlohmann::json& doc);

}  // namespace qksys

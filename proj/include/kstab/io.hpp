#pragma once

#include <string>

#include "json.hpp"
#include "kstab/functionals.hpp"

namespace kstab {

using json = nlohmann::ordered_json;

json to_json(const Rat& r);
Rat rat_from_json(const json& j);
json to_json(const Vec& v);
Vec vec_from_json(const json& j);

json to_json(const LatticePolytope& P);
LatticePolytope polytope_from_json(const json& j);

/// {"pieces": [{"a": [...], "c": "p/q"}, ...]}
json to_json(const PLFunction& f);
PLFunction pl_from_json(const json& j);

/// {"polytope": ..., "pieces": [...]}
json to_json(const ToricMetric& phi);
ToricMetric metric_from_json(const json& j);

/// {"polytope": ..., "boundary": [{"normal": [...], "coeff": "p/q"}, ...]}
json to_json(const ToricPair& pair);
ToricPair pair_from_json(const json& j);

json to_json(const PPMeasure& mu);
json to_json(const ComponentData& c);
json to_json(const FunctionalReport& r);
FunctionalReport report_from_json(const json& j);

/// {"metric", "pair", "report"}: everything needed to recompute the report.
json report_document(const ToricMetric& phi, const ToricPair& pair, const FunctionalReport& r);

/// Reads and parses a JSON file; InputError on failure.
json read_json_file(const std::string& path);

}  // namespace kstab

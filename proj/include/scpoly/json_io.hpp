#pragma once

#include "json.hpp"

#include "scpoly/charts.hpp"
#include "scpoly/geometry.hpp"
#include "scpoly/paramsolve.hpp"
#include "scpoly/sc_types.hpp"
#include "scpoly/sweep.hpp"

namespace scpoly {

using Json = nlohmann::json;

// Every *_from_json throws Error(InvalidArgument) on a malformed payload;
// domain checks then come from the constructors of the types themselves.

Json complex_to_json(Complex c);  // [re, im]
Complex complex_from_json(const Json& j);

/// {"n": int, "vertices": [[re, im], ...]}
Json to_json(const LabelledPolygon& poly);
LabelledPolygon polygon_from_json(const Json& j);

/// {"n", "prevertices": [z_1..z_{n-1}], "alphas", "A", "B", "mode"}
Json to_json(const SCMap& map);
SCMap scmap_from_json(const Json& j);

/// {"n": int, "z": [...], "a": [...]}
Json to_json(const ChartPoint& pt);
ChartPoint chart_point_from_json(const Json& j);

Json to_json(const SolveReport& report);
SolveReport solve_report_from_json(const Json& j);

Json to_json(const SweepConfig& config);
Json to_json(const SweepResult& result);
SweepResult sweep_result_from_json(const Json& j);

/// Parses text, mapping syntax errors to Error(InvalidArgument).
Json parse_json(std::string_view text);

}  // namespace scpoly

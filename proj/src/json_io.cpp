#include "scpoly/json_io.hpp"

#include <string>

#include "scpoly/errors.hpp"

namespace scpoly {

namespace {

[[noreturn]] void malformed(const std::string& what) { fail(ErrorKind::InvalidArgument, what); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) malformed("expected a JSON object");
    const auto it = j.find(key);
    if (it == j.end()) malformed(std::string("missing field \"") + key + "\"");
    return *it;
}

double number(const Json& j, const char* what) {
    if (!j.is_number()) malformed(std::string(what) + " must be a number");
    return j.get<double>();
}

std::uint64_t count(const Json& j, const char* what) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
        malformed(std::string(what) + " must be a nonnegative integer");
    }
    return j.get<std::uint64_t>();
}

int vertex_count(const Json& j) {
    const Json& n = field(j, "n");
    if (!n.is_number_integer()) malformed("\"n\" must be an integer");
    const auto value = n.get<std::int64_t>();
    if (value < 3 || value > 100000) malformed("\"n\" must be at least 3");
    return static_cast<int>(value);
}

std::vector<double> numbers(const Json& j, const char* what) {
    if (!j.is_array()) malformed(std::string(what) + " must be an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) out.push_back(number(v, what));
    return out;
}

void expect_size(std::size_t got, std::size_t want, const char* what) {
    if (got != want) {
        malformed(std::string(what) + " has " + std::to_string(got) + " entries, expected " +
                  std::to_string(want));
    }
}

}  // namespace

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) malformed("complex numbers are [re, im] pairs");
    return {number(j[0], "real part"), number(j[1], "imaginary part")};
}

Json to_json(const LabelledPolygon& poly) {
    Json vertices = Json::array();
    for (const auto& w : poly.vertices()) vertices.push_back(complex_to_json(w));
    return {{"n", poly.size()}, {"vertices", std::move(vertices)}};
}

LabelledPolygon polygon_from_json(const Json& j) {
    const int n = vertex_count(j);
    const Json& vertices = field(j, "vertices");
    if (!vertices.is_array()) malformed("\"vertices\" must be an array");
    expect_size(vertices.size(), static_cast<std::size_t>(n), "\"vertices\"");
    std::vector<PlanePoint> w;
    w.reserve(vertices.size());
    for (const auto& v : vertices) w.push_back(complex_from_json(v));
    return LabelledPolygon(std::move(w));
}

Json to_json(const SCMap& map) {
    const auto z = map.prevertices().values();
    const auto alpha = map.exponents().values();
    return {{"n", map.size()},
            {"prevertices", std::vector<double>(z.begin(), z.end())},
            {"alphas", std::vector<double>(alpha.begin(), alpha.end())},
            {"A", complex_to_json(map.scale())},
            {"B", complex_to_json(map.offset())},
            {"mode", map.mode() == ExponentMode::standard ? "standard" : "extended"}};
}

SCMap scmap_from_json(const Json& j) {
    const int n = vertex_count(j);
    auto z = numbers(field(j, "prevertices"), "\"prevertices\"");
    auto alpha = numbers(field(j, "alphas"), "\"alphas\"");
    expect_size(z.size(), static_cast<std::size_t>(n - 1), "\"prevertices\"");
    expect_size(alpha.size(), static_cast<std::size_t>(n), "\"alphas\"");

    ExponentMode mode = ExponentMode::standard;
    if (j.contains("mode")) {
        const Json& m = j["mode"];
        if (m == "extended") {
            mode = ExponentMode::extended;
        } else if (m != "standard") {
            malformed("\"mode\" must be \"standard\" or \"extended\"");
        }
    }
    const Complex a = j.contains("A") ? complex_from_json(j["A"]) : Complex(1.0, 0.0);
    const Complex b = j.contains("B") ? complex_from_json(j["B"]) : Complex(0.0, 0.0);
    return SCMap(Prevertices(std::move(z)), ExponentVector(std::move(alpha), mode), a, b);
}

Json to_json(const ChartPoint& pt) { return {{"n", pt.n}, {"z", pt.z}, {"a", pt.a}}; }

ChartPoint chart_point_from_json(const Json& j) {
    ChartPoint pt;
    pt.n = vertex_count(j);
    pt.z = numbers(field(j, "z"), "\"z\"");
    pt.a = numbers(field(j, "a"), "\"a\"");
    pt.validate();
    return pt;
}

Json to_json(const SolveReport& report) {
    return {{"converged", report.converged},
            {"iterations", report.iterations},
            {"final_residual_norm", report.final_residual_norm},
            {"residual_history", report.residual_history},
            {"reconstruction_error", report.reconstruction_error},
            {"reconstruction_ok", report.reconstruction_ok}};
}

SolveReport solve_report_from_json(const Json& j) {
    SolveReport report;
    const Json& converged = field(j, "converged");
    if (!converged.is_boolean()) malformed("\"converged\" must be a boolean");
    report.converged = converged.get<bool>();
    report.iterations = static_cast<int>(count(field(j, "iterations"), "\"iterations\""));
    report.final_residual_norm = number(field(j, "final_residual_norm"), "\"final_residual_norm\"");
    report.residual_history = numbers(field(j, "residual_history"), "\"residual_history\"");
    if (j.contains("reconstruction_error")) {
        report.reconstruction_error = number(j["reconstruction_error"], "\"reconstruction_error\"");
    }
    if (j.contains("reconstruction_ok")) report.reconstruction_ok = j["reconstruction_ok"].get<bool>();
    return report;
}

Json to_json(const SweepConfig& config) {
    return {{"n", config.n},           {"samples", config.samples}, {"seed", config.seed},
            {"chart_box", config.chart_box}, {"budget", config.budget},   {"tol", config.tol}};
}

Json to_json(const SweepResult& result) {
    Json instances = Json::array();
    for (const auto& inst : result.nonsimple_instances) {
        instances.push_back({{"index", inst.index},
                             {"chart", to_json(inst.chart)},
                             {"witness", inst.witness ? complex_to_json(*inst.witness) : Json(nullptr)},
                             {"winding", inst.winding}});
    }
    return {{"tested", result.tested},
            {"simple_count", result.simple_count},
            {"nonsimple_instances", std::move(instances)},
            {"failures", result.failures}};
}

SweepResult sweep_result_from_json(const Json& j) {
    SweepResult result;
    result.tested = count(field(j, "tested"), "\"tested\"");
    result.simple_count = count(field(j, "simple_count"), "\"simple_count\"");
    result.failures = count(field(j, "failures"), "\"failures\"");
    const Json& instances = field(j, "nonsimple_instances");
    if (!instances.is_array()) malformed("\"nonsimple_instances\" must be an array");
    for (const auto& item : instances) {
        NonsimpleInstance inst;
        inst.index = count(field(item, "index"), "\"index\"");
        inst.chart = chart_point_from_json(field(item, "chart"));
        const Json& witness = field(item, "witness");
        if (!witness.is_null()) inst.witness = complex_from_json(witness);
        const Json& winding = field(item, "winding");
        if (!winding.is_number_integer()) malformed("\"winding\" must be an integer");
        inst.winding = winding.get<int>();
        result.nonsimple_instances.push_back(std::move(inst));
    }
    return result;
}

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        malformed(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace scpoly

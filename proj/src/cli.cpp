#include "scpoly/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "scpoly/charts.hpp"
#include "scpoly/errors.hpp"
#include "scpoly/json_io.hpp"
#include "scpoly/paramsolve.hpp"
#include "scpoly/scmap.hpp"
#include "scpoly/svg.hpp"
#include "scpoly/sweep.hpp"

namespace scpoly {

namespace {

struct GlobalOptions {
    std::optional<double> tol;
    std::uint64_t seed = 1;
    std::string output;
};

// An input argument is inline JSON, "-" for stdin, or a file path.
std::string read_source(const std::string& source, std::istream& in) {
    const auto first = source.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (source[first] == '{' || source[first] == '[' || source[first] == '"')) {
        return source;
    }
    if (source.empty() || source == "-") {
        return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    }
    std::ifstream file(source);
    if (!file) fail(ErrorKind::InvalidArgument, "cannot read input file '" + source + "'");
    return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

double default_tolerance() {
    const char* env = std::getenv("SCPOLY_TOL");
    if (env == nullptr || *env == '\0') return kDefaultTol;
    char* end = nullptr;
    const double value = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(value > 0.0) || !std::isfinite(value)) {
        fail(ErrorKind::InvalidArgument, std::string("SCPOLY_TOL is not a positive number: ") + env);
    }
    return value;
}

double tolerance(const GlobalOptions& g) {
    const double tol = g.tol ? *g.tol : default_tolerance();
    if (!(tol > 0.0) || !std::isfinite(tol)) fail(ErrorKind::InvalidArgument, "--tol must be positive");
    return tol;
}

void emit(const GlobalOptions& g, std::ostream& out, const std::string& text) {
    if (g.output.empty()) {
        out << text;
        return;
    }
    std::ofstream file(g.output, std::ios::binary);
    if (!file) fail(ErrorKind::InvalidArgument, "cannot write output file '" + g.output + "'");
    file << text;
}

void emit_json(const GlobalOptions& g, std::ostream& out, const Json& j) { emit(g, out, j.dump(2) + "\n"); }

void report_error(std::ostream& err, std::string_view kind, std::string_view message) {
    err << Json{{"error", {{"kind", kind}, {"message", message}}}}.dump(2) << "\n";
}

std::vector<std::optional<Complex>> parse_points(const Json& j) {
    if (!j.is_array()) fail(ErrorKind::InvalidArgument, "points must be an array of [re, im] pairs or \"inf\"");
    std::vector<std::optional<Complex>> points;
    for (const auto& p : j) {
        if (p.is_string()) {
            if (p != "inf") fail(ErrorKind::InvalidArgument, "the only named point is \"inf\"");
            points.emplace_back(std::nullopt);
        } else {
            points.emplace_back(complex_from_json(p));
        }
    }
    return points;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Schwarz-Christoffel maps and the moduli space of labelled immersed polygons", "scpoly"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    double tol_flag = 0.0;
    auto* tol_opt = app.add_option("--tol", tol_flag, "Quadrature tolerance (default 1e-10, or $SCPOLY_TOL)");
    app.add_option("--seed", g.seed, "Seed for randomized commands");
    app.add_option("--output,-o", g.output, "Write the result to this file instead of stdout");

    std::string input;
    auto add_input = [&input](CLI::App* sub, const std::string& what) {
        sub->add_option("input", input, what + ": a file, inline JSON, or - for stdin")->default_str("-");
    };

    auto* forward_cmd = app.add_subcommand("forward", "Chart point -> polygon");
    add_input(forward_cmd, "ChartPoint JSON");

    auto* invert_cmd = app.add_subcommand("invert", "Polygon -> SC map, chart point and solve report");
    add_input(invert_cmd, "Polygon JSON");
    SolveOptions solve_opts;
    std::optional<double> quadrature_tol;
    invert_cmd->add_option("--max-iterations", solve_opts.max_iterations, "Iteration budget per starting point");
    invert_cmd->add_option("--quadrature-tol", quadrature_tol, "Quadrature tolerance (default --tol / 10)");

    auto* sweep_cmd = app.add_subcommand("sweep", "Randomized simplicity check over the chart cube");
    SweepConfig sweep_cfg;
    sweep_cmd->add_option("--n", sweep_cfg.n, "Number of vertices")->required();
    sweep_cmd->add_option("--samples", sweep_cfg.samples, "Number of chart points");
    sweep_cmd->add_option("--box", sweep_cfg.chart_box, "Half-width of the sampling cube");
    sweep_cmd->add_option("--budget", sweep_cfg.budget, "Witness-search budget per non-simple polygon");
    sweep_cmd->add_option("--threads", sweep_cfg.threads, "Worker threads");

    auto* render_cmd = app.add_subcommand("render", "Polygon or SC map -> SVG");
    add_input(render_cmd, "Polygon or SCMap JSON");
    SvgStyle style;
    std::string marker_text;
    int witness_budget = 0;
    render_cmd->add_option("--width", style.width, "Image width in pixels");
    render_cmd->add_option("--grid", style.grid_lines, "Grid lines per direction (SC map input only)");
    render_cmd->add_flag("--labels", style.label_vertices, "Label the vertices");
    render_cmd->add_option("--marker", marker_text, "Point to mark, as [re, im]");
    render_cmd->add_option("--witness-budget", witness_budget,
                           "Search for and mark a point of winding number >= 2");

    auto* eval_cmd = app.add_subcommand("eval", "Evaluate an SC map at points of the upper half-plane");
    add_input(eval_cmd, "SCMap JSON");
    std::string points_source;
    eval_cmd->add_option("--points", points_source, "JSON array of [re, im] pairs or \"inf\"")->required();

    auto* chart_cmd = app.add_subcommand("chart", "SC map -> chart point");
    add_input(chart_cmd, "SCMap JSON");

    auto* unchart_cmd = app.add_subcommand("unchart", "Chart point -> normalized SC map");
    add_input(unchart_cmd, "ChartPoint JSON");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        report_error(err, "InvalidArgument", e.what());
        return kExitValidation;
    }
    if (tol_opt->count() > 0) g.tol = tol_flag;

    try {
        if (forward_cmd->parsed()) {
            const auto pt = chart_point_from_json(parse_json(read_source(input, in)));
            const auto [z, alpha] = moduli_unchart(pt);
            emit_json(g, out, to_json(forward(z, alpha, tolerance(g))));
        } else if (invert_cmd->parsed()) {
            const auto poly = polygon_from_json(parse_json(read_source(input, in)));
            solve_opts.residual_tol = tolerance(g);
            solve_opts.quadrature_tol = quadrature_tol ? *quadrature_tol : 0.1 * solve_opts.residual_tol;
            const auto result = solve_parameter_problem(poly, solve_opts);
            emit_json(g, out,
                      {{"map", to_json(result.map)},
                       {"chart", to_json(moduli_chart(result.map))},
                       {"report", to_json(result.report)}});
            if (!result.report.converged || !result.report.reconstruction_ok) {
                report_error(err, "NoConvergence", "parameter solve did not converge");
                return kExitNoConvergence;
            }
        } else if (sweep_cmd->parsed()) {
            sweep_cfg.seed = g.seed;
            sweep_cfg.tol = tolerance(g);
            const auto result = run_sweep(sweep_cfg);
            Json j = to_json(result);
            j["config"] = to_json(sweep_cfg);
            emit_json(g, out, j);
        } else if (render_cmd->parsed()) {
            const Json j = parse_json(read_source(input, in));
            const double tol = tolerance(g);
            std::optional<PlanePoint> marker;
            if (!marker_text.empty()) marker = complex_from_json(parse_json(marker_text));
            const bool is_map = j.is_object() && j.contains("prevertices");
            const std::optional<SCMap> map = is_map ? std::optional<SCMap>(scmap_from_json(j)) : std::nullopt;
            const LabelledPolygon poly = map ? LabelledPolygon(map_vertices(*map, tol)) : polygon_from_json(j);
            if (!marker && witness_budget > 0 && !is_simple(poly)) {
                marker = find_multiwound_witness(poly, witness_budget, g.seed);
            }
            emit(g, out, map ? render_map_svg(*map, style, tol, marker) : render_svg(poly, style, {}, marker));
        } else if (eval_cmd->parsed()) {
            const auto map = scmap_from_json(parse_json(read_source(input, in)));
            const auto points = parse_points(parse_json(read_source(points_source, in)));
            const double tol = tolerance(g);
            Json images = Json::array();
            for (const auto& p : points) {
                images.push_back(complex_to_json(p ? evaluate(map, *p, tol) : evaluate_at_infinity(map, tol)));
            }
            emit_json(g, out, {{"images", std::move(images)}});
        } else if (chart_cmd->parsed()) {
            emit_json(g, out, to_json(moduli_chart(scmap_from_json(parse_json(read_source(input, in))))));
        } else if (unchart_cmd->parsed()) {
            const auto [z, alpha] = moduli_unchart(chart_point_from_json(parse_json(read_source(input, in))));
            emit_json(g, out, to_json(SCMap(z, alpha)));
        }
    } catch (const Error& e) {
        report_error(err, to_string(e.kind()), e.what());
        return is_validation_error(e.kind()) ? kExitValidation : kExitNumerical;
    } catch (const Json::exception& e) {
        report_error(err, "InvalidArgument", e.what());
        return kExitValidation;
    } catch (const std::exception& e) {
        report_error(err, "Internal", e.what());
        return kExitNumerical;
    }
    return kExitOk;
}

}  // namespace scpoly

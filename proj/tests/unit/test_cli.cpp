#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "generators.hpp"
#include "scpoly/cli.hpp"
#include "scpoly/json_io.hpp"

using namespace scpoly;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args, const std::string& stdin_text = "") {
    args.insert(args.begin(), "scpoly");
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    Run r;
    r.code = run_cli(args, in, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string error_kind(const Run& r) { return parse_json(r.err)["error"]["kind"].get<std::string>(); }

}  // namespace

TEST_CASE("forward of the chart origin is equilateral") {
    const auto r = run({"forward", R"({"n": 3, "z": [], "a": [0, 0]})"});
    REQUIRE(r.code == kExitOk);
    const auto tri = polygon_from_json(parse_json(r.out));
    for (double t : interior_angles(tri).values) CHECK(t == doctest::Approx(std::acos(-1.0) / 3).epsilon(1e-9));
}

TEST_CASE("forward then invert round-trips the chart") {
    SplitMix64 rng(81);
    const auto pt = gen::chart_point(rng, 6, 2.5);
    const auto f = run({"forward", to_json(pt).dump()});
    REQUIRE(f.code == kExitOk);
    const auto inv = run({"invert", "-"}, f.out);
    REQUIRE(inv.code == kExitOk);
    const auto j = parse_json(inv.out);
    CHECK(j["report"]["converged"] == true);
    const auto back = chart_point_from_json(j["chart"]);
    for (std::size_t k = 0; k < pt.z.size(); ++k) CHECK(std::abs(back.z[k] - pt.z[k]) < 1e-6);
    for (std::size_t k = 0; k < pt.a.size(); ++k) CHECK(std::abs(back.a[k] - pt.a[k]) < 1e-6);

    // A similar polygon gives the same chart point.
    const auto moved = apply_similarity(polygon_from_json(parse_json(f.out)), {0.0, 3.0}, {5.0, 5.0});
    const auto inv2 = run({"invert", to_json(moved).dump()});
    REQUIRE(inv2.code == kExitOk);
    const auto back2 = chart_point_from_json(parse_json(inv2.out)["chart"]);
    for (std::size_t k = 0; k < pt.z.size(); ++k) CHECK(std::abs(back2.z[k] - back.z[k]) < 1e-8);
}

TEST_CASE("validation errors exit with 2") {
    auto r = run({"forward", "{\"n\": 3, "});
    CHECK(r.code == kExitValidation);
    CHECK(error_kind(r) == "InvalidArgument");

    r = run({"invert", R"({"n": 4, "vertices": [[0,0],[1,1],[1,0],[0,1]]})"});
    CHECK(r.code == kExitValidation);
    CHECK(error_kind(r) == "NotImmersedInput");

    r = run({"sweep", "--n", "5", "--samples", "0"});
    CHECK(r.code == kExitValidation);

    r = run({"forward", "/nonexistent/chart.json"});
    CHECK(r.code == kExitValidation);

    r = run({"frobnicate"});
    CHECK(r.code == kExitValidation);

    r = run({"eval", R"({"n": 3, "prevertices": [-1, 0], "alphas": [0.5, 0.25, 0.25]})", "--points", "[[0, -1]]"});
    CHECK(r.code == kExitValidation);

    r = run({"chart", R"({"n": 5, "prevertices": [-1, 0, 1, 2], "alphas": [0.2, 0.2, 0.2, 0.2, 2.2], "mode": "extended"})"});
    CHECK(r.code == kExitValidation);
    CHECK(error_kind(r) == "OnBoundary");
}

TEST_CASE("non-convergence exits with 4") {
    SplitMix64 rng(82);
    const auto poly = gen::forward_polygon(rng, 8, 3.0);
    const auto r = run({"invert", "--max-iterations", "1", to_json(poly).dump()});
    CHECK(r.code == kExitNoConvergence);
    CHECK(parse_json(r.out)["report"]["converged"] == false);
}

TEST_CASE("eval") {
    const std::string map = R"({"n": 4, "prevertices": [-1, 0, 1], "alphas": [0.5, 0.5, 0.5, 0.5], "A": [2, 0], "B": [1, 1]})";
    const auto r = run({"eval", map, "--points", R"([[0, 1], [0, 0], "inf"])"});
    REQUIRE(r.code == kExitOk);
    const auto images = parse_json(r.out)["images"];
    REQUIRE(images.size() == 3);
    CHECK(complex_from_json(images[0]) == Complex(1.0, 1.0));
    const auto f = run({"forward", R"({"n": 4, "z": [0], "a": [0, 0, 0]})"});
    const auto sq = polygon_from_json(parse_json(f.out));
    CHECK(std::abs(complex_from_json(images[1]) - (2.0 * sq[1] + Complex(1.0, 1.0))) < 1e-9);
    CHECK(std::abs(complex_from_json(images[2]) - (2.0 * sq[3] + Complex(1.0, 1.0))) < 1e-9);
}

TEST_CASE("chart and unchart") {
    const auto u = run({"unchart", R"({"n": 5, "z": [0.5, -1], "a": [0.1, 0.2, -0.3, 0.4]})"});
    REQUIRE(u.code == kExitOk);
    const auto c = run({"chart", u.out});
    REQUIRE(c.code == kExitOk);
    const auto pt = chart_point_from_json(parse_json(c.out));
    CHECK(pt.z[0] == doctest::Approx(0.5));
    CHECK(pt.a[2] == doctest::Approx(-0.3));
}

TEST_CASE("sweep is deterministic") {
    const auto a = run({"sweep", "--n", "6", "--samples", "200", "--seed", "5"});
    const auto b = run({"--seed", "5", "sweep", "--n", "6", "--samples", "200"});
    REQUIRE(a.code == kExitOk);
    CHECK(a.out == b.out);
    const auto j = parse_json(a.out);
    CHECK(j["tested"] == 200);
    CHECK(j["config"]["seed"] == 5);
}

TEST_CASE("render") {
    auto r = run({"render", R"({"n": 4, "vertices": [[0,0],[1,0],[1,1],[0,1]]})"});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.rfind("<svg", 0) == 0);
    CHECK(r.out.find("<path") != std::string::npos);

    r = run({"render", "--grid", "2", R"({"n": 4, "prevertices": [-1, 0, 1], "alphas": [0.5, 0.5, 0.5, 0.5]})"});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.find("<polyline") != std::string::npos);

    const auto path = std::filesystem::temp_directory_path() / "scpoly_test_render.svg";
    r = run({"render", "--output", path.string(), "--marker", "[0.5, 0.5]",
             R"({"n": 4, "vertices": [[0,0],[1,0],[1,1],[0,1]]})"});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.empty());
    std::ifstream file(path);
    std::stringstream content;
    content << file.rdbuf();
    CHECK(content.str().find("<circle") != std::string::npos);
    std::filesystem::remove(path);
}

TEST_CASE("tolerance from the environment") {
    ::setenv("SCPOLY_TOL", "not-a-number", 1);
    CHECK(run({"forward", R"({"n": 3, "z": [], "a": [0, 0]})"}).code == kExitValidation);
    ::setenv("SCPOLY_TOL", "1e-6", 1);
    CHECK(run({"forward", R"({"n": 3, "z": [], "a": [0, 0]})"}).code == kExitOk);
    ::unsetenv("SCPOLY_TOL");
    CHECK(run({"--tol", "-1", "forward", R"({"n": 3, "z": [], "a": [0, 0]})"}).code == kExitValidation);
}

TEST_CASE("installed binary") {
    const std::string bin = SCPOLY_CLI_PATH;
    auto status = [&](const std::string& args) {
        const int raw = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    CHECK(status("--help") == 0);
    CHECK(status("forward '{\"n\": 3, \"z\": [], \"a\": [0, 0]}'") == 0);
    CHECK(status("forward '{\"n\": 3'") == 2);
}

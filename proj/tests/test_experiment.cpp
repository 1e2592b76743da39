#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mono/experiment.hpp"

using namespace mono;
using namespace mono::experiment;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const char* kScalingSpec = R"({
  "kind": "scaling",
  "equation": {"quad": [1], "lin": [1, -1]},
  "colouring": {"kind": "extremal", "r": 1},
  "n_grid": [256, 512, 1024, 2048],
  "seed": 1
})";

}  // namespace

TEST_CASE("spec parsing: schema violations carry field paths") {
    auto expect_field = [](const char* text, const char* field) {
        try {
            parse_spec_json(text);
            FAIL_CHECK("expected usage_error for field ", field);
        } catch (const usage_error& e) {
            CHECK(std::string(e.what()).find(field) != std::string::npos);
        }
    };

    expect_field(R"({"equation":{}})", "kind");
    expect_field(R"({"kind":"scaling"})", "equation");
    expect_field(R"({"kind":"scaling","equation":{"quad":[1],"lin":[1,-1]}})", "colouring");
    // one grid point is not enough for a scaling fit
    expect_field(
        R"({"kind":"scaling","equation":{"quad":[1],"lin":[1,-1]},"colouring":{"kind":"extremal","r":2},"n_grid":[64]})",
        "n_grid");
    // grids must increase strictly
    expect_field(
        R"({"kind":"scaling","equation":{"quad":[1],"lin":[1,-1]},"colouring":{"kind":"extremal","r":2},"n_grid":[64,64,128,256]})",
        "n_grid");
    // random colourings need a seed
    expect_field(
        R"({"kind":"scaling","equation":{"quad":[1],"lin":[1,-1]},"colouring":{"kind":"random","r":2},"n_grid":[64,128,256,512]})",
        "seed");
    expect_field(R"({"kind":"moment-scan","moment":{"kind":"mixed-quad-lin","p":3},"n_grid":[64]})",
                 "moment.p");
    expect_field(R"({"kind":"hypothesis-check","check":"minor-arc","n_grid":[65536]})", "seed");
    expect_field(R"({"kind":"nonsense"})", "kind");
}

TEST_CASE("scaling run: artifacts, slope and determinism") {
    auto spec = parse_spec_json(kScalingSpec);
    const std::string dir_a = "exp_out_a", dir_b = "exp_out_b";
    auto out_a = run(spec, dir_a);
    auto out_b = run(spec, dir_b);

    REQUIRE(out_a.fit_ok);
    CHECK(std::abs(out_a.fit.slope - 1.5) < 0.05);  // total count of x-y=z^2 scales as N^{3/2}

    CHECK(slurp(dir_a + "/results.csv") == slurp(dir_b + "/results.csv"));
    CHECK(slurp(dir_a + "/fit.json") == slurp(dir_b + "/fit.json"));
    CHECK(std::filesystem::exists(dir_a + "/plot.gp"));
    CHECK(std::filesystem::exists(dir_a + "/run.log"));

    const auto csv = slurp(dir_a + "/results.csv");
    CHECK(csv.rfind("N,r,colour,count\n", 0) == 0);
    CHECK(csv.find("\n256,1,1,") != std::string::npos);

    std::filesystem::remove_all(dir_a);
    std::filesystem::remove_all(dir_b);
}

TEST_CASE("random colouring scaling is reproducible from the spec seed") {
    const char* text = R"({
      "kind": "scaling",
      "equation": {"quad": [1], "lin": [1, -1]},
      "colouring": {"kind": "random", "r": 2},
      "n_grid": [128, 256, 512, 1024],
      "seed": 42
    })";
    auto spec = parse_spec_json(text);
    auto rows_a = scaling_rows(*spec.equation, *spec.colouring, spec.n_grid, spec.seed);
    auto rows_b = scaling_rows(*spec.equation, *spec.colouring, spec.n_grid, spec.seed);
    REQUIRE(rows_a.size() == rows_b.size());
    for (std::size_t i = 0; i < rows_a.size(); ++i) {
        CHECK(rows_a[i].per_colour == rows_b[i].per_colour);
        CHECK(rows_a[i].argmax_colour == rows_b[i].argmax_colour);
    }
}

TEST_CASE("moment scan run fits against the W grid") {
    const char* text = R"({
      "kind": "moment-scan",
      "moment": {"kind": "mixed-quad-lin", "p": 4},
      "n_grid": [256],
      "w_grid": [1, 2, 4, 8]
    })";
    auto spec = parse_spec_json(text);
    const std::string dir = "exp_out_moment";
    auto out = run(spec, dir);
    REQUIRE(out.fit_ok);
    CHECK(out.fit.points_used == 4);
    const auto fitjson = slurp(dir + "/fit.json");
    CHECK(fitjson.find("\"fit_against\": \"W\"") != std::string::npos);
    CHECK(out.fit.slope < 0);  // moment decreases in W
    std::filesystem::remove_all(dir);
}

TEST_CASE("hypothesis check run emits values") {
    const char* text = R"({
      "kind": "hypothesis-check",
      "check": "hua",
      "n_grid": [4096, 8192, 16384],
      "w_grid": [2]
    })";
    auto spec = parse_spec_json(text);
    const std::string dir = "exp_out_hua";
    auto out = run(spec, dir);
    REQUIRE(out.fit_ok);
    CHECK(out.fit.slope < 0);
    const auto csv = slurp(dir + "/results.csv");
    CHECK(csv.rfind("N,W,check,value\n", 0) == 0);
    CHECK(csv.find("hua") != std::string::npos);
    std::filesystem::remove_all(dir);
}

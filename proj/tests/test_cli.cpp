#include "conetutte/io.hpp"
#include "conetutte/solver.hpp"
#include "support/testgen.hpp"

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <memory>
#include <string>

using namespace conetutte;

namespace {

std::string cli_path() {
    const char* env = std::getenv("CONETUTTE_CLI");
    return env ? env : "";
}

int run(const std::string& args) {
    std::string cmd = cli_path() + " " + args + " >/tmp/conetutte_cli_out.txt 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

bool file_exists(const std::string& path) { return std::ifstream(path).good(); }

} // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("embed, certify, cones, render pipeline") {
    if (cli_path().empty()) {
        MESSAGE("CONETUTTE_CLI not set; skipping");
        return;
    }
    auto tri = std::make_shared<const Triangulation>(
        build_triangulation({{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}}, 5));
    save_json_atomic("/tmp/ct_fan.json", mesh_to_json(*tri));
    save_json_atomic("/tmp/ct_square.json",
                     polygon_to_json({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));

    CHECK(run("embed --mesh /tmp/ct_fan.json --polygon /tmp/ct_square.json "
              "--weights uniform --out /tmp/ct_drawing.json") == 0);
    CHECK(file_exists("/tmp/ct_drawing.json"));

    CHECK(run("certify --mesh /tmp/ct_fan.json --source /tmp/ct_drawing.json "
              "--target /tmp/ct_drawing.json --out /tmp/ct_cert.json") == 0);

    // A target with the interior vertex dragged outside must be rejected.
    auto coords = load_drawing_coords("/tmp/ct_drawing.json");
    coords[4] = {2.0, 2.0};
    PlanarDrawing bad = PlanarDrawing::make(tri, coords);
    save_json_atomic("/tmp/ct_bad.json", drawing_to_json(bad));
    CHECK(run("certify --mesh /tmp/ct_fan.json --source /tmp/ct_drawing.json "
              "--target /tmp/ct_bad.json") == 2);

    CHECK(run("cones --mesh /tmp/ct_fan.json --drawing /tmp/ct_drawing.json "
              "--weights uniform --out /tmp/ct_cones.json") == 0);
    CHECK(file_exists("/tmp/ct_cones.json"));

    CHECK(run("render --mesh /tmp/ct_fan.json --drawing /tmp/ct_drawing.json "
              "--cone-weights uniform --svg /tmp/ct_out.svg") == 0);
    std::ifstream svg("/tmp/ct_out.svg");
    std::string first_line;
    std::getline(svg, first_line);
    CHECK(first_line.rfind("<svg", 0) == 0);

    CHECK(run("embed --mesh /tmp/ct_fan.json") != 0); // missing required option
    CHECK(run("certify --mesh /tmp/ct_fan.json --source /tmp/ct_missing.json "
              "--target /tmp/ct_drawing.json") == 1);
}

TEST_CASE("disk subcommands") {
    if (cli_path().empty()) {
        MESSAGE("CONETUTTE_CLI not set; skipping");
        return;
    }
    save_json_atomic("/tmp/ct_convex.json",
                     polygon_to_json({{0, 0}, {2, 0}, {3, 2}, {1, 3}, {-1, 1}}));
    CHECK(run("disk --m 512 rkc --polygon /tmp/ct_convex.json --theta 24 --nu 6") == 0);

    save_json_atomic("/tmp/ct_map.json", boundary_map_to_json(circle_identity_map()));
    CHECK(run("disk --m 512 an-check --map /tmp/ct_map.json --samples 32") == 0);

    CHECK(run("disk monotone --family linear") == 0);
}

TEST_SUITE_END();

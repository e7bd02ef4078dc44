#include "conetutte/error.hpp"
#include "conetutte/solver.hpp"
#include "conetutte/weights.hpp"
#include "support/oracle.hpp"
#include "support/testgen.hpp"

#include <doctest.h>

#include <cmath>
#include <memory>

using namespace conetutte;

namespace {

std::shared_ptr<const Triangulation> square_fan() {
    return std::make_shared<const Triangulation>(
        build_triangulation({{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}}, 5));
}

const std::vector<Vec2> kSquare = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};

} // namespace

TEST_SUITE_BEGIN("solver");

TEST_CASE("uniform weights are all one") {
    auto tri = std::make_shared<const Triangulation>(build_triangulation({{0, 1, 2}}, 3));
    EdgeWeights w = EdgeWeights::uniform(tri);
    CHECK(w.flat().size() == 6);
    for (double v : w.flat()) CHECK(v == 1.0);
}

TEST_CASE("random weights are reproducible and in range") {
    auto tri = square_fan();
    EdgeWeights a = EdgeWeights::random_positive(tri, 7, 0.1, 10.0);
    EdgeWeights b = EdgeWeights::random_positive(tri, 7, 0.1, 10.0);
    CHECK(a.flat() == b.flat());
    for (double v : a.flat()) {
        CHECK(v >= 0.1);
        CHECK(v < 10.0);
    }
    EdgeWeights c = EdgeWeights::random_positive(tri, 8, 0.1, 10.0);
    CHECK(a.flat() != c.flat());
}

TEST_CASE("non-positive range rejected") {
    auto tri = square_fan();
    CHECK_THROWS_AS(EdgeWeights::random_positive(tri, 1, 0.0, 1.0), Error);
    CHECK_THROWS_AS(EdgeWeights::random_positive(tri, 1, -1.0, 1.0), Error);
}

TEST_CASE("fan with uniform weights lands at the barycenter") {
    auto tri = square_fan();
    PlanarDrawing d = harmonic_embed(tri, EdgeWeights::uniform(tri), kSquare);
    CHECK(d.coords[4].x == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(d.coords[4].y == doctest::Approx(0.5).epsilon(1e-12));
    for (int k = 0; k < 4; ++k) CHECK(d.coords[k] == kSquare[k]); // bit-equal boundary
}

TEST_CASE("single unknown closed form") {
    auto tri = square_fan();
    // Weight 3 on the edge toward corner (0,1), 1 elsewhere: the interior
    // vertex solves y = sum w_j b_j / sum w_j = (1/3, 2/3).
    std::vector<std::tuple<int, int, double>> entries;
    for (auto [i, j] : tri->undirected_edges()) {
        entries.emplace_back(i, j, 1.0);
        entries.emplace_back(j, i, 1.0);
    }
    for (auto& [i, j, w] : entries)
        if (i == 4 && j == 3) w = 3.0;
    EdgeWeights w = EdgeWeights::from_edge_list(tri, entries);
    PlanarDrawing d = harmonic_embed(tri, w, kSquare);
    CHECK(d.coords[4].x == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(d.coords[4].y == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("two interior vertices match the dense oracle") {
    // Hexagon boundary 0..5 with interior vertices 6, 7.
    std::vector<Face> faces = {{0, 1, 6}, {1, 2, 6}, {2, 7, 6}, {2, 3, 7},
                               {3, 4, 7}, {4, 5, 7}, {5, 6, 7}, {5, 0, 6}};
    auto tri = std::make_shared<const Triangulation>(build_triangulation(faces, 8));
    std::vector<Vec2> hexagon;
    for (int k = 0; k < 6; ++k) {
        double a = 3.14159265358979323846 * k / 3.0;
        hexagon.push_back({std::cos(a), std::sin(a)});
    }

    SUBCASE("uniform weights, frozen closed form") {
        PlanarDrawing d = harmonic_embed(tri, EdgeWeights::uniform(tri), hexagon);
        // y6 = (5A + B)/24, y7 = (5B + A)/24 with A = y0+y1+y2+y5, B = y2+y3+y4+y5.
        CHECK(d.coords[6].x == doctest::Approx(0.25).epsilon(1e-10));
        CHECK(d.coords[6].y == doctest::Approx(std::sqrt(3.0) / 12.0).epsilon(1e-10));
        CHECK(d.coords[7].x == doctest::Approx(-0.25).epsilon(1e-10));
        CHECK(d.coords[7].y == doctest::Approx(-std::sqrt(3.0) / 12.0).epsilon(1e-10));
    }

    SUBCASE("random weights vs Gaussian elimination oracle") {
        for (std::uint64_t seed : {11ull, 12ull, 13ull}) {
            EdgeWeights w = EdgeWeights::random_positive(tri, seed, 0.1, 10.0);
            PlanarDrawing d = harmonic_embed(tri, w, hexagon);
            auto expect = testgen::dense_harmonic_oracle(*tri, w, hexagon);
            for (int v : tri->interior_vertices()) {
                CHECK(d.coords[v].x == doctest::Approx(expect[v].x).epsilon(1e-10));
                CHECK(d.coords[v].y == doctest::Approx(expect[v].y).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("laplace residual formula") {
    auto tri = std::make_shared<const Triangulation>(build_triangulation({{0, 1, 2}}, 3));
    std::vector<std::tuple<int, int, double>> entries = {{0, 1, 2.0}, {0, 2, 3.0}, {1, 0, 1.0},
                                                         {1, 2, 1.0}, {2, 0, 1.0}, {2, 1, 1.0}};
    EdgeWeights w = EdgeWeights::from_edge_list(tri, entries);
    PlanarDrawing d = PlanarDrawing::make(tri, {{0, 0}, {1, 0}, {0, 1}});
    auto r = laplace_residual(d, w);
    CHECK(r[0].x == doctest::Approx(2.0));
    CHECK(r[0].y == doctest::Approx(3.0));
}

TEST_CASE("barycentric identity gives zero residual") {
    auto tri = square_fan();
    std::vector<Vec2> coords = kSquare;
    coords.push_back({0.5, 0.5});
    PlanarDrawing d = PlanarDrawing::make(tri, coords);
    auto r = laplace_residual(d, EdgeWeights::uniform(tri));
    CHECK(r[4].x == 0.0);
    CHECK(r[4].y == 0.0);
}

TEST_CASE("solver postcondition holds on solved instances") {
    Rng rng(31);
    for (int trial = 0; trial < 5; ++trial) {
        auto inst = testgen::random_disk_instance(rng, rng.uniform_int(8, 16),
                                                  rng.uniform_int(5, 30));
        EdgeWeights w = EdgeWeights::random_positive(inst.tri, rng.next_u64(), 0.1, 10.0);
        auto polygon = testgen::random_convex_polygon(
            rng, static_cast<int>(inst.tri->boundary_cycle().size()));
        PlanarDrawing d = harmonic_embed_polygon(inst.tri, w, polygon);
        double diam = polygon.diameter();
        auto r = laplace_residual(d, w);
        for (int v : inst.tri->interior_vertices())
            CHECK(norm(r[v]) <= 1e-12 * diam + 1e-10 * w.row_sum(v) * diam);
    }
}

TEST_CASE("affine equivariance") {
    Rng rng(32);
    auto inst = testgen::random_disk_instance(rng, 10, 14);
    EdgeWeights w = EdgeWeights::random_positive(inst.tri, 5, 0.5, 2.0);
    auto polygon = testgen::random_convex_polygon(rng, 10);

    // y -> A y + t with positive determinant keeps the polygon CCW.
    auto affine = [](const Vec2& p) {
        return Vec2{1.3 * p.x - 0.4 * p.y + 2.0, 0.7 * p.x + 1.1 * p.y - 1.0};
    };
    std::vector<Vec2> mapped;
    for (const Vec2& p : polygon.vertices()) mapped.push_back(affine(p));

    PlanarDrawing base = harmonic_embed_polygon(inst.tri, w, polygon);
    PlanarDrawing moved = harmonic_embed(inst.tri, w, mapped);
    double scale = polygon_diameter(mapped);
    for (int v : inst.tri->interior_vertices()) {
        Vec2 expect = affine(base.coords[v]);
        CHECK(std::abs(moved.coords[v].x - expect.x) <= 1e-10 * scale);
        CHECK(std::abs(moved.coords[v].y - expect.y) <= 1e-10 * scale);
    }
}

TEST_CASE("maximum principle") {
    Rng rng(33);
    for (int trial = 0; trial < 3; ++trial) {
        auto inst = testgen::random_disk_instance(rng, 12, 20);
        EdgeWeights w = EdgeWeights::random_positive(inst.tri, rng.next_u64(), 0.1, 10.0);
        auto polygon = testgen::random_convex_polygon(rng, 12);
        PlanarDrawing d = harmonic_embed_polygon(inst.tri, w, polygon);
        for (int v : inst.tri->interior_vertices())
            CHECK(point_in_polygon(d.coords[v], polygon.vertices()) > 0);
    }
}

TEST_CASE("boundary mismatch errors") {
    auto tri = square_fan();
    EdgeWeights w = EdgeWeights::uniform(tri);
    CHECK_THROWS_AS(harmonic_embed(tri, w, {{0, 0}, {1, 0}, {1, 1}}), Error);
    // Reversed orientation.
    CHECK_THROWS_AS(harmonic_embed(tri, w, {{0, 1}, {1, 1}, {1, 0}, {0, 0}}), Error);
}

TEST_SUITE_END();

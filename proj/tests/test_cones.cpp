#include "conetutte/certify.hpp"
#include "conetutte/cones.hpp"
#include "conetutte/error.hpp"
#include "conetutte/exact.hpp"
#include "conetutte/solver.hpp"
#include "support/testgen.hpp"

#include <doctest.h>

#include <cmath>

using namespace conetutte;

namespace {

bool farkas_certificate_ok(const PositiveCombination& combo, const std::vector<Vec2>& vectors,
                           const Vec2& target) {
    const Vec2& c = combo.certificate;
    if (dot_sign(c.x, c.y, target.x, target.y) >= 0) return false;
    for (const Vec2& y : vectors)
        if (dot_sign(c.x, c.y, y.x, y.y) < 0) return false;
    return true;
}

} // namespace

TEST_SUITE_BEGIN("cones");

TEST_CASE("collinear neighbors give a half-plane") {
    BoundaryCone cone = cone_at_vertex({1, 0}, {0, 0}, {-1, 0});
    CHECK(!cone.degenerate);
    CHECK(cone_contains(cone, {0, -1}));
    CHECK(!cone_contains(cone, {0, 1}));
    CHECK(!cone_contains(cone, {1, 0})); // on the boundary line: open set
}

TEST_CASE("quarter-plane cone") {
    BoundaryCone cone = cone_at_vertex({0, -1}, {0, 0}, {1, 0});
    CHECK(cone_contains(cone, {-1, 1}));
    CHECK(!cone_contains(cone, {1, 1}));
    CHECK(!cone_contains(cone, {-1, -1}));
    CHECK(!cone_contains(cone, {-1, 0})); // open edge
    CHECK(cone_margin(cone, {-1, 1}) > 0.0);
}

TEST_CASE("doubled-back boundary gives an empty cone") {
    BoundaryCone cone = cone_at_vertex({1, 0}, {0, 0}, {0.5, 0});
    CHECK(cone.degenerate);
    CHECK(!cone_contains(cone, {0, 1}));
    CHECK(!cone_contains(cone, {0, -1}));
}

TEST_CASE("coincident points rejected") {
    CHECK_THROWS_AS(cone_at_vertex({0, 0}, {0, 0}, {1, 0}), Error);
    CHECK_THROWS_AS(cone_at_vertex({1, 0}, {0, 0}, {1, 0}), Error);
}

TEST_CASE("rotation equivariance") {
    Rng rng(71);
    for (int trial = 0; trial < 200; ++trial) {
        Vec2 pp{rng.uniform(-2, 2), rng.uniform(-2, 2)};
        Vec2 p{rng.uniform(-2, 2), rng.uniform(-2, 2)};
        Vec2 pn{rng.uniform(-2, 2), rng.uniform(-2, 2)};
        Vec2 z{rng.uniform(-2, 2), rng.uniform(-2, 2)};
        if (pp == p || pn == p || pp == pn) continue;
        BoundaryCone cone = cone_at_vertex(pp, p, pn);
        double margin = cone_margin(cone, z);
        double scale = std::max({norm(pp - p), norm(pn - p), norm(z), 1.0});
        if (std::abs(margin) < 1e-9 * scale * scale) continue; // skip near-boundary cases
        double a = rng.uniform(0.0, 6.28318);
        auto rot = [&](const Vec2& q) {
            return Vec2{q.x * std::cos(a) - q.y * std::sin(a),
                        q.x * std::sin(a) + q.y * std::cos(a)};
        };
        BoundaryCone rotated = cone_at_vertex(rot(pp), rot(p), rot(pn));
        CHECK(cone_contains(cone, z) == cone_contains(rotated, rot(z)));
    }
}

TEST_CASE("positive combination: symmetric spanning, target zero") {
    std::vector<Vec2> vectors = {{1, 0}, {0, 1}, {-1, -1}};
    PositiveCombination combo = solve_positive_combination(vectors, {0, 0});
    REQUIRE(combo.feasible);
    CHECK(combo.floor_met);
    CHECK(norm(combo.residual) <= 1e-12);
    for (double a : combo.coefficients) CHECK(a > 0.0);
}

TEST_CASE("positive combination: substitution check") {
    std::vector<Vec2> vectors = {{1, 0}, {0, 1}, {-1, -1}};
    Vec2 target{1, 1};
    PositiveCombination combo = solve_positive_combination(vectors, target);
    REQUIRE(combo.feasible);
    Vec2 sum{0, 0};
    for (std::size_t j = 0; j < vectors.size(); ++j)
        sum = sum + combo.coefficients[j] * vectors[j];
    CHECK(norm(sum - target) <= 1e-9 * 3.0 * std::sqrt(2.0));
    for (double a : combo.coefficients) CHECK(a > 0.0);
}

TEST_CASE("positive combination: Farkas certificate") {
    std::vector<Vec2> vectors = {{1, 0}, {0, 1}};
    PositiveCombination combo = solve_positive_combination(vectors, {-1, 0});
    REQUIRE(!combo.feasible);
    CHECK(combo.certificate_strict);
    CHECK(farkas_certificate_ok(combo, vectors, {-1, 0}));
}

TEST_CASE("positive combination: boundary target is infeasible") {
    std::vector<Vec2> vectors = {{1, 0}, {0, 1}};
    PositiveCombination combo = solve_positive_combination(vectors, {1, 0});
    CHECK(!combo.feasible);
    CHECK(!combo.certificate_strict); // the target lies on the closed cone boundary
}

TEST_CASE("positive combination: collinear family") {
    std::vector<Vec2> ray = {{1, 0}, {2, 0}};
    PositiveCombination on_ray = solve_positive_combination(ray, {3, 0});
    REQUIRE(on_ray.feasible);
    CHECK(norm(on_ray.residual) <= 1e-12);
    CHECK(!solve_positive_combination(ray, {-1, 0}).feasible);
    CHECK(!solve_positive_combination(ray, {1, 0.25}).feasible);

    std::vector<Vec2> line = {{1, 0}, {-1, 0}};
    PositiveCombination zero = solve_positive_combination(line, {0, 0});
    REQUIRE(zero.feasible);
    CHECK(norm(zero.residual) <= 1e-12);
}

TEST_CASE("positive combination: zero vector rejected") {
    CHECK_THROWS_AS(solve_positive_combination({{0, 0}, {1, 0}}, {1, 0}), Error);
    CHECK_THROWS_AS(solve_positive_combination({{1, 0}}, {1, 0}), Error);
}

TEST_CASE("positive combination: random instance contracts") {
    Rng rng(72);
    int feasible_count = 0, infeasible_count = 0;
    for (int trial = 0; trial < 300; ++trial) {
        int m = rng.uniform_int(3, 12);
        bool half_plane = rng.chance(0.5);
        double base = rng.uniform(0.0, 6.28318);
        std::vector<Vec2> vectors;
        for (int j = 0; j < m; ++j) {
            double a = half_plane ? base + rng.uniform(0.0, 3.14159)
                                  : rng.uniform(0.0, 6.28318);
            double r = rng.uniform(0.5, 2.0);
            vectors.push_back({r * std::cos(a), r * std::sin(a)});
        }
        Vec2 target{rng.uniform(-2, 2), rng.uniform(-2, 2)};
        PositiveCombination combo = solve_positive_combination(vectors, target);
        double max_norm = 0.0;
        for (const Vec2& v : vectors) max_norm = std::max(max_norm, norm(v));
        if (combo.feasible) {
            ++feasible_count;
            double sum = 0.0, mn = 1e300, mx = 0.0;
            Vec2 acc{0, 0};
            for (std::size_t j = 0; j < vectors.size(); ++j) {
                acc = acc + combo.coefficients[j] * vectors[j];
                sum += combo.coefficients[j];
                mn = std::min(mn, combo.coefficients[j]);
                mx = std::max(mx, combo.coefficients[j]);
            }
            CHECK(norm(acc - target) <= 1e-9 * sum * max_norm);
            CHECK(mn >= 1e-6 * mx);
        } else {
            ++infeasible_count;
            CHECK(combo.certificate_strict);
            CHECK(farkas_certificate_ok(combo, vectors, target));
        }
    }
    CHECK(feasible_count > 30);
    CHECK(infeasible_count > 30);
}

TEST_CASE("interior and strictly reflex vertices span the plane") {
    Rng rng(73);
    auto meshed = testgen::mesh_polygon(rng, testgen::l_polygon(8), 10);
    const Triangulation& tri = *meshed.tri;
    auto classes = classify_boundary_vertices(meshed.drawing.boundary_points());
    for (int v = 0; v < tri.vertex_count(); ++v) {
        bool is_interior = !tri.is_boundary_vertex(v);
        bool strictly_reflex =
            tri.is_boundary_vertex(v) &&
            classes[tri.boundary_position(v)] == TurnClass::StrictlyReflex;
        if (!is_interior && !strictly_reflex) continue;
        std::vector<Vec2> neighbor_points;
        for (int j : tri.neighbors(v)) neighbor_points.push_back(meshed.drawing.coords[j]);
        PositiveCombination combo =
            solve_positive_combination_at(neighbor_points, meshed.drawing.coords[v], {0, 0});
        CHECK(combo.feasible);
    }
}

TEST_CASE("cone report on a convex target is vacuously true") {
    auto tri = std::make_shared<const Triangulation>(
        build_triangulation({{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}}, 5));
    EdgeWeights w = EdgeWeights::uniform(tri);
    PlanarDrawing d = harmonic_embed(tri, w, {{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    ConeReport report = cone_condition_report(d, w);
    CHECK(report.overall);
    for (const auto& v : report.vertices) CHECK(v.cls == TurnClass::StrictlyConvex);
}

TEST_CASE("cone report pass and fail on an L target") {
    Rng rng(74);
    TargetPolygon poly = testgen::l_polygon(6, 0.8); // deep notch
    auto meshed = testgen::mesh_polygon(rng, poly, 14);

    // Recovered weights satisfy the cone condition by construction.
    WeightRecovery rec = recover_weights(meshed.drawing, meshed.drawing);
    ConeReport good = cone_condition_report(meshed.drawing, rec.weights);
    CHECK(good.overall);
    CHECK(good.min_reflex_margin > 0.0);

    // Uniform weights on a deep notch pull the membrane out of the domain.
    EdgeWeights uniform = EdgeWeights::uniform(meshed.tri);
    PlanarDrawing solved = harmonic_embed(meshed.tri, uniform, meshed.drawing.boundary_points());
    ConeReport bad = cone_condition_report(solved, uniform);
    CHECK(!bad.overall);
    CHECK(bad.min_reflex_margin < 0.0);
}

TEST_SUITE_END();

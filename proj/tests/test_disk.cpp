#include "conetutte/disk.hpp"
#include "conetutte/error.hpp"
#include "support/testgen.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace conetutte;

namespace {

constexpr double kPi = std::numbers::pi;

TargetPolygon unit_square() {
    return TargetPolygon::from_points({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
}

} // namespace

TEST_SUITE_BEGIN("disk");

TEST_CASE("constant boundary data extends to the constant") {
    ScalarBoundaryData data;
    data.f = [](double) { return 1.0; };
    for (double r : {0.1, 0.7, 0.95}) {
        for (double theta : {-2.0, 0.0, 1.5}) {
            CHECK(std::abs(poisson_extend_scalar(data, r, theta) - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("identity circle map extends to the identity") {
    DiskBoundaryMap map = circle_identity_map();
    PoissonOptions opts;
    opts.quadrature_m = 2048;
    PoissonEvaluator eval(map, opts);
    for (double nu : {0.1, 0.25, 0.5, 0.75}) {
        for (int i = 0; i < 8; ++i) {
            double theta = -kPi + 2.0 * kPi * i / 8.0;
            Vec2 phi = eval.value(nu, theta);
            Vec2 expect{(1.0 - nu) * std::cos(theta), (1.0 - nu) * std::sin(theta)};
            CHECK(norm(phi - expect) <= 1e-6);
        }
    }
}

TEST_CASE("degree-2 data matches the r^2 harmonic polynomial") {
    DiskBoundaryMap map = circle_power_map(2);
    PoissonOptions opts;
    opts.quadrature_m = 2048;
    PoissonEvaluator eval(map, opts);
    for (double nu : {0.2, 0.5}) {
        double r = 1.0 - nu;
        for (double theta : {-1.0, 0.3, 2.2}) {
            Vec2 phi = eval.value(nu, theta);
            Vec2 expect{r * r * std::cos(2 * theta), r * r * std::sin(2 * theta)};
            CHECK(norm(phi - expect) <= 1e-6);
        }
    }
}

TEST_CASE("boundary point is rejected; gamma is exact there") {
    DiskBoundaryMap map = circle_identity_map();
    CHECK_THROWS_AS(poisson_extend(map, 0.0, 0.3), Error);
    Vec2 g = map.eval(0.3);
    CHECK(g.x == doctest::Approx(std::cos(0.3)).epsilon(1e-15));
}

TEST_CASE("identity normal derivative points inward") {
    DiskBoundaryMap map = circle_identity_map();
    for (double theta : {-2.5, 0.0, 0.9}) {
        BoundaryDerivatives d = boundary_derivatives(map, theta);
        Vec2 expect{-std::cos(theta), -std::sin(theta)};
        CHECK(norm(d.dphi_dnu - expect) <= 1e-4);
        CHECK(norm(d.gamma_prime_plus - d.gamma_prime_minus) == 0.0); // smooth
    }
}

TEST_CASE("square map has distinct one-sided derivatives at corners") {
    DiskBoundaryMap map = polygon_arclength_map(unit_square());
    auto junctions = map.junction_angles();
    REQUIRE(junctions.size() == 4);
    // Interior junctions have one-sided derivatives along the two edges.
    for (std::size_t k = 1; k < junctions.size(); ++k) {
        double theta = junctions[k];
        Vec2 plus = map.derivative_plus(theta);
        Vec2 minus = map.derivative_minus(theta);
        CHECK(norm(plus) > 0.0);
        CHECK(norm(minus) > 0.0);
        CHECK(std::abs(cross(plus, minus)) > 0.0); // genuinely different directions
    }
}

TEST_CASE("cone scan passes for the identity map") {
    ConeScanReport report = cone_condition_scan(circle_identity_map(), 64);
    CHECK(report.pass);
    // <(-e^{i t})^perp, i e^{i t}> = 1 fixes the sign convention.
    CHECK(report.min_margin == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("cone scan passes for the square map including corners") {
    DiskBoundaryMap map = polygon_arclength_map(unit_square());
    ConeScanReport report = cone_condition_scan(map, 64);
    CHECK(report.pass);
    CHECK(report.min_margin > 0.0);
}

TEST_CASE("grid injectivity check passes on convex targets") {
    Rng rng(61);
    TargetPolygon polygon = testgen::random_convex_polygon(rng, 7);
    DiskBoundaryMap map = polygon_arclength_map(polygon);
    GridInjectivityReport report = grid_injectivity_check(map, 32, 8);
    CHECK(report.pass);
}

TEST_CASE("mean value property") {
    DiskBoundaryMap map = polygon_arclength_map(unit_square());
    PoissonEvaluator eval(map, {});
    Vec2 center = eval.value(1.0, 0.0); // r = 0
    // Independent average of gamma over the parameter interval.
    Vec2 avg{0, 0};
    const int n = 4096;
    for (int i = 0; i < n; ++i) {
        double t = -kPi + 2.0 * kPi * (i + 0.5) / n;
        avg = avg + map.eval(t);
    }
    avg = avg / n;
    CHECK(norm(center - avg) <= 1e-6);
}

TEST_CASE("maximum principle per coordinate") {
    DiskBoundaryMap map = polygon_arclength_map(unit_square());
    PoissonEvaluator eval(map, {});
    for (double nu : {0.1, 0.5, 0.9})
        for (double theta : {-3.0, -1.0, 0.5, 2.5}) {
            Vec2 phi = eval.value(nu, theta);
            CHECK(phi.x >= -1.0 - 1e-9);
            CHECK(phi.x <= 1.0 + 1e-9);
            CHECK(phi.y >= -1.0 - 1e-9);
            CHECK(phi.y <= 1.0 + 1e-9);
        }
}

TEST_CASE("det sign agrees with the cone verdict for smooth maps") {
    for (int k : {1, 2}) {
        AnCheckReport report = alessandrini_nesi_check(circle_power_map(k), 48);
        CHECK(report.pass);
        for (const auto& s : report.samples) CHECK(s.det_positive);
    }
    // Smooth ellipse map.
    CurvePiece p;
    p.form = CurvePiece::Form::Trigonometric;
    p.theta0 = -kPi;
    p.theta1 = kPi;
    p.cx = {0.0, 1.7, 0.0};
    p.cy = {0.0, 0.0, 0.8};
    AnCheckReport report = alessandrini_nesi_check(DiskBoundaryMap::from_pieces({p}), 48);
    CHECK(report.pass);
}

TEST_CASE("choquet counterexample on the L polygon") {
    TargetPolygon poly = testgen::l_polygon(6);
    PoissonOptions opts;
    opts.quadrature_m = 512;
    ChoquetResult result = choquet_counterexample(poly, std::ldexp(1.0, -20), opts);
    CHECK(result.slowdown >= std::ldexp(1.0, -20));
    CHECK(point_in_polygon(result.witness_image, poly.vertices()) < 0);
    CHECK(result.scan_min_margin < 0.0);
}

TEST_CASE("convex polygon has no escaping chord") {
    Rng rng(62);
    TargetPolygon polygon = testgen::random_convex_polygon(rng, 8);
    try {
        choquet_counterexample(polygon);
        FAIL("expected NoReflexChord");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoReflexChord);
    }
}

TEST_CASE("diameter image approaches the chord as the map slows") {
    TargetPolygon poly = testgen::l_polygon(6);
    PoissonOptions opts;
    opts.quadrature_m = 512;
    int ia = 2, ib = 4; // neighbors of the reflex corner (1,1) scaled by family
    Vec2 a = poly.vertices()[ia], b = poly.vertices()[ib];
    auto max_dist_to_chord = [&](double s) {
        DiskBoundaryMap map = slowed_polygon_map(poly, ia, ib, s);
        PoissonEvaluator eval(map, opts);
        double worst = 0.0;
        for (int k = 1; k < 16; ++k) {
            double x = -0.9 + 1.8 * k / 16.0;
            Vec2 img = eval.value(1.0 - std::abs(x), x >= 0 ? 0.0 : kPi);
            // Distance to the segment a-b.
            Vec2 d = b - a;
            double t = std::clamp(dot(img - a, d) / dot(d, d), 0.0, 1.0);
            worst = std::max(worst, norm(img - (a + t * d)));
        }
        return worst;
    };
    double coarse = max_dist_to_chord(0.25);
    double fine = max_dist_to_chord(std::ldexp(1.0, -8));
    CHECK(fine < coarse);
    CHECK(fine < 0.1 * polygon_diameter(poly.vertices()));
}

TEST_CASE("monotonicity transfer for linear data") {
    ScalarBoundaryData data;
    data.f = [](double t) { return t; };
    MonotonicityReport report =
        monotonicity_check(data, 1.0, 0.5, {0.5, 0.7, 0.9, 0.95, 0.99});
    CHECK(report.hypothesis_ok);
    CHECK(report.conclusion_tail_ok);
    CHECK(report.empirical_r == 0.5); // holds on the whole grid for linear data
}

TEST_CASE("monotonicity transfer for data with a far-side drop") {
    // Locally c-monotone on [-delta, delta], but a large drop just outside
    // bleeds into the window at moderate r; the conclusion only holds close
    // to the boundary.
    ScalarBoundaryData data;
    data.f = [](double t) { return t - 4.0 * (t > 0.6 ? 1.0 : 0.0); };
    data.breakpoints = {0.6};
    MonotonicityReport report =
        monotonicity_check(data, 1.0, 0.5, {0.3, 0.5, 0.7, 0.9, 0.97, 0.99});
    CHECK(report.hypothesis_ok);
    CHECK(report.conclusion_tail_ok);
    CHECK(report.empirical_r > 0.3); // fails at small r, holds near the boundary
    CHECK(report.empirical_r < 1.0);
}

TEST_CASE("hypothesis violation is reported") {
    ScalarBoundaryData data;
    data.f = [](double t) { return -t; };
    CHECK_THROWS_AS(monotonicity_check(data, 1.0, 0.5, {0.9}), Error);
}

TEST_CASE("Lipschitz data bounds the tangential derivative") {
    ScalarBoundaryData data;
    data.f = [](double t) { return std::sin(t); }; // Lipschitz constant 1
    for (double r : {0.3, 0.6, 0.9})
        for (double t : {-2.0, 0.0, 1.0}) {
            double d = poisson_tangential_derivative_scalar(data, r, t);
            CHECK(std::abs(d) <= 1.0 + 1e-6);
        }
}

TEST_CASE("half-disk indicator profile matches the 2/pi closed form") {
    PoissonOptions opts;
    opts.quadrature_m = 2048;
    ConstantAudit audit = half_disk_constant_audit(21, opts);
    CHECK(audit.best == "2/pi");
    CHECK(audit.max_dev_half_plus_2pi_atan <= 1e-4);
    CHECK(audit.max_dev_half_plus_1pi_atan > 1e-2); // the 1/pi variant clearly misfits
}

TEST_CASE("bad boundary maps are rejected") {
    CurvePiece p;
    p.form = CurvePiece::Form::Polynomial;
    p.theta0 = -kPi;
    p.theta1 = 0.0; // gap: does not reach pi
    p.cx = {0.0, 1.0};
    p.cy = {0.0};
    CHECK_THROWS_AS(DiskBoundaryMap::from_pieces({p}), Error);
}

TEST_SUITE_END();

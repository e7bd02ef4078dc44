#include "conetutte/certify.hpp"

#include "conetutte/error.hpp"
#include "conetutte/exact.hpp"
#include "conetutte/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace conetutte {

namespace {

constexpr std::size_t kMaxViolations = 64;

int face_area_sign(const PlanarDrawing& d, const Face& f) {
    return orientation(d.coords[f[0]], d.coords[f[1]], d.coords[f[2]]);
}

double face_area(const PlanarDrawing& d, const Face& f) {
    return 0.5 * cross(d.coords[f[1]] - d.coords[f[0]], d.coords[f[2]] - d.coords[f[0]]);
}

void require_same_mesh(const PlanarDrawing& a, const PlanarDrawing& b) {
    if (a.tri.get() != b.tri.get() && !a.tri->structurally_equal(*b.tri))
        fail(ErrorCode::MeshMismatch, "drawings realize different triangulations");
}

void require_certified_source(const PlanarDrawing& source) {
    if (source.certified_embedding) return;
    EmbeddingCertificate cert = intersection_free(source);
    if (!cert.certified)
        fail(ErrorCode::SourceNotEmbedding, "source drawing is not a certified embedding");
}

} // namespace

std::string violation_to_string(const Violation& v) {
    switch (v.kind) {
    case ViolationKind::CrossingEdges:
        return "crossing_edges (" + std::to_string(v.a) + "," + std::to_string(v.b) + ")x(" +
               std::to_string(v.c) + "," + std::to_string(v.d) + ")";
    case ViolationKind::FlippedTriangle: return "flipped_triangle " + std::to_string(v.a);
    case ViolationKind::DegenerateTriangle: return "degenerate_triangle " + std::to_string(v.a);
    case ViolationKind::BoundaryNotSimple: return "boundary_not_simple";
    case ViolationKind::BoundaryOrientation: return "boundary_orientation_reversed";
    }
    return "?";
}

EmbeddingCertificate intersection_free(const PlanarDrawing& drawing) {
    const Triangulation& tri = *drawing.tri;
    EmbeddingCertificate cert;

    // Orientation half: every face strictly CCW.
    bool faces_ok = true;
    for (std::size_t f = 0; f < tri.faces().size(); ++f) {
        int s = face_area_sign(drawing, tri.faces()[f]);
        if (s > 0) continue;
        faces_ok = false;
        if (cert.violations.size() < kMaxViolations)
            cert.violations.push_back({s == 0 ? ViolationKind::DegenerateTriangle
                                              : ViolationKind::FlippedTriangle,
                                       static_cast<int>(f)});
    }

    // Boundary half: simple polygon, traversed counter-clockwise.
    auto loop = drawing.boundary_points();
    bool boundary_simple = polygon_is_simple(loop);
    if (!boundary_simple) cert.violations.push_back({ViolationKind::BoundaryNotSimple});
    bool boundary_ccw = boundary_simple && polygon_signed_area(loop) > 0.0;
    if (boundary_simple && !boundary_ccw)
        cert.violations.push_back({ViolationKind::BoundaryOrientation});

    cert.orientation_certificate = faces_ok && boundary_simple && boundary_ccw;

    // Ground truth: exact pairwise segment oracle over all undirected edges,
    // with an inline bounding-box rejection (interval comparisons are exact).
    auto edges = tri.undirected_edges();
    struct Seg {
        Vec2 a, b;
        double xmin, xmax, ymin, ymax;
        int i, j;
    };
    std::vector<Seg> segs;
    segs.reserve(edges.size());
    for (auto [i, j] : edges) {
        Seg s;
        s.a = drawing.coords[i];
        s.b = drawing.coords[j];
        s.xmin = std::min(s.a.x, s.b.x);
        s.xmax = std::max(s.a.x, s.b.x);
        s.ymin = std::min(s.a.y, s.b.y);
        s.ymax = std::max(s.a.y, s.b.y);
        s.i = i;
        s.j = j;
        segs.push_back(s);
    }
    cert.pairwise_clean = true;
    for (std::size_t p = 0; p < segs.size(); ++p) {
        for (std::size_t q = p + 1; q < segs.size(); ++q) {
            const Seg& s = segs[p];
            const Seg& t = segs[q];
            if (s.xmax < t.xmin || t.xmax < s.xmin || s.ymax < t.ymin || t.ymax < s.ymin)
                continue;
            if (segments_intersect_improperly(s.a, s.b, t.a, t.b)) {
                cert.pairwise_clean = false;
                if (cert.violations.size() < kMaxViolations)
                    cert.violations.push_back(
                        {ViolationKind::CrossingEdges, s.i, s.j, t.i, t.j});
            }
        }
    }

    // A clean orientation certificate must imply a clean oracle run.
    if (cert.orientation_certificate && !cert.pairwise_clean)
        fail(ErrorCode::Internal,
             "orientation certificate disagrees with the pairwise oracle");

    cert.certified = cert.orientation_certificate && cert.pairwise_clean;
    return cert;
}

EmbeddingCertificate certify_and_mark(PlanarDrawing& drawing) {
    EmbeddingCertificate cert = intersection_free(drawing);
    drawing.certified_embedding = cert.certified;
    return cert;
}

EmbeddingCertificate certify_homeomorphism(const PlanarDrawing& source,
                                           const PlanarDrawing& target) {
    require_same_mesh(source, target);
    require_certified_source(source);
    EmbeddingCertificate cert = intersection_free(target);
    // The source is certified, hence CCW; a certified target is CCW as well,
    // so orientations agree whenever cert passes. A reversed target shows up
    // as flipped faces / reversed boundary in the evidence.
    return cert;
}

WeightRecovery recover_weights(const PlanarDrawing& source, const PlanarDrawing& target) {
    EmbeddingCertificate cert = certify_homeomorphism(source, target);
    if (!cert.certified)
        fail(ErrorCode::RecoveryFailed,
             "recover_weights requires a certified homeomorphism; target was rejected");

    const Triangulation& tri = *target.tri;
    std::vector<double> flat(tri.directed_edge_count(), 0.0);
    auto classes = classify_boundary_vertices(target.boundary_points());
    const auto& cycle = tri.boundary_cycle();
    std::size_t b = cycle.size();

    auto solve_row = [&](int vi, const Vec2& goal) {
        std::vector<Vec2> neighbor_points;
        neighbor_points.reserve(tri.neighbors(vi).size());
        for (int j : tri.neighbors(vi)) neighbor_points.push_back(target.coords[j]);
        PositiveCombination combo =
            solve_positive_combination_at(neighbor_points, target.coords[vi], goal);
        if (!combo.feasible)
            fail(ErrorCode::RecoveryFailed,
                 "positive combination infeasible at vertex " + std::to_string(vi) +
                     " of a certified embedding");
        // Rows are positively homogeneous (interior target is zero; at the
        // boundary only the force direction matters), so normalize to a unit
        // maximum weight.
        double wmax = 0.0;
        for (double a : combo.coefficients) wmax = std::max(wmax, a);
        std::size_t offset = tri.adjacency_offsets()[vi];
        for (std::size_t k = 0; k < neighbor_points.size(); ++k)
            flat[offset + k] = combo.coefficients[k] / wmax;
    };

    for (int vi : tri.interior_vertices()) solve_row(vi, Vec2{0.0, 0.0});

    for (std::size_t k = 0; k < b; ++k) {
        int vi = cycle[k];
        if (classes[k] != TurnClass::StrictlyReflex) {
            // Strictly convex: unconstrained. Straight: the cone is an open
            // half-plane and any positive weights satisfy it on a certified
            // embedding. Uniform weights in both cases.
            std::size_t offset = tri.adjacency_offsets()[vi];
            for (std::size_t e = 0; e < tri.neighbors(vi).size(); ++e) flat[offset + e] = 1.0;
            continue;
        }
        const Vec2& p_prev = target.coords[cycle[(k + b - 1) % b]];
        const Vec2& p = target.coords[vi];
        const Vec2& p_next = target.coords[cycle[(k + 1) % b]];
        BoundaryCone cone = cone_at_vertex(p_prev, p, p_next);
        double mean_len = 0.0;
        for (int j : tri.neighbors(vi)) mean_len += distance(target.coords[j], p);
        mean_len /= static_cast<double>(tri.neighbors(vi).size());
        Vec2 goal = cone_interior_direction(cone) * mean_len;
        solve_row(vi, goal);
    }

    WeightRecovery out{EdgeWeights::from_flat(target.tri, std::move(flat)), {}, 0.0};
    out.cone_report = cone_condition_report(target, out.weights);
    out.max_interior_residual = max_interior_residual(target, out.weights);
    if (!out.cone_report.overall)
        fail(ErrorCode::RecoveryFailed,
             "recovered weights violate the cone condition at a reflex vertex");
    return out;
}

DetCheck boundary_det_check(const PlanarDrawing& source, const PlanarDrawing& target) {
    require_same_mesh(source, target);
    require_certified_source(source);
    if (polygon_signed_area(target.boundary_points()) *
            polygon_signed_area(source.boundary_points()) <=
        0.0)
        fail(ErrorCode::BoundaryMismatch,
             "boundary_det_check assumes an orientation-preserving boundary map");

    const Triangulation& tri = *source.tri;
    DetCheck out;
    out.all_positive = true;
    for (std::size_t f = 0; f < tri.faces().size(); ++f) {
        const Face& face = tri.faces()[f];
        bool touches_boundary = tri.is_boundary_vertex(face[0]) ||
                                tri.is_boundary_vertex(face[1]) ||
                                tri.is_boundary_vertex(face[2]);
        if (!touches_boundary) continue;
        int s_src = face_area_sign(source, face);
        if (s_src == 0)
            fail(ErrorCode::DegenerateSourceTriangle,
                 "source triangle " + std::to_string(f) + " has zero area");
        int s_tgt = face_area_sign(target, face);
        int sign = s_src * s_tgt;
        out.faces.push_back(static_cast<int>(f));
        out.signs.push_back(sign);
        out.ratios.push_back(face_area(target, face) / face_area(source, face));
        if (sign <= 0) out.all_positive = false;
    }
    return out;
}

} // namespace conetutte

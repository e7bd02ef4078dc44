#include "conetutte/extension.hpp"

#include "conetutte/cones.hpp"
#include "conetutte/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace conetutte {

TargetPolygon convex_hull(const std::vector<Vec2>& points) {
    if (points.size() < 3) fail(ErrorCode::AllCollinear, "hull needs at least 3 points");
    std::vector<Vec2> pts = points;
    std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    auto build_chain = [&](auto begin, auto end) {
        std::vector<Vec2> chain;
        for (auto it = begin; it != end; ++it) {
            while (chain.size() >= 2 &&
                   orientation(chain[chain.size() - 2], chain.back(), *it) <= 0)
                chain.pop_back();
            chain.push_back(*it);
        }
        return chain;
    };
    std::vector<Vec2> lower = build_chain(pts.begin(), pts.end());
    std::vector<Vec2> upper = build_chain(pts.rbegin(), pts.rend());
    lower.pop_back();
    upper.pop_back();
    lower.insert(lower.end(), upper.begin(), upper.end());
    if (lower.size() < 3) fail(ErrorCode::AllCollinear, "all points are collinear");
    return TargetPolygon::from_points(std::move(lower));
}

std::vector<Face> ear_clip(const std::vector<Vec2>& polygon, bool highest_index_first) {
    int n = static_cast<int>(polygon.size());
    if (n < 3) fail(ErrorCode::NotSimple, "polygon needs at least 3 vertices");
    if (!polygon_is_simple(polygon) || polygon_signed_area(polygon) <= 0.0)
        fail(ErrorCode::NotSimple, "ear clipping needs a simple CCW polygon");

    std::vector<int> prev(n), next(n);
    for (int i = 0; i < n; ++i) {
        prev[i] = (i + n - 1) % n;
        next[i] = (i + 1) % n;
    }
    std::vector<char> alive(static_cast<std::size_t>(n), 1);

    auto is_ear = [&](int tip) {
        int a = prev[tip], c = next[tip];
        if (orientation(polygon[a], polygon[tip], polygon[c]) <= 0) return false;
        for (int v = 0; v < n; ++v) {
            if (!alive[v] || v == a || v == tip || v == c) continue;
            if (point_in_triangle(polygon[v], polygon[a], polygon[tip], polygon[c]) >= 0)
                return false;
        }
        return true;
    };

    std::vector<Face> out;
    out.reserve(static_cast<std::size_t>(n - 2));
    int remaining = n;
    while (remaining > 3) {
        int clipped = -1;
        for (int step = 0; step < n; ++step) {
            int tip = highest_index_first ? n - 1 - step : step;
            if (!alive[tip]) continue;
            if (!is_ear(tip)) continue;
            clipped = tip;
            break;
        }
        if (clipped < 0)
            fail(ErrorCode::Internal, "no valid ear in a simple polygon"); // two-ears theorem
        int a = prev[clipped], c = next[clipped];
        out.push_back({a, clipped, c});
        alive[clipped] = 0;
        next[a] = c;
        prev[c] = a;
        --remaining;
    }
    // The remaining simple 3-gon is the last triangle.
    int first = 0;
    while (!alive[first]) ++first;
    Face last = {first, next[first], next[next[first]]};
    if (orientation(polygon[last[0]], polygon[last[1]], polygon[last[2]]) <= 0)
        fail(ErrorCode::Internal, "final ear is not positively oriented");
    out.push_back(last);
    return out;
}

namespace {

// true iff q lies on the closed boundary of the (convex, CCW) hull polygon.
bool on_hull_boundary(const Vec2& q, const std::vector<Vec2>& hull) {
    std::size_t h = hull.size();
    for (std::size_t i = 0; i < h; ++i) {
        const Vec2& a = hull[i];
        const Vec2& b = hull[(i + 1) % h];
        if (orientation(a, b, q) == 0 && collinear_point_on_segment(a, b, q)) return true;
    }
    return false;
}

} // namespace

ConvexExtension build_extension(const PlanarDrawing& target, const EdgeWeights& weights,
                                const ExtensionOptions& options) {
    const Triangulation& tri = *target.tri;
    if (!weights.tri()->structurally_equal(tri))
        fail(ErrorCode::MeshMismatch, "weights built for a different triangulation");

    // Precondition 1: target is discrete-harmonic for the given weights.
    double diam = target.boundary_diameter();
    {
        auto residual = laplace_residual(target, weights);
        for (int v : tri.interior_vertices()) {
            double bound = options.solve.tol_abs_factor * diam +
                           options.solve.tol_rel * weights.row_sum(v) * diam;
            if (norm(residual[v]) > bound)
                fail(ErrorCode::NotHarmonic,
                     "target is not discrete-harmonic for the given weights (vertex " +
                         std::to_string(v) + ")");
        }
    }

    // Precondition 2: cone condition at every reflex boundary vertex.
    ConeReport report = cone_condition_report(target, weights);
    if (!report.overall)
        fail(ErrorCode::ConeConditionViolated,
             "cone condition fails at a reflex boundary vertex (min margin " +
                 std::to_string(report.min_reflex_margin) + ")");

    auto boundary_points = target.boundary_points();
    const auto& cycle = tri.boundary_cycle();
    std::size_t b = cycle.size();

    ConvexExtension ext;
    ext.hull = convex_hull(boundary_points);

    std::vector<char> on_hull(b, 0);
    bool all_on_hull = true;
    for (std::size_t k = 0; k < b; ++k) {
        on_hull[k] = on_hull_boundary(boundary_points[k], ext.hull.vertices()) ? 1 : 0;
        all_on_hull = all_on_hull && on_hull[k];
    }

    if (all_on_hull) {
        ext.trivial = true;
        ext.extended_tri = target.tri;
        ext.extended_weights = weights;
        return ext;
    }

    // Pockets: maximal boundary chains strictly inside the hull, delimited by
    // on-hull vertices; each closes with a segment along the hull edge.
    for (std::size_t k = 0; k < b; ++k) {
        if (on_hull[k] || !on_hull[(k + b - 1) % b]) continue;
        std::vector<int> chain_positions;
        chain_positions.push_back(static_cast<int>((k + b - 1) % b));
        std::size_t j = k;
        while (!on_hull[j]) {
            chain_positions.push_back(static_cast<int>(j));
            j = (j + 1) % b;
        }
        chain_positions.push_back(static_cast<int>(j));
        // The chain runs CCW along the target polygon; the pocket lies on its
        // right, so the reversed chain is the CCW pocket polygon.
        std::vector<int> pocket;
        pocket.reserve(chain_positions.size());
        for (auto it = chain_positions.rbegin(); it != chain_positions.rend(); ++it)
            pocket.push_back(cycle[*it]);
        ext.pockets.push_back(std::move(pocket));
    }

    // Ear-clip each pocket in the target coordinates.
    for (const auto& pocket : ext.pockets) {
        std::vector<Vec2> local;
        local.reserve(pocket.size());
        for (int v : pocket) local.push_back(target.coords[v]);
        for (const Face& f : ear_clip(local, options.highest_index_ears))
            ext.delta_faces.push_back({pocket[f[0]], pocket[f[1]], pocket[f[2]]});
    }

    // T' = T union T^Delta; full disk validation doubles as a check of the
    // construction (single boundary, Euler 1, 3-connected).
    std::vector<Face> extended_faces = tri.faces();
    extended_faces.insert(extended_faces.end(), ext.delta_faces.begin(), ext.delta_faces.end());
    TriangulationOptions topts;
    topts.allow_unreferenced = true;
    ext.extended_tri = std::make_shared<Triangulation>(
        build_triangulation(std::move(extended_faces), tri.vertex_count(), topts));
    ext.extended_tri = align_to_coords(ext.extended_tri, target.coords);
    const Triangulation& xtri = *ext.extended_tri;

    // Delta adjacency (per-vertex neighbor sets within T^Delta).
    std::vector<std::set<int>> delta_adj(static_cast<std::size_t>(tri.vertex_count()));
    for (const Face& f : ext.delta_faces)
        for (int e = 0; e < 3; ++e) {
            delta_adj[f[e]].insert(f[(e + 1) % 3]);
            delta_adj[f[e]].insert(f[(e + 2) % 3]);
        }

    auto original_force = laplace_residual(target, weights);
    auto classes = classify_boundary_vertices(boundary_points);

    std::vector<double> flat(xtri.directed_edge_count(), 0.0);
    auto fill_row = [&](int vi, auto weight_of) {
        std::size_t offset = xtri.adjacency_offsets()[vi];
        for (int j : xtri.neighbors(vi)) flat[offset++] = weight_of(j);
    };

    for (int vi = 0; vi < tri.vertex_count(); ++vi) {
        if (!xtri.is_referenced(vi)) continue;
        int pos = tri.boundary_position(vi);
        if (pos < 0) {
            if (!tri.is_referenced(vi))
                fail(ErrorCode::Internal, "pocket face references a vertex outside the boundary");
            // Case 2: interior to T, neighborhoods coincide; copy the weights.
            fill_row(vi, [&](int j) { return weights.at(vi, j); });
            continue;
        }
        if (on_hull[static_cast<std::size_t>(pos)]) {
            // Case 1: boundary vertex of T'; its row is unconstrained. Keep
            // the original weight on T edges, unit weight on new ones.
            fill_row(vi, [&](int j) { return tri.has_edge(vi, j) ? weights.at(vi, j) : 1.0; });
            continue;
        }
        if (classes[pos] == TurnClass::StrictlyConvex) {
            // Case 3a: strictly convex target vertex, now interior to T'.
            // Its T' neighbors positively span the plane; zero out the row.
            std::vector<Vec2> neighbor_points;
            for (int j : xtri.neighbors(vi)) neighbor_points.push_back(target.coords[j]);
            PositiveCombination combo =
                solve_positive_combination_at(neighbor_points, target.coords[vi], Vec2{0.0, 0.0});
            if (!combo.feasible)
                fail(ErrorCode::ExtensionInfeasible,
                     "no positive zero-sum weights at strictly convex vertex " +
                         std::to_string(vi));
            double wmax = 0.0;
            for (double a : combo.coefficients) wmax = std::max(wmax, a);
            std::size_t offset = xtri.adjacency_offsets()[vi];
            for (std::size_t e = 0; e < neighbor_points.size(); ++e)
                flat[offset + e] = combo.coefficients[e] / wmax;
            continue;
        }
        // Case 3b: straight or reflex target vertex. The pocket-side cone is
        // opposite to the boundary cone, so -force is reachable within
        // T^Delta; merge with the original weights by summing shared edges.
        std::vector<int> dnbrs(delta_adj[vi].begin(), delta_adj[vi].end());
        if (dnbrs.empty())
            fail(ErrorCode::ExtensionInfeasible,
                 "reflex vertex " + std::to_string(vi) + " has no pocket neighbors");
        std::vector<Vec2> neighbor_points;
        neighbor_points.reserve(dnbrs.size());
        for (int j : dnbrs) neighbor_points.push_back(target.coords[j]);
        PositiveCombination combo = solve_positive_combination_at(
            neighbor_points, target.coords[vi], -original_force[vi]);
        if (!combo.feasible)
            fail(ErrorCode::ExtensionInfeasible,
                 "pocket cone cannot balance the boundary force at vertex " + std::to_string(vi));
        std::vector<double> delta_w(static_cast<std::size_t>(tri.vertex_count()), 0.0);
        for (std::size_t e = 0; e < dnbrs.size(); ++e) delta_w[dnbrs[e]] = combo.coefficients[e];
        // The merged row zeroes the Laplacian at vi, which is positively
        // homogeneous, so normalize: razor-thin pocket cones (a reflex
        // vertex that is straight up to rounding) can need enormous delta
        // weights.
        double wmax = 0.0;
        for (int j : xtri.neighbors(vi)) {
            double w = delta_w[j] + (tri.has_edge(vi, j) ? weights.at(vi, j) : 0.0);
            wmax = std::max(wmax, w);
        }
        fill_row(vi, [&](int j) {
            double w = 0.0;
            if (tri.has_edge(vi, j)) w += weights.at(vi, j);
            w += delta_w[j];
            return w / wmax;
        });
    }

    ext.extended_weights = EdgeWeights::from_flat(ext.extended_tri, std::move(flat));

    // Postcondition: the same coordinates are discrete-harmonic in T'.
    {
        PlanarDrawing as_extended = PlanarDrawing::make(ext.extended_tri, target.coords);
        auto residual = laplace_residual(as_extended, ext.extended_weights);
        for (int v : xtri.interior_vertices()) {
            double bound = 1e-9 * std::max(1.0, diam) *
                           std::max(1.0, ext.extended_weights.row_sum(v));
            if (norm(residual[v]) > bound)
                fail(ErrorCode::ExtensionInfeasible,
                     "extended weights fail to zero the interior residual at vertex " +
                         std::to_string(v));
        }
    }
    return ext;
}

PlanarDrawing solve_extension_embedding(const ConvexExtension& ext, const PlanarDrawing& target,
                                        const SolveOptions& options) {
    const Triangulation& xtri = *ext.extended_tri;
    std::vector<Vec2> boundary;
    boundary.reserve(xtri.boundary_cycle().size());
    for (int v : xtri.boundary_cycle()) boundary.push_back(target.coords[v]);
    return harmonic_embed(ext.extended_tri, ext.extended_weights, boundary, options);
}

} // namespace conetutte

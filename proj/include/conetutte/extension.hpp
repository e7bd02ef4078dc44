#pragma once

#include "conetutte/mesh.hpp"
#include "conetutte/solver.hpp"
#include "conetutte/weights.hpp"

#include <memory>
#include <vector>

namespace conetutte {

// Strict convex hull (CCW, collinear points dropped), Andrew monotone chain
// with exact orientation tests.
TargetPolygon convex_hull(const std::vector<Vec2>& points);

// Triangulates a simple CCW polygon by ear clipping: exactly n-2 triangles
// over the original vertices (no Steiner points), pairwise interior-disjoint,
// covering the polygon. Returned triples index into the input sequence and
// are CCW. Deterministic: the valid ear with the smallest index is clipped
// first (largest when highest_index_first).
std::vector<Face> ear_clip(const std::vector<Vec2>& polygon, bool highest_index_first = false);

struct ExtensionOptions {
    bool highest_index_ears = false;
    SolveOptions solve;
};

// Result of completing a discrete-harmonic drawing over a non-convex polygon
// to its convex hull: pocket triangulations T^Delta, the extended
// triangulation T' = T union T^Delta, and positive weights w' making the same
// coordinates discrete-harmonic in T' with the hull as boundary.
struct ConvexExtension {
    TargetPolygon hull;                    // P', strict hull of the target polygon
    std::vector<std::vector<int>> pockets; // CCW pocket polygons as mesh vertex ids
    std::vector<Face> delta_faces;         // T^Delta faces (mesh vertex ids)
    std::shared_ptr<const Triangulation> extended_tri; // T'
    EdgeWeights extended_weights;                      // w'
    bool trivial = false; // convex target: T' = T, w' = w, no pockets
};

// The executable convex-completion construction. Preconditions (checked):
// the target drawing is discrete-harmonic for the given weights, and the
// cone condition holds at every reflex boundary vertex.
ConvexExtension build_extension(const PlanarDrawing& target, const EdgeWeights& weights,
                                const ExtensionOptions& options = {});

// Solves the hull Dirichlet problem on (T', w') with the boundary pinned to
// the target's hull vertices; a correct extension reproduces the target
// coordinates at every referenced vertex.
PlanarDrawing solve_extension_embedding(const ConvexExtension& ext, const PlanarDrawing& target,
                                        const SolveOptions& options = {});

} // namespace conetutte

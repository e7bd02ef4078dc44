#pragma once

#include "conetutte/certify.hpp"
#include "conetutte/mesh.hpp"
#include "conetutte/rng.hpp"
#include "conetutte/solver.hpp"
#include "conetutte/weights.hpp"

#include <memory>
#include <vector>

namespace conetutte::testgen {

// Strictly convex polygon with k vertices: sorted angles on a random ellipse.
TargetPolygon random_convex_polygon(Rng& rng, int k);

// Non-convex families. Extra vertices beyond the base shape become straight
// subdivision points along the edges.
TargetPolygon l_polygon(int k, double notch = 0.5);
TargetPolygon u_polygon(int k, double notch = 0.6);
TargetPolygon star_notch_polygon(int k, double inner_radius = 0.45);
// Picks one of the families, matching the requested vertex count.
TargetPolygon random_nonconvex_polygon(Rng& rng, int k);

// A triangulation of the polygon itself: boundary cycle = polygon vertices,
// `interior` extra vertices inserted by barycentric face splits, mixed by
// geometrically valid edge flips. The returned drawing is certified.
struct MeshedPolygon {
    std::shared_ptr<const Triangulation> tri;
    PlanarDrawing drawing;
};
MeshedPolygon mesh_polygon(Rng& rng, const TargetPolygon& polygon, int interior);

// Random 3-connected disk triangulation with the given boundary length and
// interior vertex count, plus a certified source drawing (a Tutte embedding
// into a regular polygon with uniform weights).
struct DiskInstance {
    std::shared_ptr<const Triangulation> tri;
    PlanarDrawing source;
};
DiskInstance random_disk_instance(Rng& rng, int boundary, int interior);

} // namespace conetutte::testgen

#pragma once

#include "conetutte/mesh.hpp"
#include "conetutte/weights.hpp"

#include <memory>
#include <vector>

namespace conetutte {

struct SolveOptions {
    // Interior residual contract: ||r_i|| <= tol_abs_factor * diam(P)
    //                                      + tol_rel * row_sum(i) * diam(P).
    double tol_abs_factor = 1e-12;
    double tol_rel = 1e-10;
};

// Solves the discrete Dirichlet problem: interior vertices satisfy
// sum_j w_ij (y_j - y_i) = 0, boundary vertices are pinned to the given
// points (listed in boundary-cycle order, which must trace a simple CCW
// polygon). Boundary coordinates of the result are bit-equal to the input.
// The weight matrix may be asymmetric; the solver never assumes symmetry.
PlanarDrawing harmonic_embed(const std::shared_ptr<const Triangulation>& tri,
                             const EdgeWeights& weights,
                             const std::vector<Vec2>& boundary_points,
                             const SolveOptions& options = {});

// Convenience: pin the boundary cycle onto the polygon's vertices, matching
// boundary_cycle()[k] with polygon vertex (start_offset + k) mod size.
PlanarDrawing harmonic_embed_polygon(const std::shared_ptr<const Triangulation>& tri,
                                     const EdgeWeights& weights, const TargetPolygon& polygon,
                                     int start_offset = 0, const SolveOptions& options = {});

// Largest interior residual norm of a drawing under the given weights.
double max_interior_residual(const PlanarDrawing& drawing, const EdgeWeights& weights);

} // namespace conetutte

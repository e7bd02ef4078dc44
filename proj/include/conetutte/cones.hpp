#pragma once

#include "conetutte/mesh.hpp"
#include "conetutte/weights.hpp"

#include <vector>

namespace conetutte {

// Open cone at a boundary point p between neighbors p_prev, p_next (CCW):
// the intersection of the two inward-pointing open half-planes supporting
// the incident edges. z lies inside iff
//   cross(p - p_prev, z) > 0  and  cross(p_next - p, z) > 0,
// which is <z_perp, p - p_prev> > 0 and <z_perp, p_next - p> > 0 with z_perp
// the clockwise quarter turn. The cone is empty ("degenerate") exactly when
// the two edge directions are opposite, and a half-plane when they agree.
struct BoundaryCone {
    Vec2 apex;
    Vec2 dir_prev;     // p - p_prev
    Vec2 dir_next;     // p_next - p
    Vec2 normal_minus; // ccw perp of dir_prev; half-plane is <normal, z> > 0
    Vec2 normal_plus;  // ccw perp of dir_next
    bool degenerate = false;
};

BoundaryCone cone_at_vertex(const Vec2& p_prev, const Vec2& p, const Vec2& p_next);

// Exact strict membership (open cone).
bool cone_contains(const BoundaryCone& cone, const Vec2& z);
// min of the two half-plane inner products, double precision (reporting only).
double cone_margin(const BoundaryCone& cone, const Vec2& z);
// A direction strictly inside a non-degenerate cone (angular bisector of the
// two half-plane normals).
Vec2 cone_interior_direction(const BoundaryCone& cone);

struct ConeVertexReport {
    int vertex = -1;
    TurnClass cls = TurnClass::StrictlyConvex;
    Vec2 force;
    BoundaryCone cone;
    double margin = 0.0;
    bool pass = false; // exact strict membership of the force in the cone
};

struct ConeReport {
    std::vector<ConeVertexReport> vertices; // in boundary-cycle order
    bool overall = true;                    // conjunction over reflex vertices (angle >= pi)
    double min_reflex_margin = 0.0;
};

// Evaluates the cone condition at every boundary vertex of the drawing. The
// force is the discrete Laplacian at the vertex; membership is decided in
// exact arithmetic on the raw inputs (weights and coordinates), never on the
// rounded force vector. Always returns a full report.
ConeReport cone_condition_report(const PlanarDrawing& drawing, const EdgeWeights& weights);

// Strictly positive combination solver. Decides exactly whether the target
// lies in {sum_j alpha_j Y_j : alpha_j > 0} (the relative interior of the
// cone generated by the vectors) and constructs coefficients when it does;
// otherwise produces a Farkas certificate c with <c, Y_j> >= 0 for all j and
// <c, target> < 0 (or = 0 in the measure-zero case where the target sits on
// the boundary of the closed cone; certificate_strict distinguishes these).
struct PositiveCombination {
    bool feasible = false;
    std::vector<double> coefficients;
    Vec2 residual;    // sum alpha_j Y_j - target
    Vec2 certificate; // Farkas direction when infeasible; exact components
    bool certificate_strict = false;
    bool floor_met = false; // min alpha >= alpha_min_rel * max alpha
};

PositiveCombination solve_positive_combination(const std::vector<Vec2>& vectors,
                                               const Vec2& target, double alpha_min_rel = 1e-6);

// Same solver for vectors of the form Y_j = points[j] - apex. Feasibility is
// decided exactly on the raw inputs (the rounded differences can sit on the
// wrong side of razor-thin configurations), which is what the mesh lemmas
// are stated for; the returned coefficients are tuned for the rounded
// differences, matching how the discrete Laplacian is evaluated.
PositiveCombination solve_positive_combination_at(const std::vector<Vec2>& points,
                                                  const Vec2& apex, const Vec2& target,
                                                  double alpha_min_rel = 1e-6);

} // namespace conetutte

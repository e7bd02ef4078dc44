#pragma once

#include "conetutte/cones.hpp"
#include "conetutte/mesh.hpp"
#include "conetutte/weights.hpp"

#include <string>
#include <vector>

namespace conetutte {

enum class ViolationKind {
    CrossingEdges,     // edges (a,b) and (c,d) improperly intersect
    FlippedTriangle,   // face index a has negative orientation
    DegenerateTriangle,// face index a has zero area
    BoundaryNotSimple,
    BoundaryOrientation,
};

struct Violation {
    ViolationKind kind;
    int a = -1, b = -1, c = -1, d = -1;
};

std::string violation_to_string(const Violation& v);

// Certificate for "the straight-line drawing is a proper embedding":
// every face strictly positively oriented, the boundary a simple CCW
// polygon, and the exact pairwise oracle finds no improper edge
// intersection. The pairwise oracle is ground truth; the orientation
// certificate must agree with it whenever it claims success.
struct EmbeddingCertificate {
    bool certified = false;
    std::string method = "both"; // orientation certificate + pairwise oracle
    std::vector<Violation> violations;
    bool orientation_certificate = false; // faces positive + boundary simple CCW
    bool pairwise_clean = false;          // oracle found no improper intersection
};

EmbeddingCertificate intersection_free(const PlanarDrawing& drawing);

// Marks the drawing certified iff the certificate passes; returns the verdict.
EmbeddingCertificate certify_and_mark(PlanarDrawing& drawing);

// The piecewise-linear map source -> target is a homeomorphism iff target is
// itself a certified embedding with the same boundary orientation (unique
// embedding of a 3-connected triangulation once the outer face is fixed).
EmbeddingCertificate certify_homeomorphism(const PlanarDrawing& source,
                                           const PlanarDrawing& target);

struct WeightRecovery {
    EdgeWeights weights;
    ConeReport cone_report;
    double max_interior_residual = 0.0;
};

// Produces positive directed-edge weights for which the target drawing is
// discrete-harmonic and the cone condition holds at every reflex boundary
// vertex. Requires certify_homeomorphism(source, target) to pass.
WeightRecovery recover_weights(const PlanarDrawing& source, const PlanarDrawing& target);

struct DetCheck {
    std::vector<int> faces;     // indices of faces with >= 1 boundary vertex
    std::vector<int> signs;     // sign of det Dphi on each such face
    std::vector<double> ratios; // target area / source area
    bool all_positive = false;
};

// Sign of det Dphi on every boundary triangle of the map source -> target
// (the ratio of signed triangle areas). Requires a certified source, equal
// boundary orientation, and nondegenerate source triangles.
DetCheck boundary_det_check(const PlanarDrawing& source, const PlanarDrawing& target);

} // namespace conetutte

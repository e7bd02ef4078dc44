#include "conetutte/solver.hpp"

#include "conetutte/error.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <string>

namespace conetutte {

namespace {

struct InteriorSystem {
    Eigen::SparseMatrix<double> matrix; // row-major assembly of L restricted to interior
    Eigen::MatrixXd rhs;                // n_int x 2
    std::vector<int> interior_index;    // vertex -> row, or -1
};

InteriorSystem assemble(const Triangulation& tri, const EdgeWeights& weights,
                        const std::vector<Vec2>& boundary_points) {
    InteriorSystem sys;
    int n = tri.vertex_count();
    sys.interior_index.assign(static_cast<std::size_t>(n), -1);
    int m = 0;
    for (int v : tri.interior_vertices()) sys.interior_index[v] = m++;

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(m) * 7);
    sys.rhs = Eigen::MatrixXd::Zero(m, 2);

    for (int i : tri.interior_vertices()) {
        int row = sys.interior_index[i];
        double diag = 0.0;
        std::size_t offset = tri.adjacency_offsets()[i];
        for (int j : tri.neighbors(i)) {
            double w = weights.at_offset(offset++);
            diag += w;
            if (sys.interior_index[j] >= 0) {
                triplets.emplace_back(row, sys.interior_index[j], -w);
            } else {
                const Vec2& b = boundary_points[tri.boundary_position(j)];
                sys.rhs(row, 0) += w * b.x;
                sys.rhs(row, 1) += w * b.y;
            }
        }
        triplets.emplace_back(row, row, diag);
    }
    sys.matrix.resize(m, m);
    sys.matrix.setFromTriplets(triplets.begin(), triplets.end());
    sys.matrix.makeCompressed();
    return sys;
}

Eigen::MatrixXd solve_interior(const InteriorSystem& sys) {
    if (sys.matrix.rows() == 0) return Eigen::MatrixXd(0, 2);

    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.analyzePattern(sys.matrix);
    lu.factorize(sys.matrix);
    if (lu.info() == Eigen::Success) {
        Eigen::MatrixXd x = lu.solve(sys.rhs);
        // One pass of iterative refinement keeps the residual comfortably
        // inside the contract even on ill-scaled weights.
        Eigen::MatrixXd r = sys.rhs - sys.matrix * x;
        x += lu.solve(r);
        return x;
    }

    // Positive weights on a connected mesh give a nonsingular M-matrix, so a
    // failed factorization should not happen; fall back to an iterative
    // solver before declaring the system singular.
    Eigen::BiCGSTAB<Eigen::SparseMatrix<double>, Eigen::DiagonalPreconditioner<double>> it;
    it.setTolerance(1e-12);
    it.setMaxIterations(20000);
    it.compute(sys.matrix);
    Eigen::MatrixXd x(sys.matrix.rows(), 2);
    x.col(0) = it.solve(sys.rhs.col(0));
    if (it.info() != Eigen::Success)
        fail(ErrorCode::SingularSystem, "interior system could not be solved");
    x.col(1) = it.solve(sys.rhs.col(1));
    if (it.info() != Eigen::Success)
        fail(ErrorCode::SingularSystem, "interior system could not be solved");
    return x;
}

} // namespace

PlanarDrawing harmonic_embed(const std::shared_ptr<const Triangulation>& tri,
                             const EdgeWeights& weights,
                             const std::vector<Vec2>& boundary_points,
                             const SolveOptions& options) {
    if (!weights.tri()->structurally_equal(*tri))
        fail(ErrorCode::MeshMismatch, "weights built for a different triangulation");
    const auto& cycle = tri->boundary_cycle();
    if (boundary_points.size() != cycle.size())
        fail(ErrorCode::BoundaryMismatch,
             "boundary assignment has " + std::to_string(boundary_points.size()) +
                 " points, cycle has " + std::to_string(cycle.size()));
    for (const Vec2& p : boundary_points)
        if (!is_finite(p)) fail(ErrorCode::NonFinite, "boundary point is not finite");
    if (polygon_signed_area(boundary_points) <= 0.0)
        fail(ErrorCode::BoundaryMismatch, "boundary assignment reverses orientation");
    if (!polygon_is_simple(boundary_points))
        fail(ErrorCode::BoundaryMismatch, "boundary assignment is not a simple polygon");

    InteriorSystem sys = assemble(*tri, weights, boundary_points);
    Eigen::MatrixXd x = solve_interior(sys);

    std::vector<Vec2> coords(static_cast<std::size_t>(tri->vertex_count()));
    for (std::size_t k = 0; k < cycle.size(); ++k) coords[cycle[k]] = boundary_points[k];
    for (int v : tri->interior_vertices()) {
        int row = sys.interior_index[v];
        coords[v] = {x(row, 0), x(row, 1)};
    }
    // Unreferenced vertices keep (0,0); they carry no constraint.

    PlanarDrawing drawing = PlanarDrawing::make(tri, std::move(coords));

    // Postcondition: residual contract at every interior vertex.
    double diam = polygon_diameter(boundary_points);
    auto residual = laplace_residual(drawing, weights);
    for (int v : tri->interior_vertices()) {
        double bound = options.tol_abs_factor * diam + options.tol_rel * weights.row_sum(v) * diam;
        if (norm(residual[v]) > bound)
            fail(ErrorCode::SingularSystem, "interior residual exceeds the solver contract at vertex " +
                                                std::to_string(v));
    }
    return drawing;
}

PlanarDrawing harmonic_embed_polygon(const std::shared_ptr<const Triangulation>& tri,
                                     const EdgeWeights& weights, const TargetPolygon& polygon,
                                     int start_offset, const SolveOptions& options) {
    const auto& cycle = tri->boundary_cycle();
    if (polygon.size() != static_cast<int>(cycle.size()))
        fail(ErrorCode::BoundaryMismatch, "polygon vertex count differs from boundary cycle length");
    std::vector<Vec2> points(cycle.size());
    int k = polygon.size();
    for (std::size_t i = 0; i < cycle.size(); ++i)
        points[i] = polygon.vertices()[static_cast<std::size_t>(
            ((start_offset + static_cast<int>(i)) % k + k) % k)];
    return harmonic_embed(tri, weights, points, options);
}

double max_interior_residual(const PlanarDrawing& drawing, const EdgeWeights& weights) {
    auto residual = laplace_residual(drawing, weights);
    double worst = 0.0;
    for (int v : drawing.tri->interior_vertices()) worst = std::max(worst, norm(residual[v]));
    return worst;
}

} // namespace conetutte

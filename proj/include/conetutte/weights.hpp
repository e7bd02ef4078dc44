#pragma once

#include "conetutte/mesh.hpp"

#include <cstdint>
#include <memory>
#include <tuple>
#include <vector>

namespace conetutte {

// Strictly positive weights on the directed edges of a triangulation.
// Symmetry w_ij == w_ji is NOT assumed anywhere. Values are stored flat in
// the canonical directed-edge order (source ascending, neighbor ascending).
class EdgeWeights {
  public:
    static EdgeWeights uniform(std::shared_ptr<const Triangulation> tri);
    static EdgeWeights random_positive(std::shared_ptr<const Triangulation> tri,
                                       std::uint64_t seed, double lo, double hi);
    static EdgeWeights from_flat(std::shared_ptr<const Triangulation> tri,
                                 std::vector<double> values);
    static EdgeWeights from_edge_list(std::shared_ptr<const Triangulation> tri,
                                      const std::vector<std::tuple<int, int, double>>& entries);

    double at(int i, int j) const { return values_[tri_->directed_edge_offset(i, j)]; }
    double at_offset(std::size_t offset) const { return values_[offset]; }
    // Sum of outgoing weights of vertex i.
    double row_sum(int i) const;
    const std::vector<double>& flat() const { return values_; }
    const std::shared_ptr<const Triangulation>& tri() const { return tri_; }

    std::vector<std::tuple<int, int, double>> edge_list() const;

  private:
    std::shared_ptr<const Triangulation> tri_;
    std::vector<double> values_;
};

// Discrete Laplace operator applied to a drawing: r_i = sum_j w_ij (y_j - y_i)
// at every vertex. At interior vertices of a discrete-harmonic embedding this
// vanishes; at boundary vertices it is the force held by the pinned boundary.
std::vector<Vec2> laplace_residual(const PlanarDrawing& drawing, const EdgeWeights& weights);

} // namespace conetutte

#include "conetutte/weights.hpp"

#include "conetutte/error.hpp"
#include "conetutte/rng.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace conetutte {

namespace {

void check_positive_finite(double w, int i, int j) {
    if (!std::isfinite(w) || w <= 0.0)
        fail(ErrorCode::NonPositiveWeight, "weight for edge (" + std::to_string(i) + "," +
                                               std::to_string(j) + ") must be finite and > 0, got " +
                                               std::to_string(w));
}

} // namespace

EdgeWeights EdgeWeights::uniform(std::shared_ptr<const Triangulation> tri) {
    EdgeWeights w;
    w.values_.assign(tri->directed_edge_count(), 1.0);
    w.tri_ = std::move(tri);
    return w;
}

EdgeWeights EdgeWeights::random_positive(std::shared_ptr<const Triangulation> tri,
                                         std::uint64_t seed, double lo, double hi) {
    if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi))
        fail(ErrorCode::NonPositiveRange,
             "random_positive needs 0 < lo <= hi, got [" + std::to_string(lo) + ", " +
                 std::to_string(hi) + "]");
    EdgeWeights w;
    w.values_.resize(tri->directed_edge_count());
    Rng rng(seed);
    // Canonical directed-edge order makes the stream reproducible.
    std::size_t offset = 0;
    for (int i = 0; i < tri->vertex_count(); ++i)
        for (std::size_t k = 0; k < tri->neighbors(i).size(); ++k) w.values_[offset++] = rng.uniform(lo, hi);
    w.tri_ = std::move(tri);
    return w;
}

EdgeWeights EdgeWeights::from_flat(std::shared_ptr<const Triangulation> tri,
                                   std::vector<double> values) {
    if (values.size() != tri->directed_edge_count())
        fail(ErrorCode::MeshMismatch, "weight vector length does not match directed edge count");
    std::size_t offset = 0;
    for (int i = 0; i < tri->vertex_count(); ++i)
        for (int j : tri->neighbors(i)) check_positive_finite(values[offset++], i, j);
    EdgeWeights w;
    w.tri_ = std::move(tri);
    w.values_ = std::move(values);
    return w;
}

EdgeWeights EdgeWeights::from_edge_list(std::shared_ptr<const Triangulation> tri,
                                        const std::vector<std::tuple<int, int, double>>& entries) {
    std::vector<double> values(tri->directed_edge_count(),
                               std::numeric_limits<double>::quiet_NaN());
    for (const auto& [i, j, w] : entries) {
        if (i < 0 || i >= tri->vertex_count() || !tri->has_edge(i, j))
            fail(ErrorCode::MeshMismatch, "weight entry for absent edge (" + std::to_string(i) +
                                              "," + std::to_string(j) + ")");
        values[tri->directed_edge_offset(i, j)] = w;
    }
    for (double v : values)
        if (std::isnan(v))
            fail(ErrorCode::MeshMismatch, "weight list does not cover every directed edge");
    return from_flat(std::move(tri), std::move(values));
}

double EdgeWeights::row_sum(int i) const {
    double total = 0.0;
    std::size_t offset = tri_->adjacency_offsets()[i];
    for (std::size_t k = 0; k < tri_->neighbors(i).size(); ++k) total += values_[offset + k];
    return total;
}

std::vector<std::tuple<int, int, double>> EdgeWeights::edge_list() const {
    std::vector<std::tuple<int, int, double>> out;
    out.reserve(values_.size());
    std::size_t offset = 0;
    for (int i = 0; i < tri_->vertex_count(); ++i)
        for (int j : tri_->neighbors(i)) out.emplace_back(i, j, values_[offset++]);
    return out;
}

std::vector<Vec2> laplace_residual(const PlanarDrawing& drawing, const EdgeWeights& weights) {
    const Triangulation& tri = *drawing.tri;
    if (!weights.tri()->structurally_equal(tri))
        fail(ErrorCode::MeshMismatch, "drawing and weights use different triangulations");
    std::vector<Vec2> out(static_cast<std::size_t>(tri.vertex_count()));
    std::size_t offset = 0;
    for (int i = 0; i < tri.vertex_count(); ++i) {
        Vec2 r{0.0, 0.0};
        const Vec2& yi = drawing.coords[i];
        for (int j : tri.neighbors(i)) {
            double w = weights.at_offset(offset++);
            r = r + w * (drawing.coords[j] - yi);
        }
        out[i] = r;
    }
    return out;
}

} // namespace conetutte

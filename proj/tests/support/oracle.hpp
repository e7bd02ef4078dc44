#pragma once

#include "conetutte/mesh.hpp"
#include "conetutte/weights.hpp"

#include <vector>

namespace conetutte::testgen {

// Independent oracle: solves the full interior harmonic system by dense
// Gaussian elimination with partial pivoting. Shares nothing with the
// library solver path.
inline std::vector<Vec2> dense_harmonic_oracle(const Triangulation& tri,
                                               const EdgeWeights& weights,
                                               const std::vector<Vec2>& boundary_points) {
    const auto& cycle = tri.boundary_cycle();
    std::vector<int> index(static_cast<std::size_t>(tri.vertex_count()), -1);
    int m = 0;
    for (int v : tri.interior_vertices()) index[v] = m++;

    // Two right-hand sides (x and y), augmented columns m and m+1.
    std::vector<std::vector<double>> a(static_cast<std::size_t>(m),
                                       std::vector<double>(static_cast<std::size_t>(m) + 2, 0.0));
    for (int vi : tri.interior_vertices()) {
        int r = index[vi];
        double diag = 0.0;
        for (int j : tri.neighbors(vi)) {
            double w = weights.at(vi, j);
            diag += w;
            if (index[j] >= 0) {
                a[r][index[j]] -= w;
            } else {
                const Vec2& b = boundary_points[tri.boundary_position(j)];
                a[r][m] += w * b.x;
                a[r][m + 1] += w * b.y;
            }
        }
        a[r][r] += diag;
    }

    for (int col = 0; col < m; ++col) {
        int pivot = col;
        for (int r = col + 1; r < m; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        std::swap(a[col], a[pivot]);
        for (int r = col + 1; r < m; ++r) {
            double factor = a[r][col] / a[col][col];
            for (int c = col; c < m + 2; ++c) a[r][c] -= factor * a[col][c];
        }
    }
    std::vector<Vec2> solution(static_cast<std::size_t>(m));
    for (int r = m - 1; r >= 0; --r) {
        double sx = a[r][m], sy = a[r][m + 1];
        for (int c = r + 1; c < m; ++c) {
            sx -= a[r][c] * solution[c].x;
            sy -= a[r][c] * solution[c].y;
        }
        solution[r] = {sx / a[r][r], sy / a[r][r]};
    }

    std::vector<Vec2> coords(static_cast<std::size_t>(tri.vertex_count()));
    for (std::size_t k = 0; k < cycle.size(); ++k) coords[cycle[k]] = boundary_points[k];
    for (int v : tri.interior_vertices()) coords[v] = solution[index[v]];
    return coords;
}

} // namespace conetutte::testgen

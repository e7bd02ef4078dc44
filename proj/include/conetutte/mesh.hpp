#pragma once

#include "conetutte/geom.hpp"

#include <array>
#include <memory>
#include <vector>

namespace conetutte {

using Face = std::array<int, 3>;

// Turn classification of a boundary vertex of a CCW loop. A vertex is called
// reflex when its internal angle is at least pi, so Straight counts as both
// convex and reflex.
enum class TurnClass { StrictlyConvex, Straight, StrictlyReflex };

inline bool is_reflex(TurnClass c) { return c != TurnClass::StrictlyConvex; }
inline bool is_convex(TurnClass c) { return c != TurnClass::StrictlyReflex; }
const char* turn_class_name(TurnClass c);

struct TriangulationOptions {
    bool allow_unreferenced = false;
    bool check_three_connected = true;
    // When set, 3-connectedness uses the brute-force removal of every vertex
    // pair instead of the per-vertex articulation sweep. Both decide the same
    // predicate; the sweep is the default because it is near-linear.
    bool exhaustive_pair_scan = false;
};

// Combinatorial triangulation of a disk: faces over vertex indices 0..n-1,
// validated to be an edge- and vertex-manifold complex with a single simple
// boundary cycle, Euler characteristic 1 and (optionally) 3-connected.
// Faces are re-oriented consistently so that every interior undirected edge
// appears once in each direction; the boundary cycle follows the directed
// boundary edges of that orientation.
class Triangulation {
  public:
    int vertex_count() const { return n_; }
    const std::vector<Face>& faces() const { return faces_; }
    const std::vector<int>& neighbors(int v) const { return adjacency_[v]; }
    const std::vector<std::vector<int>>& adjacency() const { return adjacency_; }
    const std::vector<int>& boundary_cycle() const { return boundary_cycle_; }
    bool is_boundary_vertex(int v) const { return boundary_position_[v] >= 0; }
    // Index of v in boundary_cycle(), or -1.
    int boundary_position(int v) const { return boundary_position_[v]; }
    const std::vector<int>& interior_vertices() const { return interior_; }
    bool is_referenced(int v) const { return !adjacency_[v].empty(); }
    std::size_t undirected_edge_count() const { return undirected_edge_count_; }
    std::size_t directed_edge_count() const { return 2 * undirected_edge_count_; }
    bool has_edge(int i, int j) const;
    // Undirected edges (i < j), ordered lexicographically.
    std::vector<std::pair<int, int>> undirected_edges() const;
    // Flattened offset of directed edge (i -> adjacency_[i][k]) in the
    // canonical directed-edge enumeration (i ascending, neighbors ascending).
    std::size_t directed_edge_offset(int i, int j) const;
    const std::vector<std::size_t>& adjacency_offsets() const { return adjacency_offsets_; }

    bool structurally_equal(const Triangulation& other) const;

    // Same complex with every face orientation reversed (boundary cycle runs
    // the other way). Adjacency and derived sets are unchanged.
    Triangulation flipped() const;

    friend Triangulation build_triangulation(std::vector<Face> faces, int vertex_count,
                                             const TriangulationOptions& options);

  private:
    int n_ = 0;
    std::vector<Face> faces_;
    std::vector<std::vector<int>> adjacency_; // sorted neighbor lists
    std::vector<std::size_t> adjacency_offsets_;
    std::vector<int> boundary_cycle_;
    std::vector<int> boundary_position_;
    std::vector<int> interior_;
    std::size_t undirected_edge_count_ = 0;
};

Triangulation build_triangulation(std::vector<Face> faces, int vertex_count,
                                  const TriangulationOptions& options = {});

// Returns a separating pair {u, v} if one exists, std::nullopt-style via the
// boolean. Exposed for testing the equivalence of the two scan strategies.
bool find_separating_pair(const std::vector<std::vector<int>>& adjacency, bool exhaustive,
                          std::pair<int, int>* pair_out);

// Flips the canonical face orientation if needed so that the boundary cycle
// traverses the given coordinates counter-clockwise.
std::shared_ptr<const Triangulation> align_to_coords(std::shared_ptr<const Triangulation> tri,
                                                     const std::vector<Vec2>& coords);

// Per-vertex turn classification of a closed CCW loop of points.
std::vector<TurnClass> classify_boundary_vertices(const std::vector<Vec2>& loop);

// Simple CCW polygon with derived per-vertex classification.
class TargetPolygon {
  public:
    static TargetPolygon from_points(std::vector<Vec2> points);

    const std::vector<Vec2>& vertices() const { return vertices_; }
    const std::vector<TurnClass>& turn_classes() const { return classes_; }
    bool vertex_is_reflex(int i) const { return is_reflex(classes_[i]); }
    bool is_convex() const;
    double diameter() const { return polygon_diameter(vertices_); }
    int size() const { return static_cast<int>(vertices_.size()); }

  private:
    std::vector<Vec2> vertices_;
    std::vector<TurnClass> classes_;
};

// Straight-line drawing of a triangulation: one point per vertex. Finiteness
// and distinctness of referenced vertices are validated at construction. The
// certified_embedding flag is only ever set from a certifier verdict.
struct PlanarDrawing {
    std::shared_ptr<const Triangulation> tri;
    std::vector<Vec2> coords;
    bool certified_embedding = false;

    static PlanarDrawing make(std::shared_ptr<const Triangulation> tri, std::vector<Vec2> coords);

    std::vector<Vec2> boundary_points() const;
    const Vec2& at(int v) const { return coords[static_cast<std::size_t>(v)]; }
    double boundary_diameter() const { return polygon_diameter(boundary_points()); }
    double boundary_signed_area() const { return polygon_signed_area(boundary_points()); }
};

} // namespace conetutte

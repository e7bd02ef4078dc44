#include "conetutte/mesh.hpp"

#include "conetutte/error.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <string>

namespace conetutte {

const char* turn_class_name(TurnClass c) {
    switch (c) {
    case TurnClass::StrictlyConvex: return "strictly_convex";
    case TurnClass::Straight: return "straight";
    case TurnClass::StrictlyReflex: return "strictly_reflex";
    }
    return "?";
}

bool Triangulation::has_edge(int i, int j) const {
    const auto& nb = adjacency_[i];
    return std::binary_search(nb.begin(), nb.end(), j);
}

std::vector<std::pair<int, int>> Triangulation::undirected_edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(undirected_edge_count_);
    for (int i = 0; i < n_; ++i)
        for (int j : adjacency_[i])
            if (i < j) out.emplace_back(i, j);
    return out;
}

std::size_t Triangulation::directed_edge_offset(int i, int j) const {
    const auto& nb = adjacency_[i];
    auto it = std::lower_bound(nb.begin(), nb.end(), j);
    if (it == nb.end() || *it != j)
        fail(ErrorCode::Internal, "directed edge (" + std::to_string(i) + "," + std::to_string(j) +
                                      ") not present");
    return adjacency_offsets_[i] + static_cast<std::size_t>(it - nb.begin());
}

bool Triangulation::structurally_equal(const Triangulation& other) const {
    return n_ == other.n_ && faces_ == other.faces_;
}

namespace {

std::uint64_t edge_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

// Directed edges of an oriented face.
std::array<std::pair<int, int>, 3> face_dir_edges(const Face& f) {
    return {{{f[0], f[1]}, {f[1], f[2]}, {f[2], f[0]}}};
}

bool connected_after_removal(const std::vector<std::vector<int>>& adj,
                             const std::vector<char>& active, int skip_a, int skip_b) {
    int n = static_cast<int>(adj.size());
    int start = -1;
    int live = 0;
    for (int v = 0; v < n; ++v) {
        if (!active[v] || v == skip_a || v == skip_b) continue;
        ++live;
        if (start < 0) start = v;
    }
    if (live <= 1) return true;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> stack = {start};
    seen[start] = 1;
    int count = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++count;
        for (int w : adj[v]) {
            if (w == skip_a || w == skip_b || !active[w] || seen[w]) continue;
            seen[w] = 1;
            stack.push_back(w);
        }
    }
    return count == live;
}

// Articulation vertices of the subgraph induced by active vertices minus
// `skip`, via iterative Tarjan lowlink. Also reports whether that subgraph is
// connected. Vertices with no incident edges are ignored.
struct SubgraphScan {
    bool connected = true;
    std::vector<int> articulation;
};

SubgraphScan scan_subgraph(const std::vector<std::vector<int>>& adj,
                           const std::vector<char>& active, int skip) {
    int n = static_cast<int>(adj.size());
    SubgraphScan out;
    std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
    std::vector<char> is_art(static_cast<std::size_t>(n), 0);
    int timer = 0;
    int roots_seen = 0;

    struct Frame {
        int v;
        int parent;
        std::size_t next_child = 0;
        int child_count = 0;
    };

    for (int s = 0; s < n; ++s) {
        if (!active[s] || s == skip || disc[s] >= 0) continue;
        ++roots_seen;
        std::vector<Frame> stack;
        stack.push_back({s, -1});
        disc[s] = low[s] = timer++;
        while (!stack.empty()) {
            Frame& fr = stack.back();
            if (fr.next_child < adj[fr.v].size()) {
                int w = adj[fr.v][fr.next_child++];
                if (!active[w] || w == skip) continue;
                if (disc[w] < 0) {
                    disc[w] = low[w] = timer++;
                    stack.push_back({w, fr.v});
                } else if (w != fr.parent) {
                    low[fr.v] = std::min(low[fr.v], disc[w]);
                }
            } else {
                int v = fr.v;
                int parent = fr.parent;
                int children = fr.child_count;
                stack.pop_back();
                if (parent >= 0) {
                    Frame& pf = stack.back();
                    ++pf.child_count;
                    low[parent] = std::min(low[parent], low[v]);
                    if (pf.parent >= 0 && low[v] >= disc[parent]) is_art[parent] = 1;
                } else if (children >= 2) {
                    is_art[v] = 1;
                }
            }
        }
    }
    out.connected = roots_seen <= 1;
    for (int v = 0; v < n; ++v)
        if (is_art[v]) out.articulation.push_back(v);
    return out;
}

} // namespace

bool find_separating_pair(const std::vector<std::vector<int>>& adjacency, bool exhaustive,
                          std::pair<int, int>* pair_out) {
    int n = static_cast<int>(adjacency.size());
    std::vector<char> active(static_cast<std::size_t>(n), 0);
    int referenced = 0;
    for (int v = 0; v < n; ++v) {
        if (!adjacency[v].empty()) {
            active[v] = 1;
            ++referenced;
        }
    }
    if (referenced <= 3) return false;

    if (exhaustive) {
        for (int u = 0; u < n; ++u) {
            if (!active[u]) continue;
            for (int v = u + 1; v < n; ++v) {
                if (!active[v]) continue;
                if (!connected_after_removal(adjacency, active, u, v)) {
                    if (pair_out) *pair_out = {u, v};
                    return true;
                }
            }
        }
        return false;
    }

    for (int u = 0; u < n; ++u) {
        if (!active[u]) continue;
        SubgraphScan scan = scan_subgraph(adjacency, active, u);
        if (!scan.connected) {
            // u alone disconnects; removing any vertex of a largest component
            // still leaves two pieces since referenced >= 4.
            for (int v = 0; v < n; ++v) {
                if (!active[v] || v == u) continue;
                if (!connected_after_removal(adjacency, active, u, v)) {
                    if (pair_out) *pair_out = {u, v};
                    return true;
                }
            }
            fail(ErrorCode::Internal, "articulation scan inconsistency");
        }
        if (!scan.articulation.empty()) {
            if (pair_out) *pair_out = {std::min(u, scan.articulation.front()),
                                       std::max(u, scan.articulation.front())};
            return true;
        }
    }
    return false;
}

Triangulation build_triangulation(std::vector<Face> faces, int vertex_count,
                                  const TriangulationOptions& options) {
    if (vertex_count <= 0) fail(ErrorCode::InvalidFace, "vertex count must be positive");
    if (faces.empty()) fail(ErrorCode::InvalidFace, "no faces");

    for (std::size_t f = 0; f < faces.size(); ++f) {
        const Face& face = faces[f];
        for (int v : face)
            if (v < 0 || v >= vertex_count)
                fail(ErrorCode::InvalidFace, "vertex index out of range in face " + std::to_string(f));
        if (face[0] == face[1] || face[1] == face[2] || face[0] == face[2])
            fail(ErrorCode::InvalidFace, "repeated vertex in face " + std::to_string(f));
    }

    // Duplicate faces (as unordered triples) are invalid input.
    {
        std::vector<std::array<int, 3>> keys(faces.size());
        for (std::size_t f = 0; f < faces.size(); ++f) {
            keys[f] = faces[f];
            std::sort(keys[f].begin(), keys[f].end());
        }
        std::sort(keys.begin(), keys.end());
        if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
            fail(ErrorCode::InvalidFace, "duplicate face");
    }

    // Undirected edge -> incident faces.
    std::map<std::uint64_t, std::vector<int>> edge_faces;
    for (std::size_t f = 0; f < faces.size(); ++f) {
        const Face& face = faces[f];
        for (int k = 0; k < 3; ++k) {
            auto& lst = edge_faces[edge_key(face[k], face[(k + 1) % 3])];
            lst.push_back(static_cast<int>(f));
            if (lst.size() > 2)
                fail(ErrorCode::NonManifoldEdge, "edge (" + std::to_string(face[k]) + "," +
                                                     std::to_string(face[(k + 1) % 3]) +
                                                     ") belongs to more than two faces");
        }
    }

    // Consistent orientation: BFS over the face adjacency, flipping so that a
    // shared undirected edge is traversed in opposite directions by its two
    // faces. Seed face: lowest index, oriented with its sorted triple.
    {
        std::vector<int> state(faces.size(), 0); // 0 unseen, 1 keep, -1 flipped
        std::queue<int> queue;
        Face seed = faces[0];
        std::sort(seed.begin(), seed.end());
        faces[0] = seed;
        state[0] = 1;
        queue.push(0);
        std::size_t visited = 1;
        while (!queue.empty()) {
            int f = queue.front();
            queue.pop();
            for (auto [a, b] : face_dir_edges(faces[f])) {
                for (int g : edge_faces[edge_key(a, b)]) {
                    if (g == f) continue;
                    // Does g traverse (a, b) in the same direction?
                    bool same_dir = false;
                    for (auto [c, d] : face_dir_edges(faces[g]))
                        if (c == a && d == b) same_dir = true;
                    if (state[g] == 0) {
                        if (same_dir) std::swap(faces[g][1], faces[g][2]);
                        state[g] = 1;
                        ++visited;
                        queue.push(g);
                    } else if (same_dir) {
                        fail(ErrorCode::NotDisk, "triangulation is not orientable");
                    }
                }
            }
        }
        if (visited != faces.size())
            fail(ErrorCode::NotDisk, "faces do not form a single connected component");
    }

    // Vertex links must be a single path (boundary vertex) or cycle (interior).
    {
        std::vector<std::vector<std::pair<int, int>>> link(
            static_cast<std::size_t>(vertex_count));
        for (const Face& face : faces) {
            link[face[0]].emplace_back(face[1], face[2]);
            link[face[1]].emplace_back(face[2], face[0]);
            link[face[2]].emplace_back(face[0], face[1]);
        }
        for (int v = 0; v < vertex_count; ++v) {
            const auto& edges = link[v];
            if (edges.empty()) continue;
            std::map<int, int> degree;
            for (auto [a, b] : edges) {
                ++degree[a];
                ++degree[b];
            }
            int odd = 0;
            for (auto [w, d] : degree) {
                if (d > 2)
                    fail(ErrorCode::NonManifoldVertex,
                         "vertex " + std::to_string(v) + " has a non-manifold link");
                if (d == 1) ++odd;
            }
            if (odd != 0 && odd != 2)
                fail(ErrorCode::NonManifoldVertex,
                     "vertex " + std::to_string(v) + " has a non-manifold link");
            // Connectivity of the link: walk from any link vertex.
            std::map<int, std::vector<int>> ladj;
            for (auto [a, b] : edges) {
                ladj[a].push_back(b);
                ladj[b].push_back(a);
            }
            std::vector<int> stack = {ladj.begin()->first};
            std::map<int, char> seen;
            seen[stack[0]] = 1;
            std::size_t cnt = 0;
            while (!stack.empty()) {
                int w = stack.back();
                stack.pop_back();
                ++cnt;
                for (int u : ladj[w])
                    if (!seen[u]) {
                        seen[u] = 1;
                        stack.push_back(u);
                    }
            }
            if (cnt != ladj.size())
                fail(ErrorCode::NonManifoldVertex,
                     "vertex " + std::to_string(v) + " has a disconnected link (pinch point)");
        }
    }

    Triangulation tri;
    tri.n_ = vertex_count;
    tri.faces_ = std::move(faces);

    // Adjacency.
    tri.adjacency_.assign(static_cast<std::size_t>(vertex_count), {});
    for (const auto& [key, flist] : edge_faces) {
        int a = static_cast<int>(key >> 32);
        int b = static_cast<int>(key & 0xffffffffu);
        tri.adjacency_[a].push_back(b);
        tri.adjacency_[b].push_back(a);
    }
    for (auto& nb : tri.adjacency_) std::sort(nb.begin(), nb.end());
    tri.adjacency_offsets_.assign(static_cast<std::size_t>(vertex_count) + 1, 0);
    for (int v = 0; v < vertex_count; ++v)
        tri.adjacency_offsets_[v + 1] = tri.adjacency_offsets_[v] + tri.adjacency_[v].size();
    tri.undirected_edge_count_ = edge_faces.size();

    int referenced = 0;
    for (int v = 0; v < vertex_count; ++v)
        if (!tri.adjacency_[v].empty()) ++referenced;
    if (referenced != vertex_count && !options.allow_unreferenced)
        fail(ErrorCode::UnreferencedVertex, "mesh leaves vertices unreferenced");

    // Boundary: directed boundary edges are those of the unique face of an
    // undirected edge with face count 1.
    {
        std::map<int, int> next_on_boundary;
        std::size_t boundary_edges = 0;
        for (const Face& face : tri.faces_) {
            for (auto [a, b] : face_dir_edges(face)) {
                if (edge_faces[edge_key(a, b)].size() == 1) {
                    ++boundary_edges;
                    if (next_on_boundary.count(a))
                        fail(ErrorCode::NonManifoldVertex,
                             "boundary forks at vertex " + std::to_string(a));
                    next_on_boundary[a] = b;
                }
            }
        }
        if (boundary_edges == 0) fail(ErrorCode::NotDisk, "mesh has no boundary");
        int start = next_on_boundary.begin()->first;
        int v = start;
        do {
            tri.boundary_cycle_.push_back(v);
            v = next_on_boundary.at(v);
        } while (v != start && tri.boundary_cycle_.size() <= boundary_edges);
        if (tri.boundary_cycle_.size() != boundary_edges)
            fail(ErrorCode::MultipleBoundaryLoops, "boundary is not a single cycle");
        // Rotate so the cycle starts at its smallest vertex (determinism).
        auto it = std::min_element(tri.boundary_cycle_.begin(), tri.boundary_cycle_.end());
        std::rotate(tri.boundary_cycle_.begin(), it, tri.boundary_cycle_.end());
    }

    tri.boundary_position_.assign(static_cast<std::size_t>(vertex_count), -1);
    for (std::size_t k = 0; k < tri.boundary_cycle_.size(); ++k)
        tri.boundary_position_[tri.boundary_cycle_[k]] = static_cast<int>(k);
    for (int v = 0; v < vertex_count; ++v)
        if (tri.boundary_position_[v] < 0 && !tri.adjacency_[v].empty()) tri.interior_.push_back(v);

    // Euler characteristic of a disk.
    long long euler = static_cast<long long>(referenced) -
                      static_cast<long long>(tri.undirected_edge_count_) +
                      static_cast<long long>(tri.faces_.size());
    if (euler != 1) fail(ErrorCode::NotDisk, "Euler characteristic is not 1");

    if (options.check_three_connected) {
        std::pair<int, int> pair;
        if (find_separating_pair(tri.adjacency_, options.exhaustive_pair_scan, &pair))
            fail(ErrorCode::NotThreeConnected, "vertices {" + std::to_string(pair.first) + "," +
                                                   std::to_string(pair.second) +
                                                   "} disconnect the mesh");
    }
    return tri;
}

Triangulation Triangulation::flipped() const {
    Triangulation out = *this;
    for (Face& f : out.faces_) std::swap(f[1], f[2]);
    std::reverse(out.boundary_cycle_.begin(), out.boundary_cycle_.end());
    auto it = std::min_element(out.boundary_cycle_.begin(), out.boundary_cycle_.end());
    std::rotate(out.boundary_cycle_.begin(), it, out.boundary_cycle_.end());
    for (std::size_t k = 0; k < out.boundary_cycle_.size(); ++k)
        out.boundary_position_[out.boundary_cycle_[k]] = static_cast<int>(k);
    return out;
}

std::shared_ptr<const Triangulation> align_to_coords(std::shared_ptr<const Triangulation> tri,
                                                     const std::vector<Vec2>& coords) {
    std::vector<Vec2> loop;
    loop.reserve(tri->boundary_cycle().size());
    for (int v : tri->boundary_cycle()) loop.push_back(coords[static_cast<std::size_t>(v)]);
    if (polygon_signed_area(loop) < 0.0)
        return std::make_shared<const Triangulation>(tri->flipped());
    return tri;
}

std::vector<TurnClass> classify_boundary_vertices(const std::vector<Vec2>& loop) {
    std::size_t n = loop.size();
    if (n < 3) fail(ErrorCode::DegenerateBoundary, "loop has fewer than 3 vertices");
    for (std::size_t i = 0; i < n; ++i)
        if (loop[i] == loop[(i + 1) % n])
            fail(ErrorCode::DegenerateBoundary, "repeated point on boundary");
    std::vector<TurnClass> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& prev = loop[(i + n - 1) % n];
        const Vec2& next = loop[(i + 1) % n];
        int turn = orientation(prev, loop[i], next);
        out[i] = turn > 0 ? TurnClass::StrictlyConvex
                          : (turn < 0 ? TurnClass::StrictlyReflex : TurnClass::Straight);
    }
    return out;
}

TargetPolygon TargetPolygon::from_points(std::vector<Vec2> points) {
    if (points.size() < 3) fail(ErrorCode::NotSimple, "polygon needs at least 3 vertices");
    for (const Vec2& p : points)
        if (!is_finite(p)) fail(ErrorCode::NonFinite, "polygon vertex is not finite");
    for (std::size_t i = 0; i < points.size(); ++i)
        if (points[i] == points[(i + 1) % points.size()])
            fail(ErrorCode::NotSimple, "consecutive polygon vertices coincide");
    if (!polygon_is_simple(points)) fail(ErrorCode::NotSimple, "polygon self-intersects");
    if (polygon_signed_area(points) <= 0.0)
        fail(ErrorCode::NotSimple, "polygon must be counter-clockwise");
    TargetPolygon poly;
    poly.classes_ = classify_boundary_vertices(points);
    poly.vertices_ = std::move(points);
    return poly;
}

bool TargetPolygon::is_convex() const {
    for (TurnClass c : classes_)
        if (c == TurnClass::StrictlyReflex) return false;
    return true;
}

PlanarDrawing PlanarDrawing::make(std::shared_ptr<const Triangulation> tri,
                                  std::vector<Vec2> coords) {
    if (!tri) fail(ErrorCode::Internal, "drawing without triangulation");
    if (coords.size() != static_cast<std::size_t>(tri->vertex_count()))
        fail(ErrorCode::MeshMismatch, "coordinate count does not match vertex count");
    for (const Vec2& p : coords)
        if (!is_finite(p)) fail(ErrorCode::NonFinite, "drawing coordinate is not finite");
    // Referenced vertices must map to pairwise distinct points.
    std::vector<int> order;
    for (int v = 0; v < tri->vertex_count(); ++v)
        if (tri->is_referenced(v)) order.push_back(v);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (coords[a].x != coords[b].x) return coords[a].x < coords[b].x;
        return coords[a].y < coords[b].y;
    });
    for (std::size_t k = 1; k < order.size(); ++k)
        if (coords[order[k - 1]] == coords[order[k]])
            fail(ErrorCode::CoincidentPoints, "vertices " + std::to_string(order[k - 1]) + " and " +
                                                  std::to_string(order[k]) +
                                                  " map to the same point");
    PlanarDrawing d;
    d.tri = std::move(tri);
    d.coords = std::move(coords);
    return d;
}

std::vector<Vec2> PlanarDrawing::boundary_points() const {
    std::vector<Vec2> out;
    out.reserve(tri->boundary_cycle().size());
    for (int v : tri->boundary_cycle()) out.push_back(coords[v]);
    return out;
}

} // namespace conetutte

#include "conetutte/geom.hpp"

#include "conetutte/exact.hpp"

#include <algorithm>

namespace conetutte {

int orientation(const Vec2& a, const Vec2& b, const Vec2& c) {
    return orient2d_sign(a.x, a.y, b.x, b.y, c.x, c.y);
}

bool collinear_point_on_segment(const Vec2& a, const Vec2& b, const Vec2& q) {
    return std::min(a.x, b.x) <= q.x && q.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= q.y &&
           q.y <= std::max(a.y, b.y);
}

namespace {

// Closed-segment intersection test (any common point), exact.
bool segments_touch(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    int o1 = orientation(a, b, c);
    int o2 = orientation(a, b, d);
    int o3 = orientation(c, d, a);
    int o4 = orientation(c, d, b);
    if (o1 != o2 && o3 != o4) return true; // includes endpoint-on-segment cases
    if (o1 == 0 && collinear_point_on_segment(a, b, c)) return true;
    if (o2 == 0 && collinear_point_on_segment(a, b, d)) return true;
    if (o3 == 0 && collinear_point_on_segment(c, d, a)) return true;
    if (o4 == 0 && collinear_point_on_segment(c, d, b)) return true;
    return false;
}

} // namespace

bool segments_intersect_improperly(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    int shared = 0;
    Vec2 shared_point;
    auto note = [&](const Vec2& p, const Vec2& q) {
        if (p == q) {
            ++shared;
            shared_point = p;
        }
    };
    note(a, c);
    note(a, d);
    note(b, c);
    note(b, d);

    if (shared >= 2) return true; // duplicated or pinched segment pair
    if (shared == 0) return segments_touch(a, b, c, d);

    // Exactly one shared endpoint: the segments may meet only there. Any
    // other contact is a collinear overlap or a pass-through.
    const Vec2& p = shared_point;
    const Vec2& a2 = (a == p) ? b : a; // free endpoint of [a,b]
    const Vec2& c2 = (c == p) ? d : c; // free endpoint of [c,d]
    if (orientation(p, a2, c2) != 0) return false;
    // Collinear arms: overlap iff they extend to the same side of p.
    return dot_diff_sign(a2.x, a2.y, p.x, p.y, c2.x, c2.y, p.x, p.y) > 0;
}

int point_in_triangle(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c) {
    int o1 = orientation(a, b, p);
    int o2 = orientation(b, c, p);
    int o3 = orientation(c, a, p);
    bool has_pos = o1 > 0 || o2 > 0 || o3 > 0;
    bool has_neg = o1 < 0 || o2 < 0 || o3 < 0;
    if (has_pos && has_neg) return -1;
    if (o1 != 0 && o2 != 0 && o3 != 0) return 1;
    // On some support line; inside the triangle iff on a closed edge.
    if (o1 == 0 && collinear_point_on_segment(a, b, p)) return 0;
    if (o2 == 0 && collinear_point_on_segment(b, c, p)) return 0;
    if (o3 == 0 && collinear_point_on_segment(c, a, p)) return 0;
    return -1;
}

int point_in_polygon(const Vec2& p, const std::vector<Vec2>& polygon) {
    std::size_t n = polygon.size();
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2& a = polygon[j];
        const Vec2& b = polygon[i];
        if (orientation(a, b, p) == 0 && collinear_point_on_segment(a, b, p)) return 0;
        if ((b.y > p.y) != (a.y > p.y)) {
            // Exact crossing-parity step: p is left of edge (a,b)?
            int o = orientation(a, b, p);
            if (a.y < b.y ? o > 0 : o < 0) inside = !inside;
        }
    }
    return inside ? 1 : -1;
}

double polygon_signed_area(const std::vector<Vec2>& polygon) {
    double twice = 0.0;
    std::size_t n = polygon.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) twice += cross(polygon[j], polygon[i]);
    return 0.5 * twice;
}

double polygon_diameter(const std::vector<Vec2>& polygon) {
    double best = 0.0;
    for (std::size_t i = 0; i < polygon.size(); ++i)
        for (std::size_t j = i + 1; j < polygon.size(); ++j)
            best = std::max(best, distance(polygon[i], polygon[j]));
    return best;
}

double polygon_perimeter(const std::vector<Vec2>& polygon) {
    double total = 0.0;
    std::size_t n = polygon.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) total += distance(polygon[j], polygon[i]);
    return total;
}

bool polygon_is_simple(const std::vector<Vec2>& polygon) {
    std::size_t n = polygon.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i) {
        if (polygon[i] == polygon[(i + 1) % n]) return false;
    }
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 a = polygon[i];
        Vec2 b = polygon[(i + 1) % n];
        for (std::size_t j = i + 1; j < n; ++j) {
            Vec2 c = polygon[j];
            Vec2 d = polygon[(j + 1) % n];
            if (segments_intersect_improperly(a, b, c, d)) return false;
        }
    }
    return true;
}

} // namespace conetutte

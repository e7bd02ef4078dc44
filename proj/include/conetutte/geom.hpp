#pragma once

#include <cmath>
#include <vector>

namespace conetutte {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& r) const { return {x + r.x, y + r.y}; }
    Vec2 operator-(const Vec2& r) const { return {x - r.x, y - r.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2 operator-() const { return {-x, -y}; }
    bool operator==(const Vec2& r) const { return x == r.x && y == r.y; }
    bool operator!=(const Vec2& r) const { return !(*this == r); }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }
inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm2(const Vec2& v) { return dot(v, v); }
inline double norm(const Vec2& v) { return std::sqrt(norm2(v)); }
inline double distance(const Vec2& a, const Vec2& b) { return norm(a - b); }
inline bool is_finite(const Vec2& v) { return std::isfinite(v.x) && std::isfinite(v.y); }

// pi/2 clockwise rotation: (x, y) -> (y, -x)
inline Vec2 perp_cw(const Vec2& v) { return {v.y, -v.x}; }
// pi/2 counter-clockwise rotation: (x, y) -> (-y, x)
inline Vec2 perp_ccw(const Vec2& v) { return {-v.y, v.x}; }

inline Vec2 normalized(const Vec2& v) {
    double n = norm(v);
    return n > 0.0 ? v / n : Vec2{0.0, 0.0};
}

// Exact sign of the signed area of triangle (a, b, c): +1 for counter-clockwise.
int orientation(const Vec2& a, const Vec2& b, const Vec2& c);

// True if q lies on the closed segment [a, b]; requires orientation(a,b,q) == 0.
bool collinear_point_on_segment(const Vec2& a, const Vec2& b, const Vec2& q);

// Improper intersection of closed segments [a,b] and [c,d]: any common point
// that is not a shared endpoint. Exact. Covers proper crossings, T-junctions,
// collinear overlaps, and duplicated segments.
bool segments_intersect_improperly(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d);

// -1 outside, 0 on the boundary, +1 strictly inside the closed triangle (a,b,c).
// Triangle orientation may be either way; degenerate triangles count as boundary.
int point_in_triangle(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c);

// -1 outside, 0 on the boundary, +1 strictly inside the simple polygon.
int point_in_polygon(const Vec2& p, const std::vector<Vec2>& polygon);

double polygon_signed_area(const std::vector<Vec2>& polygon);
double polygon_diameter(const std::vector<Vec2>& polygon);
double polygon_perimeter(const std::vector<Vec2>& polygon);

// Exact simplicity test: consecutive edges may share only their common vertex,
// non-adjacent edges nothing.
bool polygon_is_simple(const std::vector<Vec2>& polygon);

} // namespace conetutte

#include "conetutte/disk.hpp"

#include "conetutte/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

namespace conetutte {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double theta) {
    while (theta < -kPi) theta += 2.0 * kPi;
    while (theta > kPi) theta -= 2.0 * kPi;
    return theta;
}

double poisson_kernel(double r, double x) {
    return (1.0 - r * r) / (r * r + 1.0 - 2.0 * r * std::cos(x));
}

// d P_r(x) / d r
double poisson_kernel_dr(double r, double x) {
    double c = std::cos(x);
    double denom = r * r + 1.0 - 2.0 * r * c;
    return (-2.0 * r * denom - (1.0 - r * r) * (2.0 * r - 2.0 * c)) / (denom * denom);
}

// d P_r(x) / d x
double poisson_kernel_dx(double r, double x) {
    double denom = r * r + 1.0 - 2.0 * r * std::cos(x);
    return -(1.0 - r * r) * 2.0 * r * std::sin(x) / (denom * denom);
}

} // namespace

Vec2 CurvePiece::eval(double theta) const {
    if (form == Form::Polynomial) {
        double u = theta - theta0;
        double x = 0.0, y = 0.0;
        for (std::size_t k = cx.size(); k-- > 0;) x = x * u + cx[k];
        for (std::size_t k = cy.size(); k-- > 0;) y = y * u + cy[k];
        return {x, y};
    }
    auto series = [&](const std::vector<double>& c) {
        double v = c.empty() ? 0.0 : c[0];
        for (std::size_t k = 1; 2 * k - 1 < c.size(); ++k) {
            v += c[2 * k - 1] * std::cos(static_cast<double>(k) * theta);
            if (2 * k < c.size()) v += c[2 * k] * std::sin(static_cast<double>(k) * theta);
        }
        return v;
    };
    return {series(cx), series(cy)};
}

Vec2 CurvePiece::derivative(double theta) const {
    if (form == Form::Polynomial) {
        double u = theta - theta0;
        auto dpoly = [&](const std::vector<double>& c) {
            double v = 0.0;
            for (std::size_t k = c.size(); k-- > 1;) v = v * u + c[k] * static_cast<double>(k);
            return v;
        };
        return {dpoly(cx), dpoly(cy)};
    }
    auto dseries = [&](const std::vector<double>& c) {
        double v = 0.0;
        for (std::size_t k = 1; 2 * k - 1 < c.size(); ++k) {
            double kk = static_cast<double>(k);
            v += -c[2 * k - 1] * kk * std::sin(kk * theta);
            if (2 * k < c.size()) v += c[2 * k] * kk * std::cos(kk * theta);
        }
        return v;
    };
    return {dseries(cx), dseries(cy)};
}

DiskBoundaryMap DiskBoundaryMap::from_pieces(std::vector<CurvePiece> pieces) {
    if (pieces.empty()) fail(ErrorCode::BadBoundaryMap, "boundary map needs at least one piece");
    std::sort(pieces.begin(), pieces.end(),
              [](const CurvePiece& a, const CurvePiece& b) { return a.theta0 < b.theta0; });
    const double snap = 1e-9;
    if (std::abs(pieces.front().theta0 + kPi) > snap || std::abs(pieces.back().theta1 - kPi) > snap)
        fail(ErrorCode::BadBoundaryMap, "pieces must cover [-pi, pi]");
    pieces.front().theta0 = -kPi;
    pieces.back().theta1 = kPi;
    for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
        if (std::abs(pieces[i].theta1 - pieces[i + 1].theta0) > snap)
            fail(ErrorCode::BadBoundaryMap, "pieces leave a gap in the parameter interval");
        pieces[i + 1].theta0 = pieces[i].theta1;
        if (!(pieces[i].theta1 > pieces[i].theta0))
            fail(ErrorCode::BadBoundaryMap, "piece has an empty parameter interval");
    }

    // Scale for the continuity tolerance.
    double scale = 0.0;
    for (const CurvePiece& p : pieces) {
        scale = std::max(scale, norm(p.eval(p.theta0)));
        scale = std::max(scale, norm(p.eval(p.theta1)));
    }
    scale = std::max(scale, 1.0);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const CurvePiece& a = pieces[i];
        const CurvePiece& b = pieces[(i + 1) % pieces.size()];
        Vec2 pa = a.eval(a.theta1);
        Vec2 pb = b.eval(b.theta0);
        if (i + 1 == pieces.size()) pa = a.eval(kPi), pb = b.eval(-kPi);
        if (distance(pa, pb) > 1e-7 * scale)
            fail(ErrorCode::BadBoundaryMap, "pieces do not concatenate continuously");
        // One-sided derivatives at the junction must not vanish.
        if (norm(a.derivative(a.theta1)) == 0.0 || norm(b.derivative(b.theta0)) == 0.0)
            fail(ErrorCode::BadBoundaryMap, "one-sided derivative vanishes at a junction");
    }
    DiskBoundaryMap map;
    map.pieces_ = std::move(pieces);
    return map;
}

const CurvePiece& DiskBoundaryMap::piece_at(double theta, bool prefer_left) const {
    theta = wrap_angle(theta);
    if (prefer_left && theta <= -kPi) return pieces_.back();
    std::size_t lo = 0, hi = pieces_.size() - 1;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (theta < pieces_[mid].theta1) hi = mid;
        else lo = mid + 1;
    }
    if (prefer_left && lo > 0 && theta == pieces_[lo].theta0) return pieces_[lo - 1];
    return pieces_[lo];
}

Vec2 DiskBoundaryMap::eval(double theta) const { return piece_at(theta, false).eval(wrap_angle(theta)); }

Vec2 DiskBoundaryMap::derivative_plus(double theta) const {
    theta = wrap_angle(theta);
    if (theta == kPi) theta = -kPi;
    const CurvePiece& p = piece_at(theta, false);
    return p.derivative(theta);
}

Vec2 DiskBoundaryMap::derivative_minus(double theta) const {
    theta = wrap_angle(theta);
    if (theta == -kPi) theta = kPi;
    const CurvePiece& p = piece_at(theta, true);
    return p.derivative(theta);
}

std::vector<double> DiskBoundaryMap::junction_angles() const {
    std::vector<double> out;
    if (pieces_.size() == 1) return out; // single smooth piece: no junctions
    for (const CurvePiece& p : pieces_) out.push_back(p.theta0);
    return out;
}

DiskBoundaryMap circle_identity_map() { return circle_power_map(1); }

DiskBoundaryMap circle_power_map(int k) {
    if (k < 1) fail(ErrorCode::BadBoundaryMap, "power map needs k >= 1");
    CurvePiece p;
    p.form = CurvePiece::Form::Trigonometric;
    p.theta0 = -kPi;
    p.theta1 = kPi;
    p.cx.assign(static_cast<std::size_t>(2 * k + 1), 0.0);
    p.cy.assign(static_cast<std::size_t>(2 * k + 1), 0.0);
    p.cx[static_cast<std::size_t>(2 * k - 1)] = 1.0; // cos(k theta)
    p.cy[static_cast<std::size_t>(2 * k)] = 1.0;     // sin(k theta)
    return DiskBoundaryMap::from_pieces({p});
}

DiskBoundaryMap polygon_arclength_map(const TargetPolygon& polygon, int start_vertex) {
    const auto& v = polygon.vertices();
    int n = polygon.size();
    start_vertex = ((start_vertex % n) + n) % n;
    double total = polygon_perimeter(v);
    std::vector<CurvePiece> pieces;
    double cum = 0.0;
    for (int e = 0; e < n; ++e) {
        int a = (start_vertex + e) % n;
        int b = (start_vertex + e + 1) % n;
        double len = distance(v[a], v[b]);
        double t0 = -kPi + 2.0 * kPi * cum / total;
        cum += len;
        double t1 = (e + 1 == n) ? kPi : -kPi + 2.0 * kPi * cum / total;
        CurvePiece p;
        p.form = CurvePiece::Form::Polynomial;
        p.theta0 = t0;
        p.theta1 = t1;
        Vec2 dir = (v[b] - v[a]) / (t1 - t0);
        p.cx = {v[a].x, dir.x};
        p.cy = {v[a].y, dir.y};
        pieces.push_back(std::move(p));
    }
    return DiskBoundaryMap::from_pieces(std::move(pieces));
}

Vec2 poisson_extend(const DiskBoundaryMap& gamma, double nu, double theta,
                    const PoissonOptions& options) {
    if (!(nu > 0.0) || nu > 1.0)
        fail(ErrorCode::BoundaryPoint,
             "poisson_extend needs 0 < nu <= 1; evaluate gamma exactly at nu = 0");
    PoissonEvaluator eval(gamma, options);
    return eval.value(nu, theta);
}

PoissonEvaluator::PoissonEvaluator(DiskBoundaryMap gamma, const PoissonOptions& options)
    : gamma_(std::move(gamma)), options_(options) {}

const PoissonEvaluator::Nodes& PoissonEvaluator::nodes_for(double nu) const {
    double safe_nu = std::max(nu, 1e-12);
    long long wanted = static_cast<long long>(
        std::ceil(static_cast<double>(options_.quadrature_m) / safe_nu));
    wanted = std::max<long long>(wanted, options_.quadrature_m);
    // Quantize to powers of two so scans over many radii share cache entries.
    long long m_eff_ll = options_.quadrature_m;
    while (m_eff_ll < wanted && m_eff_ll < options_.max_nodes) m_eff_ll *= 2;
    int m_eff = static_cast<int>(std::min<long long>(m_eff_ll, options_.max_nodes));
    for (auto& [key, nodes] : cache_)
        if (key == m_eff) return nodes;
    if (cache_.size() >= 8) cache_.erase(cache_.begin());

    Nodes nodes;
    const auto& pieces = gamma_.pieces();
    for (const CurvePiece& p : pieces) {
        double len = p.theta1 - p.theta0;
        int segments = std::max(4, static_cast<int>(std::round(m_eff * len / (2.0 * kPi))));
        double h = len / segments;
        for (int k = 0; k <= segments; ++k) {
            double t = p.theta0 + h * k;
            double w = (k == 0 || k == segments) ? 0.5 * h : h;
            nodes.t.push_back(t);
            nodes.w.push_back(w);
            nodes.value.push_back(p.eval(t));
        }
    }
    cache_.emplace_back(m_eff, std::move(nodes));
    return cache_.back().second;
}

Vec2 PoissonEvaluator::value(double nu, double theta) const {
    if (!(nu > 0.0) || nu > 1.0)
        fail(ErrorCode::BoundaryPoint, "evaluator needs 0 < nu <= 1");
    double r = 1.0 - nu;
    const Nodes& nodes = nodes_for(nu);
    Vec2 acc{0.0, 0.0};
    for (std::size_t k = 0; k < nodes.t.size(); ++k)
        acc = acc + (nodes.w[k] * poisson_kernel(r, theta - nodes.t[k])) * nodes.value[k];
    return acc / (2.0 * kPi);
}

Vec2 PoissonEvaluator::radial_derivative(double nu, double theta, double step) const {
    if (nu >= 0.05) {
        // d/d nu = -d/d r with the differentiated kernel.
        double r = 1.0 - nu;
        const Nodes& nodes = nodes_for(nu);
        Vec2 acc{0.0, 0.0};
        for (std::size_t k = 0; k < nodes.t.size(); ++k)
            acc = acc + (nodes.w[k] * poisson_kernel_dr(r, theta - nodes.t[k])) * nodes.value[k];
        return -(acc / (2.0 * kPi));
    }
    double h = std::min(step, 0.02);
    Vec2 base = nu == 0.0 ? gamma_.eval(theta) : value(nu, theta);
    Vec2 d1 = (value(nu + h, theta) - base) / h;
    Vec2 d2 = (value(nu + 0.5 * h, theta) - base) / (0.5 * h);
    return 2.0 * d2 - d1;
}

Vec2 PoissonEvaluator::tangential_derivative(double nu, double theta) const {
    if (nu == 0.0) return gamma_.derivative_plus(theta);
    double r = 1.0 - nu;
    const Nodes& nodes = nodes_for(nu);
    Vec2 acc{0.0, 0.0};
    for (std::size_t k = 0; k < nodes.t.size(); ++k)
        acc = acc + (nodes.w[k] * poisson_kernel_dx(r, theta - nodes.t[k])) * nodes.value[k];
    return acc / (2.0 * kPi);
}

BoundaryDerivatives boundary_derivatives(const DiskBoundaryMap& gamma, double theta, double step,
                                         const PoissonOptions& options) {
    PoissonEvaluator eval(gamma, options);
    BoundaryDerivatives out;
    out.dphi_dnu = eval.radial_derivative(0.0, theta, step);
    out.gamma_prime_plus = gamma.derivative_plus(theta);
    out.gamma_prime_minus = gamma.derivative_minus(theta);
    return out;
}

ConeScanReport cone_condition_scan(const DiskBoundaryMap& gamma, int samples,
                                   const PoissonOptions& options, double step) {
    PoissonEvaluator eval(gamma, options);
    std::vector<double> angles;
    for (int i = 0; i < samples; ++i)
        angles.push_back(-kPi + 2.0 * kPi * (static_cast<double>(i) + 0.5) / samples);
    for (double j : gamma.junction_angles()) angles.push_back(j);
    std::sort(angles.begin(), angles.end());

    ConeScanReport report;
    report.min_margin = std::numeric_limits<double>::infinity();
    report.min_normal_norm = std::numeric_limits<double>::infinity();
    for (double theta : angles) {
        ConeScanSample s;
        s.theta = theta;
        Vec2 n = eval.radial_derivative(0.0, theta, step);
        s.normal_norm = norm(n);
        Vec2 tp = gamma.derivative_plus(theta);
        Vec2 tm = gamma.derivative_minus(theta);
        // <n_perp, t> with n_perp the clockwise quarter turn equals cross(t, n).
        s.margin_plus = cross(tp, n);
        s.margin_minus = cross(tm, n);
        s.pass = s.margin_plus > 0.0 && s.margin_minus > 0.0;
        report.min_margin = std::min({report.min_margin, s.margin_plus, s.margin_minus});
        report.min_normal_norm = std::min(report.min_normal_norm, s.normal_norm);
        if (!s.pass) {
            report.pass = false;
            report.failing_angles.push_back(theta);
        }
        report.samples.push_back(s);
    }
    return report;
}

GridInjectivityReport grid_injectivity_check(const DiskBoundaryMap& gamma, int n_theta, int n_nu,
                                             const PoissonOptions& options) {
    PoissonEvaluator eval(gamma, options);
    GridInjectivityReport report;

    std::vector<std::vector<Vec2>> grid(static_cast<std::size_t>(n_nu + 1));
    for (int j = 0; j <= n_nu; ++j) {
        double nu = static_cast<double>(j) / (n_nu + 1); // stays short of the center
        grid[j].resize(static_cast<std::size_t>(n_theta));
        for (int i = 0; i < n_theta; ++i) {
            double theta = -kPi + 2.0 * kPi * i / n_theta;
            grid[j][i] = (j == 0) ? gamma.eval(theta) : eval.value(nu, theta);
        }
    }

    struct Cell {
        Vec2 q[4]; // CCW in the domain: outer edge ccw, then inward
        int i, j;
        double xmin, xmax, ymin, ymax;
    };
    std::vector<Cell> cells;
    for (int j = 0; j < n_nu; ++j)
        for (int i = 0; i < n_theta; ++i) {
            Cell c;
            int i2 = (i + 1) % n_theta;
            c.q[0] = grid[j][i];
            c.q[1] = grid[j][i2];
            c.q[2] = grid[j + 1][i2];
            c.q[3] = grid[j + 1][i];
            c.i = i;
            c.j = j;
            c.xmin = c.xmax = c.q[0].x;
            c.ymin = c.ymax = c.q[0].y;
            for (int k = 1; k < 4; ++k) {
                c.xmin = std::min(c.xmin, c.q[k].x);
                c.xmax = std::max(c.xmax, c.q[k].x);
                c.ymin = std::min(c.ymin, c.q[k].y);
                c.ymax = std::max(c.ymax, c.q[k].y);
            }
            cells.push_back(c);
        }
    report.cells = static_cast<int>(cells.size());

    for (const Cell& c : cells) {
        if (orientation(c.q[0], c.q[1], c.q[2]) <= 0 || orientation(c.q[0], c.q[2], c.q[3]) <= 0)
            ++report.flipped_cells;
    }

    auto adjacent = [&](const Cell& a, const Cell& b) {
        int di = std::abs(a.i - b.i);
        di = std::min(di, n_theta - di);
        return di <= 1 && std::abs(a.j - b.j) <= 1;
    };
    auto cells_overlap = [&](const Cell& a, const Cell& b) {
        // Any edge crossing or full containment.
        for (int p = 0; p < 4; ++p)
            for (int q = 0; q < 4; ++q)
                if (segments_intersect_improperly(a.q[p], a.q[(p + 1) % 4], b.q[q],
                                                  b.q[(q + 1) % 4]))
                    return true;
        auto inside_quad = [](const Vec2& pt, const Cell& cell) {
            std::vector<Vec2> poly(cell.q, cell.q + 4);
            return point_in_polygon(pt, poly) > 0;
        };
        return inside_quad(b.q[0], a) || inside_quad(a.q[0], b);
    };
    for (std::size_t p = 0; p < cells.size(); ++p)
        for (std::size_t q = p + 1; q < cells.size(); ++q) {
            const Cell& a = cells[p];
            const Cell& b = cells[q];
            if (adjacent(a, b)) continue;
            if (a.xmax < b.xmin || b.xmax < a.xmin || a.ymax < b.ymin || b.ymax < a.ymin)
                continue;
            if (cells_overlap(a, b)) ++report.overlapping_pairs;
        }

    report.pass = report.flipped_cells == 0 && report.overlapping_pairs == 0;
    return report;
}

AnCheckReport alessandrini_nesi_check(const DiskBoundaryMap& gamma, int samples, double probe_nu,
                                      const PoissonOptions& options) {
    PoissonEvaluator eval(gamma, options);
    AnCheckReport report;
    for (int i = 0; i < samples; ++i) {
        double theta = -kPi + 2.0 * kPi * (static_cast<double>(i) + 0.5) / samples;
        AnCheckSample s;
        s.theta = theta;
        // Independent near-boundary estimate of det D phi: the frame
        // (outward radial, tangent) maps to (-dphi/dnu, dphi/dtheta).
        Vec2 n = eval.radial_derivative(probe_nu, theta);
        Vec2 t = eval.tangential_derivative(probe_nu, theta);
        s.det = cross(t, n);
        s.det_positive = s.det > 0.0;
        Vec2 nb = eval.radial_derivative(0.0, theta);
        Vec2 tb = gamma.derivative_plus(theta);
        s.cone_pass = cross(tb, nb) > 0.0 && cross(gamma.derivative_minus(theta), nb) > 0.0;
        if (s.det_positive != s.cone_pass) ++report.disagreements;
        report.samples.push_back(s);
    }
    report.pass = report.disagreements == 0;
    return report;
}

DiskBoundaryMap slowed_polygon_map(const TargetPolygon& polygon, int vertex_a, int vertex_b,
                                   double slowdown) {
    if (!(slowdown > 0.0) || slowdown > 1.0)
        fail(ErrorCode::BadBoundaryMap, "slowdown must lie in (0, 1]");
    const auto& v = polygon.vertices();
    int n = polygon.size();
    double total = polygon_perimeter(v);
    std::vector<double> cum(static_cast<std::size_t>(n) + 1, 0.0);
    for (int e = 0; e < n; ++e) cum[e + 1] = cum[e] + distance(v[e], v[(e + 1) % n]);

    auto arc_point = [&](double ell) {
        ell = std::fmod(ell, total);
        if (ell < 0.0) ell += total;
        int e = static_cast<int>(std::upper_bound(cum.begin(), cum.end(), ell) - cum.begin()) - 1;
        e = std::clamp(e, 0, n - 1);
        Vec2 dir = v[(e + 1) % n] - v[e];
        double len = cum[e + 1] - cum[e];
        return v[e] + dir * ((ell - cum[e]) / len);
    };

    double la = cum[vertex_a];
    double lb = cum[vertex_b];
    double len1 = lb - la;
    if (len1 <= 0.0) len1 += total;
    double len2 = total - len1;

    double u = 0.5 * kPi * (1.0 - slowdown);
    double rho = 0.25 * slowdown;

    // Monotone zones (theta0, theta1) -> (ell0, ell1), ell measured from la
    // backwards through lb: theta=-pi sits at lb, theta=0 at la, theta=pi at
    // lb again, all CCW along the polygon.
    struct Zone {
        double t0, t1, l0, l1;
    };
    std::vector<Zone> zones;
    double lb0 = lb < la ? lb : lb - total; // lb0 + len2 == la
    if (u > 0.0) {
        zones.push_back({-kPi, -kPi + u, lb0, lb0 + rho * len2});
        zones.push_back({-kPi + u, -u, lb0 + rho * len2, lb0 + (1.0 - rho) * len2});
        zones.push_back({-u, 0.0, lb0 + (1.0 - rho) * len2, la});
        zones.push_back({0.0, u, la, la + rho * len1});
        zones.push_back({u, kPi - u, la + rho * len1, la + (1.0 - rho) * len1});
        zones.push_back({kPi - u, kPi, la + (1.0 - rho) * len1, la + len1});
    } else {
        zones.push_back({-kPi, 0.0, lb0, la});
        zones.push_back({0.0, kPi, la, la + len1});
    }

    // Subdivide each affine zone at polygon-corner preimages so that every
    // piece is a straight segment: gamma(theta) = corner + rate*(theta - t_c).
    std::vector<CurvePiece> pieces;
    for (const Zone& z : zones) {
        double rate = (z.l1 - z.l0) / (z.t1 - z.t0);
        if (!(rate > 0.0)) fail(ErrorCode::Internal, "slowed map is not monotone");
        // Corner arc positions inside (z.l0, z.l1): corners live at cum[k] + m*total.
        std::vector<double> cuts = {z.t0};
        for (int k = 0; k < n; ++k) {
            for (double shift : {-total, 0.0, total}) {
                double c = cum[k] + shift;
                if (c > z.l0 && c < z.l1) cuts.push_back(z.t0 + (c - z.l0) / rate);
            }
        }
        cuts.push_back(z.t1);
        std::sort(cuts.begin(), cuts.end());
        for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
            double t0 = cuts[s], t1 = cuts[s + 1];
            if (!(t1 > t0)) continue;
            double l0 = z.l0 + (t0 - z.t0) * rate;
            Vec2 p0 = arc_point(l0);
            double lmid = l0 + 0.5 * (t1 - t0) * rate;
            Vec2 pm = arc_point(lmid);
            Vec2 dir = (pm - p0) / (0.5 * (t1 - t0));
            CurvePiece piece;
            piece.form = CurvePiece::Form::Polynomial;
            piece.theta0 = t0;
            piece.theta1 = t1;
            piece.cx = {p0.x, dir.x};
            piece.cy = {p0.y, dir.y};
            pieces.push_back(std::move(piece));
        }
    }
    return DiskBoundaryMap::from_pieces(std::move(pieces));
}

ChoquetResult choquet_counterexample(const TargetPolygon& polygon, double min_slowdown,
                                     const PoissonOptions& options) {
    const auto& v = polygon.vertices();
    int n = polygon.size();

    // A chord whose open segment leaves the polygon. Prefer the two
    // neighbors of a strictly reflex vertex.
    auto chord_exits = [&](int a, int b) {
        if (a == b || (a + 1) % n == b || (b + 1) % n == a) return false;
        for (int k = 1; k <= 7; ++k) {
            Vec2 p = v[a] + (v[b] - v[a]) * (static_cast<double>(k) / 8.0);
            if (point_in_polygon(p, v) < 0) return true;
        }
        return false;
    };
    int ia = -1, ib = -1;
    for (int k = 0; k < n && ia < 0; ++k) {
        if (polygon.turn_classes()[k] != TurnClass::StrictlyReflex) continue;
        int a = (k + n - 1) % n, b = (k + 1) % n;
        if (chord_exits(a, b)) {
            ia = a;
            ib = b;
        }
    }
    for (int a = 0; a < n && ia < 0; ++a)
        for (int b = a + 1; b < n && ia < 0; ++b)
            if (chord_exits(a, b)) {
                ia = a;
                ib = b;
            }
    if (ia < 0)
        fail(ErrorCode::NoReflexChord,
             "polygon has no vertex chord leaving its interior (convex target?)");

    // March the slowdown toward 0 until the on-diameter image leaves the
    // polygon. Both slow points sit on the x-axis of the domain.
    for (double s = 1.0; s >= min_slowdown * 0.5; s *= 0.5) {
        DiskBoundaryMap map = slowed_polygon_map(polygon, ia, ib, s);
        PoissonEvaluator eval(map, options);
        const int steps = 33;
        for (int k = 1; k < steps; ++k) {
            double x = -0.97 + 1.94 * static_cast<double>(k) / steps;
            double nu = 1.0 - std::abs(x);
            double theta = x >= 0.0 ? 0.0 : kPi;
            Vec2 image = eval.value(nu, theta);
            if (point_in_polygon(image, v) < 0) {
                ChoquetResult out{std::move(map), s, ia, ib, nu, theta, image, 0.0};
                ConeScanReport scan = cone_condition_scan(out.map, 64, options);
                out.scan_min_margin = scan.min_margin;
                return out;
            }
        }
    }
    fail(ErrorCode::Internal, "no witness found down to the minimum slowdown");
}

double poisson_extend_scalar(const ScalarBoundaryData& data, double r, double t,
                             const PoissonOptions& options) {
    double nu = std::max(1.0 - r, 1e-12);
    long long wanted =
        static_cast<long long>(std::ceil(static_cast<double>(options.quadrature_m) / nu));
    int m_eff = static_cast<int>(std::min<long long>(wanted, options.max_nodes));

    std::vector<double> breaks = data.breakpoints;
    breaks.push_back(-kPi);
    breaks.push_back(kPi);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    double acc = 0.0;
    for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
        double a = breaks[s], b = breaks[s + 1];
        if (!(b > a)) continue;
        int segments = std::max(4, static_cast<int>(std::round(m_eff * (b - a) / (2.0 * kPi))));
        double h = (b - a) / segments;
        for (int k = 0; k <= segments; ++k) {
            double tk = a + h * k;
            double w = (k == 0 || k == segments) ? 0.5 * h : h;
            // Sample the data one-sidedly at sub-interval ends so jumps at
            // breakpoints contribute their interior limit.
            double ts = k == 0 ? tk + 1e-9 * h : (k == segments ? tk - 1e-9 * h : tk);
            acc += w * poisson_kernel(r, t - tk) * data.f(ts);
        }
    }
    return acc / (2.0 * kPi);
}

double poisson_tangential_derivative_scalar(const ScalarBoundaryData& data, double r, double t,
                                            const PoissonOptions& options) {
    double nu = std::max(1.0 - r, 1e-12);
    long long wanted =
        static_cast<long long>(std::ceil(static_cast<double>(options.quadrature_m) / nu));
    int m_eff = static_cast<int>(std::min<long long>(wanted, options.max_nodes));

    std::vector<double> breaks = data.breakpoints;
    breaks.push_back(-kPi);
    breaks.push_back(kPi);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    double acc = 0.0;
    for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
        double a = breaks[s], b = breaks[s + 1];
        if (!(b > a)) continue;
        int segments = std::max(4, static_cast<int>(std::round(m_eff * (b - a) / (2.0 * kPi))));
        double h = (b - a) / segments;
        for (int k = 0; k <= segments; ++k) {
            double tk = a + h * k;
            double w = (k == 0 || k == segments) ? 0.5 * h : h;
            double ts = k == 0 ? tk + 1e-9 * h : (k == segments ? tk - 1e-9 * h : tk);
            acc += w * poisson_kernel_dx(r, t - tk) * data.f(ts);
        }
    }
    return acc / (2.0 * kPi);
}

MonotonicityReport monotonicity_check(const ScalarBoundaryData& data, double c, double delta,
                                      const std::vector<double>& r_grid,
                                      const PoissonOptions& options) {
    MonotonicityReport report;
    report.r_grid = r_grid;

    // Hypothesis: f(t) - f(s) >= c (t - s) on [-delta, delta], sampled.
    const int hn = 25;
    for (int i = 0; i < hn; ++i)
        for (int j = i + 1; j < hn; ++j) {
            double s = -delta + 2.0 * delta * i / (hn - 1);
            double t = -delta + 2.0 * delta * j / (hn - 1);
            if (data.f(t) - data.f(s) < c * (t - s) - 1e-12)
                fail(ErrorCode::HypothesisViolated,
                     "boundary data is not c-monotone on [-delta, delta]");
        }
    report.hypothesis_ok = true;

    const int pn = 9;
    double lo = -delta / 8.0, hi = delta / 8.0;
    for (double r : r_grid) {
        bool holds = true;
        for (int i = 0; i < pn && holds; ++i)
            for (int j = i + 1; j < pn && holds; ++j) {
                double s = lo + (hi - lo) * i / (pn - 1);
                double t = lo + (hi - lo) * j / (pn - 1);
                double fs = poisson_extend_scalar(data, r, s, options);
                double ft = poisson_extend_scalar(data, r, t, options);
                if (ft - fs < 0.5 * c * (t - s) - 1e-9) holds = false;
            }
        report.holds_at_r.push_back(holds);
    }
    report.conclusion_tail_ok = false;
    report.empirical_r = 1.0;
    for (std::size_t k = 0; k < r_grid.size(); ++k) {
        bool tail = true;
        for (std::size_t j = k; j < r_grid.size(); ++j) tail = tail && report.holds_at_r[j];
        if (tail) {
            report.empirical_r = r_grid[k];
            report.conclusion_tail_ok = true;
            break;
        }
    }
    return report;
}

ConstantAudit half_disk_constant_audit(int grid, const PoissonOptions& options) {
    ScalarBoundaryData data;
    data.f = [](double t) { return (t > -0.5 * kPi && t < 0.5 * kPi) ? 1.0 : 0.0; };
    data.breakpoints = {-0.5 * kPi, 0.5 * kPi};

    ConstantAudit audit;
    for (int k = 0; k < grid; ++k) {
        double x = -0.95 + 1.9 * k / (grid - 1);
        double r = std::abs(x);
        double t = x >= 0.0 ? 0.0 : kPi;
        double measured = r == 0.0 ? poisson_extend_scalar(data, 1e-9, 0.0, options)
                                   : poisson_extend_scalar(data, r, t, options);
        double two_pi = 0.5 + (2.0 / kPi) * std::atan(x);
        double one_pi = 0.5 + (1.0 / kPi) * std::atan(x);
        audit.max_dev_half_plus_2pi_atan =
            std::max(audit.max_dev_half_plus_2pi_atan, std::abs(measured - two_pi));
        audit.max_dev_half_plus_1pi_atan =
            std::max(audit.max_dev_half_plus_1pi_atan, std::abs(measured - one_pi));
    }
    audit.best = audit.max_dev_half_plus_2pi_atan <= audit.max_dev_half_plus_1pi_atan ? "2/pi"
                                                                                      : "1/pi";
    return audit;
}

} // namespace conetutte

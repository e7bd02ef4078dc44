#include "conetutte/cones.hpp"

#include "conetutte/error.hpp"
#include "conetutte/exact.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace conetutte {

namespace {

int cross_sign(const Vec2& p, const Vec2& q) { return product_sum_sign(p.x, q.y, -p.y, q.x); }
int dot_sign_v(const Vec2& p, const Vec2& q) { return product_sum_sign(p.x, q.x, p.y, q.y); }

} // namespace

BoundaryCone cone_at_vertex(const Vec2& p_prev, const Vec2& p, const Vec2& p_next) {
    if (p_prev == p || p_next == p || p_prev == p_next)
        fail(ErrorCode::CoincidentPoints, "cone needs three distinct points");
    BoundaryCone cone;
    cone.apex = p;
    cone.dir_prev = p - p_prev;
    cone.dir_next = p_next - p;
    cone.normal_minus = perp_ccw(cone.dir_prev);
    cone.normal_plus = perp_ccw(cone.dir_next);
    // Empty exactly when the edge directions are opposite (the two open
    // half-planes face away from each other).
    int turn = orientation(p_prev, p, p_next);
    int along = dot_diff_sign(p.x, p.y, p_prev.x, p_prev.y, p_next.x, p_next.y, p.x, p.y);
    cone.degenerate = (turn == 0 && along < 0);
    return cone;
}

bool cone_contains(const BoundaryCone& cone, const Vec2& z) {
    if (cone.degenerate) return false;
    int s_minus = cross_sign(cone.dir_prev, z);
    int s_plus = cross_sign(cone.dir_next, z);
    return s_minus > 0 && s_plus > 0;
}

double cone_margin(const BoundaryCone& cone, const Vec2& z) {
    return std::min(cross(cone.dir_prev, z), cross(cone.dir_next, z));
}

Vec2 cone_interior_direction(const BoundaryCone& cone) {
    if (cone.degenerate) fail(ErrorCode::Internal, "degenerate cone has no interior");
    Vec2 dir = normalized(normalized(cone.normal_minus) + normalized(cone.normal_plus));
    if (dir == Vec2{0.0, 0.0}) fail(ErrorCode::Internal, "degenerate cone has no interior");
    return dir;
}

ConeReport cone_condition_report(const PlanarDrawing& drawing, const EdgeWeights& weights) {
    const Triangulation& tri = *drawing.tri;
    if (!weights.tri()->structurally_equal(tri))
        fail(ErrorCode::MeshMismatch, "drawing and weights use different triangulations");
    const auto& cycle = tri.boundary_cycle();
    auto residual = laplace_residual(drawing, weights);
    auto classes = classify_boundary_vertices(drawing.boundary_points());

    ConeReport report;
    report.vertices.reserve(cycle.size());
    report.min_reflex_margin = std::numeric_limits<double>::infinity();
    std::size_t b = cycle.size();
    for (std::size_t k = 0; k < b; ++k) {
        int vi = cycle[k];
        const Vec2& p_prev = drawing.coords[cycle[(k + b - 1) % b]];
        const Vec2& p = drawing.coords[vi];
        const Vec2& p_next = drawing.coords[cycle[(k + 1) % b]];

        ConeVertexReport vr;
        vr.vertex = vi;
        vr.cls = classes[k];
        vr.force = residual[vi];
        vr.cone = cone_at_vertex(p_prev, p, p_next);
        vr.margin = cone_margin(vr.cone, vr.force);

        // Exact membership evaluated on the raw inputs: the sign of
        //   sum_j w_ij * cross(edge_dir, y_j - y_i)
        // for each of the two cone edges, avoiding the rounded force.
        auto halfplane_sign = [&](const Vec2& from, const Vec2& to) {
            Dyadic dx = Dyadic(to.x) - Dyadic(from.x);
            Dyadic dy = Dyadic(to.y) - Dyadic(from.y);
            Dyadic acc;
            std::size_t offset = tri.adjacency_offsets()[vi];
            for (int j : tri.neighbors(vi)) {
                Dyadic ex = Dyadic(drawing.coords[j].x) - Dyadic(p.x);
                Dyadic ey = Dyadic(drawing.coords[j].y) - Dyadic(p.y);
                acc = acc + Dyadic(weights.at_offset(offset++)) * (dx * ey - dy * ex);
            }
            return acc.sign();
        };
        vr.pass = !vr.cone.degenerate && halfplane_sign(p_prev, p) > 0 &&
                  halfplane_sign(p, p_next) > 0;

        if (is_reflex(vr.cls)) {
            report.overall = report.overall && vr.pass;
            report.min_reflex_margin = std::min(report.min_reflex_margin, vr.margin);
        }
        report.vertices.push_back(std::move(vr));
    }
    if (!std::isfinite(report.min_reflex_margin)) report.min_reflex_margin = 0.0;
    return report;
}

namespace {

// Coefficients of v on the (non-collinear) basis (p, q) by Cramer's rule.
void decompose(const Vec2& p, const Vec2& q, const Vec2& v, double& cp, double& cq) {
    double det = cross(p, q);
    cp = cross(v, q) / det;
    cq = cross(p, v) / det;
}

} // namespace

namespace {

// Exact sign oracles for the feasibility decision; the default operates on
// the vectors as given, the apex-based variant on raw point differences.
struct SignOracle {
    std::function<int(std::size_t, std::size_t)> cross_yy; // sign(Y_a x Y_b)
    std::function<int(std::size_t, std::size_t)> dot_yy;   // sign(<Y_a, Y_b>)
    std::function<int(std::size_t)> cross_yt;               // sign(Y_j x target)
    std::function<int(std::size_t)> dot_yt;                 // sign(<Y_j, target>)
};

PositiveCombination solve_positive_impl(const std::vector<Vec2>& vectors, const Vec2& target,
                                        double alpha_min_rel, const SignOracle& oracle) {
    std::size_t m = vectors.size();
    if (m < 2) fail(ErrorCode::ZeroVector, "need at least two vectors");
    for (const Vec2& v : vectors) {
        if (!is_finite(v)) fail(ErrorCode::NonFinite, "vector is not finite");
        if (v.x == 0.0 && v.y == 0.0) fail(ErrorCode::ZeroVector, "zero vector in input");
    }
    if (!is_finite(target)) fail(ErrorCode::NonFinite, "target is not finite");

    PositiveCombination out;

    // --- Exact feasibility: target in relint(cone(Y)) iff no dual candidate
    // separates it. In 2D the dual cone's extreme rays are perpendicular or
    // equal to generators, so {+-Y_j, +-Y_j^perp} is a complete candidate set.
    bool has_dual = false;
    bool have_strict_cert = false;
    bool have_weak_cert = false;
    Vec2 strict_cert, weak_cert;
    bool feasible = true;
    for (std::size_t j = 0; j < m; ++j) {
        // Candidate forms: s * Y_j and s * perp_cw(Y_j), s in {+1, -1}.
        // <perp_cw(Y_j), w> = cross(w, Y_j) = -cross(Y_j, w).
        for (int form = 0; form < 2; ++form) {
            for (int s : {1, -1}) {
                auto dual_dot = [&](std::size_t k) {
                    return s * (form == 0 ? oracle.dot_yy(j, k) : -oracle.cross_yy(j, k));
                };
                int target_dot = s * (form == 0 ? oracle.dot_yt(j) : -oracle.cross_yt(j));
                bool in_dual = true;
                bool all_zero = true;
                for (std::size_t k = 0; k < m; ++k) {
                    int d = dual_dot(k);
                    if (d < 0) {
                        in_dual = false;
                        break;
                    }
                    if (d != 0) all_zero = false;
                }
                if (!in_dual) continue;
                has_dual = true;
                if (target_dot > 0) continue;
                if (target_dot == 0 && all_zero) continue;
                feasible = false;
                Vec2 c = form == 0 ? vectors[j] : perp_cw(vectors[j]);
                c = c * static_cast<double>(s);
                if (target_dot < 0 && !have_strict_cert) {
                    have_strict_cert = true;
                    strict_cert = c;
                } else if (target_dot == 0 && !have_weak_cert) {
                    have_weak_cert = true;
                    weak_cert = c;
                }
            }
        }
    }

    if (!feasible) {
        out.feasible = false;
        out.certificate = have_strict_cert ? strict_cert : weak_cert;
        out.certificate_strict = have_strict_cert;
        return out;
    }

    // --- Construction. ---
    out.feasible = true;
    out.coefficients.assign(m, 0.0);
    double max_norm = 0.0;
    for (const Vec2& v : vectors) max_norm = std::max(max_norm, norm(v));

    bool collinear = true;
    for (std::size_t j = 1; j < m && collinear; ++j)
        if (oracle.cross_yy(0, j) != 0) collinear = false;

    // Iteratively cancels the residual through well-conditioned generator
    // pairs while keeping every coefficient strictly positive; corrections
    // that would cross zero are applied as partial steps.
    auto polish = [&](std::vector<double>& alpha) {
        for (int iter = 0; iter < 16; ++iter) {
            Vec2 r = target;
            for (std::size_t j = 0; j < m; ++j) r = r - alpha[j] * vectors[j];
            double sum = 0.0;
            for (double v : alpha) sum += v;
            if (norm(r) <= 1e-16 * (1.0 + sum) * max_norm) break;
            int best_a = -1, best_b = -1;
            double best_score = 0.0, best_da = 0.0, best_db = 0.0, best_tau = 1.0;
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t b = a + 1; b < m; ++b) {
                    double det = cross(vectors[a], vectors[b]);
                    double angle = std::abs(det) / (norm(vectors[a]) * norm(vectors[b]));
                    if (!(angle > 0.0)) continue;
                    double da, db;
                    decompose(vectors[a], vectors[b], r, da, db);
                    if (!std::isfinite(da) || !std::isfinite(db)) continue;
                    double tau = 1.0;
                    if (alpha[a] + da <= 0.0) tau = std::min(tau, -0.5 * alpha[a] / da);
                    if (alpha[b] + db <= 0.0) tau = std::min(tau, -0.5 * alpha[b] / db);
                    if (!(tau > 0.0)) continue;
                    double score = angle * tau;
                    if (score > best_score) {
                        best_score = score;
                        best_a = static_cast<int>(a);
                        best_b = static_cast<int>(b);
                        best_da = da;
                        best_db = db;
                        best_tau = tau;
                    }
                }
            if (best_a < 0) break;
            alpha[best_a] += best_tau * best_da;
            alpha[best_b] += best_tau * best_db;
            if (!(alpha[best_a] > 0.0) || !(alpha[best_b] > 0.0)) break; // roundoff guard
        }
    };

    auto residual_of = [&](const std::vector<double>& alpha) {
        Vec2 r = target;
        for (std::size_t j = 0; j < m; ++j) r = r - alpha[j] * vectors[j];
        return norm(r);
    };

    // Polishes every positive candidate start and keeps the best residual.
    auto select_best = [&](std::vector<std::vector<double>> candidates) {
        bool have = false;
        double best_res = 0.0;
        for (auto& cand : candidates) {
            bool positive = cand.size() == m;
            for (double v : cand)
                if (!(v > 0.0) || !std::isfinite(v)) positive = false;
            if (!positive) continue;
            polish(cand);
            positive = true;
            for (double v : cand)
                if (!(v > 0.0) || !std::isfinite(v)) positive = false;
            if (!positive) continue;
            double res = residual_of(cand);
            if (!have || res < best_res) {
                have = true;
                best_res = res;
                out.coefficients = std::move(cand);
            }
        }
        if (!have) fail(ErrorCode::Internal, "no positive candidate survived polishing");
    };

    // The best-conditioned generator pair (largest normalized determinant).
    int bp_a = -1, bp_b = -1;
    {
        double best_angle = 0.0;
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = a + 1; b < m; ++b) {
                double det = cross(vectors[a], vectors[b]);
                double angle = std::abs(det) / (norm(vectors[a]) * norm(vectors[b]));
                if (angle > best_angle) {
                    best_angle = angle;
                    bp_a = static_cast<int>(a);
                    bp_b = static_cast<int>(b);
                }
            }
    }

    // Uniform start with the target carried through the best pair: machine
    // accurate when the generators nearly cancel (a barycenter fan), where
    // pairwise Cramer is hopeless.
    auto uniform_candidate = [&]() -> std::vector<double> {
        if (bp_a < 0) return {};
        double base = norm(target) > 0.0 ? norm(target) / max_norm : 1.0;
        std::vector<double> cand(m, base);
        Vec2 r = target;
        for (std::size_t j = 0; j < m; ++j) r = r - base * vectors[j];
        double da, db;
        decompose(vectors[bp_a], vectors[bp_b], r, da, db);
        if (!std::isfinite(da) || !std::isfinite(db)) return {};
        cand[bp_a] += da;
        cand[bp_b] += db;
        return cand;
    };

    if (collinear) {
        const Vec2 d = vectors[0];
        double dd = dot(d, d);
        std::vector<double> lambda(m);
        for (std::size_t j = 0; j < m; ++j) lambda[j] = dot(vectors[j], d) / dd;
        double tau = dot(target, d) / dd;
        bool mixed = false;
        for (double l : lambda)
            if (l < 0.0) mixed = true;
        if (!mixed) {
            double total = 0.0;
            for (double l : lambda) total += l;
            double c = tau / total;
            out.coefficients.assign(m, c);
        } else {
            // Particular solution on one generator + a strictly positive
            // null combination to lift everything above zero.
            std::size_t kpos = 0, kneg = 0;
            for (std::size_t j = 0; j < m; ++j) {
                if (lambda[j] > 0.0) kpos = j;
                if (lambda[j] < 0.0) kneg = j;
            }
            std::vector<double> nu(m, 0.0);
            for (std::size_t j = 0; j < m; ++j) {
                std::size_t partner = lambda[j] > 0.0 ? kneg : kpos;
                nu[j] += 1.0;
                nu[partner] += -lambda[j] / lambda[partner];
            }
            std::size_t kbase = std::abs(lambda[kpos]) >= std::abs(lambda[kneg]) ? kpos : kneg;
            double base = tau / lambda[kbase];
            double worst = std::min(0.0, base);
            double s = (std::abs(base) + 1.0 - 2.0 * worst);
            for (int tries = 0; tries < 64; ++tries) {
                double mn = std::numeric_limits<double>::infinity(), mx = 0.0;
                for (std::size_t j = 0; j < m; ++j) {
                    double a = s * nu[j] + (j == kbase ? base : 0.0);
                    mn = std::min(mn, a);
                    mx = std::max(mx, a);
                }
                if (mn > 0.0 && mn >= alpha_min_rel * mx) break;
                s *= 2.0;
            }
            for (std::size_t j = 0; j < m; ++j)
                out.coefficients[j] = s * nu[j] + (j == kbase ? base : 0.0);
        }
    } else if (!has_dual) {
        // Positively spanning set. One candidate comes from a strictly
        // positive null combination (each -Y_j written as a nonnegative
        // combination of a generator pair, which conic Caratheodory
        // guarantees); the other from the uniform start.
        std::vector<double> nu(m, 0.0);
        bool nu_ok = true;
        for (std::size_t j = 0; j < m && nu_ok; ++j) {
            int best_a = -1, best_b = -1;
            double best_score = -1.0, best_da = 0.0, best_db = 0.0;
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t b = a + 1; b < m; ++b) {
                    double det = cross(vectors[a], vectors[b]);
                    double angle = std::abs(det) / (norm(vectors[a]) * norm(vectors[b]));
                    if (!(angle > 0.0)) continue;
                    double da, db;
                    decompose(vectors[a], vectors[b], -vectors[j], da, db);
                    if (!std::isfinite(da) || !std::isfinite(db) || da < 0.0 || db < 0.0)
                        continue;
                    double score = 1.0 / (1.0 + std::max(da, db)); // balanced entries
                    if (score > best_score) {
                        best_score = score;
                        best_a = static_cast<int>(a);
                        best_b = static_cast<int>(b);
                        best_da = da;
                        best_db = db;
                    }
                }
            if (best_a < 0) {
                nu_ok = false;
                break;
            }
            nu[j] += 1.0;
            nu[best_a] += best_da;
            nu[best_b] += best_db;
        }

        std::vector<std::vector<double>> candidates;
        if (nu_ok) {
            if (target.x == 0.0 && target.y == 0.0) {
                candidates.push_back(nu);
            } else if (bp_a >= 0) {
                double beta_a, beta_b;
                decompose(vectors[bp_a], vectors[bp_b], target, beta_a, beta_b);
                double beta_max = std::max(std::abs(beta_a), std::abs(beta_b));
                double numin = std::numeric_limits<double>::infinity();
                for (double v : nu) numin = std::min(numin, v);
                double t = (2.0 * beta_max + std::max(1.0, beta_max)) / numin;
                std::vector<double> cand(m);
                for (std::size_t j = 0; j < m; ++j) cand[j] = t * nu[j];
                cand[bp_a] += beta_a;
                cand[bp_b] += beta_b;
                candidates.push_back(std::move(cand));
            }
        }
        candidates.push_back(uniform_candidate());
        candidates.push_back(std::vector<double>(
            m, norm(target) > 0.0 ? norm(target) / max_norm : 1.0));
        select_best(std::move(candidates));
    } else {
        // Proper cone (or half-plane): spread a uniform weight eps on every
        // vector and decompose the leftover target - eps*sum(Y) across one
        // generator pair. For any feasible target and small enough eps the
        // leftover stays in the cone, so by conic Caratheodory some pair
        // carries it with both final coefficients positive. Shrink eps
        // geometrically until that pair shows up.
        Vec2 sum_y{0.0, 0.0};
        double sum_norms = 0.0;
        for (const Vec2& v : vectors) {
            sum_y = sum_y + v;
            sum_norms += norm(v);
        }
        double scale = norm(target) > 0.0 ? norm(target) : max_norm;
        double eps = scale / (2.0 * sum_norms);
        std::vector<double> pair_cand;
        for (int shrink = 0; shrink < 100 && pair_cand.empty(); ++shrink, eps *= 0.25) {
            Vec2 r = target - eps * sum_y;
            int pa = -1, pb = -1;
            double best_score = 0.0;
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t b = a + 1; b < m; ++b) {
                    if (cross_sign(vectors[a], vectors[b]) == 0) continue;
                    double da, db;
                    decompose(vectors[a], vectors[b], r, da, db);
                    double alpha_a = eps + da;
                    double alpha_b = eps + db;
                    if (!(alpha_a > 0.0) || !(alpha_b > 0.0)) continue;
                    double score = std::min(alpha_a * norm(vectors[a]), alpha_b * norm(vectors[b]));
                    if (pa < 0 || score > best_score) {
                        best_score = score;
                        pa = static_cast<int>(a);
                        pb = static_cast<int>(b);
                    }
                }
            if (pa >= 0) {
                double da, db;
                decompose(vectors[pa], vectors[pb], r, da, db);
                pair_cand.assign(m, eps);
                pair_cand[pa] += da;
                pair_cand[pb] += db;
            }
        }
        if (pair_cand.empty())
            fail(ErrorCode::Internal, "feasible target but no positive pair decomposition found");
        std::vector<std::vector<double>> candidates;
        candidates.push_back(std::move(pair_cand));
        candidates.push_back(uniform_candidate());
        candidates.push_back(std::vector<double>(
            m, norm(target) > 0.0 ? norm(target) / max_norm : 1.0));
        select_best(std::move(candidates));
    }

    // Residual and floor report.
    Vec2 acc{0.0, 0.0};
    double mn = std::numeric_limits<double>::infinity(), mx = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        acc = acc + out.coefficients[j] * vectors[j];
        mn = std::min(mn, out.coefficients[j]);
        mx = std::max(mx, out.coefficients[j]);
    }
    out.residual = acc - target;
    out.floor_met = mn > 0.0 && mn >= alpha_min_rel * mx;
    if (!(mn > 0.0))
        fail(ErrorCode::Internal, "positive combination construction produced a non-positive weight");
    return out;
}

} // namespace

PositiveCombination solve_positive_combination(const std::vector<Vec2>& vectors,
                                               const Vec2& target, double alpha_min_rel) {
    SignOracle oracle;
    oracle.cross_yy = [&](std::size_t a, std::size_t b) {
        return cross_sign(vectors[a], vectors[b]);
    };
    oracle.dot_yy = [&](std::size_t a, std::size_t b) {
        return dot_sign_v(vectors[a], vectors[b]);
    };
    oracle.cross_yt = [&](std::size_t j) { return cross_sign(vectors[j], target); };
    oracle.dot_yt = [&](std::size_t j) { return dot_sign_v(vectors[j], target); };
    return solve_positive_impl(vectors, target, alpha_min_rel, oracle);
}

PositiveCombination solve_positive_combination_at(const std::vector<Vec2>& points,
                                                  const Vec2& apex, const Vec2& target,
                                                  double alpha_min_rel) {
    std::vector<Vec2> vectors;
    vectors.reserve(points.size());
    for (const Vec2& p : points) vectors.push_back(p - apex);
    SignOracle oracle;
    oracle.cross_yy = [&](std::size_t a, std::size_t b) {
        return orient2d_sign(apex.x, apex.y, points[a].x, points[a].y, points[b].x, points[b].y);
    };
    oracle.dot_yy = [&](std::size_t a, std::size_t b) {
        return dot_diff_sign(points[a].x, points[a].y, apex.x, apex.y, points[b].x, points[b].y,
                             apex.x, apex.y);
    };
    oracle.cross_yt = [&](std::size_t j) {
        return cross_diff_sign(points[j].x, points[j].y, apex.x, apex.y, target.x, target.y, 0.0,
                               0.0);
    };
    oracle.dot_yt = [&](std::size_t j) {
        return dot_diff_sign(points[j].x, points[j].y, apex.x, apex.y, target.x, target.y, 0.0,
                             0.0);
    };
    return solve_positive_impl(vectors, target, alpha_min_rel, oracle);
}

} // namespace conetutte

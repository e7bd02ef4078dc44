#pragma once

#include "conetutte/geom.hpp"
#include "conetutte/mesh.hpp"

#include <functional>
#include <string>
#include <vector>

namespace conetutte {

// One parametric arc of a boundary map, exactly evaluable with derivatives.
//   Polynomial:    x(t) = sum_k cx[k] * (t - theta0)^k          (local parameter)
//   Trigonometric: x(t) = cx[0] + sum_k cx[2k-1] cos(kt) + cx[2k] sin(kt)
struct CurvePiece {
    enum class Form { Polynomial, Trigonometric };
    Form form = Form::Polynomial;
    double theta0 = 0.0;
    double theta1 = 0.0;
    std::vector<double> cx, cy;

    Vec2 eval(double theta) const;
    Vec2 derivative(double theta) const;
};

// Piecewise-C1 parametric boundary curve on [-pi, pi], CCW, with a finite
// set of junction angles. Pieces must concatenate continuously and carry
// nonvanishing one-sided derivatives at junctions.
class DiskBoundaryMap {
  public:
    static DiskBoundaryMap from_pieces(std::vector<CurvePiece> pieces);

    Vec2 eval(double theta) const;
    Vec2 derivative_plus(double theta) const;
    Vec2 derivative_minus(double theta) const;
    const std::vector<CurvePiece>& pieces() const { return pieces_; }
    // Structural junction angles (the singular set S; smooth junctions may be
    // included, which only adds benign scan points).
    std::vector<double> junction_angles() const;

  private:
    const CurvePiece& piece_at(double theta, bool prefer_left) const;
    std::vector<CurvePiece> pieces_;
};

// Built-in boundary maps.
DiskBoundaryMap circle_identity_map();
DiskBoundaryMap circle_power_map(int k); // theta -> (cos k theta, sin k theta)
// Arc-length proportional parameterization of a simple CCW polygon; theta=-pi
// maps to vertex `start_vertex`.
DiskBoundaryMap polygon_arclength_map(const TargetPolygon& polygon, int start_vertex = 0);

struct PoissonOptions {
    int quadrature_m = 1024;  // M0; effective node count scales as M0/nu
    int max_nodes = 1 << 16;  // cap on the scaled node count
};

// Harmonic extension at the polar point (nu, theta), nu in (0, 1], via
// piecewise trapezoid quadrature of the Poisson integral. nu = 0 is the
// boundary itself and is rejected (evaluate gamma exactly instead).
Vec2 poisson_extend(const DiskBoundaryMap& gamma, double nu, double theta,
                    const PoissonOptions& options = {});

// Reusable evaluator: caches quadrature nodes per effective resolution.
class PoissonEvaluator {
  public:
    PoissonEvaluator(DiskBoundaryMap gamma, const PoissonOptions& options = {});

    Vec2 value(double nu, double theta) const;
    // d phi / d nu (nu increases inward). Near the boundary (nu < 0.05) this
    // uses one-sided Richardson differences of the value; deeper inside it
    // integrates the differentiated kernel.
    Vec2 radial_derivative(double nu, double theta, double step = 1e-3) const;
    // d phi / d theta via the differentiated kernel (nu > 0), or the exact
    // one-sided boundary derivative at nu = 0.
    Vec2 tangential_derivative(double nu, double theta) const;

    const DiskBoundaryMap& map() const { return gamma_; }

  private:
    struct Nodes {
        std::vector<double> t;
        std::vector<double> w;
        std::vector<Vec2> value;
    };
    const Nodes& nodes_for(double nu) const;

    DiskBoundaryMap gamma_;
    PoissonOptions options_;
    mutable std::vector<std::pair<int, Nodes>> cache_;
};

struct BoundaryDerivatives {
    Vec2 dphi_dnu;
    Vec2 gamma_prime_plus;
    Vec2 gamma_prime_minus;
};

// Normal derivative at the boundary point (0, theta) by one-sided Richardson
// extrapolation along the inward ray (steps h and h/2), plus the exact
// one-sided tangential derivatives.
BoundaryDerivatives boundary_derivatives(const DiskBoundaryMap& gamma, double theta,
                                         double step = 1e-3, const PoissonOptions& options = {});

struct ConeScanSample {
    double theta = 0.0;
    double margin_minus = 0.0; // <(dphi/dnu)^perp, gamma'_->
    double margin_plus = 0.0;
    double normal_norm = 0.0;
    bool pass = false;
};

struct ConeScanReport {
    std::vector<ConeScanSample> samples;
    bool pass = true;
    double min_margin = 0.0;
    double min_normal_norm = 0.0; // reported, not verified (hypothesis of the theorem)
    std::vector<double> failing_angles;
};

// Evaluates the boundary cone inequalities at uniformly spaced angles plus
// every junction of the map.
ConeScanReport cone_condition_scan(const DiskBoundaryMap& gamma, int samples,
                                   const PoissonOptions& options = {}, double step = 1e-3);

struct GridInjectivityReport {
    int cells = 0;
    int flipped_cells = 0;
    int overlapping_pairs = 0;
    bool pass = false;
};

// Sampled injectivity check of the harmonic extension: maps an annular grid,
// requires positive orientation of every grid cell and no overlap between
// non-adjacent cells. A sampled check, not a certificate.
GridInjectivityReport grid_injectivity_check(const DiskBoundaryMap& gamma, int n_theta, int n_nu,
                                             const PoissonOptions& options = {});

struct AnCheckSample {
    double theta = 0.0;
    double det = 0.0; // cross(dphi/dtheta, dphi/dnu) just inside the boundary
    bool det_positive = false;
    bool cone_pass = false;
};

struct AnCheckReport {
    std::vector<AnCheckSample> samples;
    int disagreements = 0;
    bool pass = false;
};

// For smooth boundary maps: the sign of det D phi near the boundary must
// agree with the cone-condition verdict at every sampled angle.
AnCheckReport alessandrini_nesi_check(const DiskBoundaryMap& gamma, int samples,
                                      double probe_nu = 0.02,
                                      const PoissonOptions& options = {});

struct ChoquetResult {
    DiskBoundaryMap map; // the witness member of the family
    double slowdown = 1.0;
    int gamma_a_vertex = -1;
    int gamma_b_vertex = -1;
    double witness_nu = 0.0;
    double witness_theta = 0.0;
    Vec2 witness_image;
    double scan_min_margin = 0.0;
};

// Boundary-map family that slows down around two boundary points whose chord
// leaves the polygon; for small enough slowdown the harmonic extension maps
// an interior point strictly outside the polygon.
ChoquetResult choquet_counterexample(const TargetPolygon& polygon,
                                     double min_slowdown = 9.5367431640625e-07, // 2^-20
                                     const PoissonOptions& options = {});

// Builds the slowed boundary map for one slowdown value (exposed for tests
// and the CLI).
DiskBoundaryMap slowed_polygon_map(const TargetPolygon& polygon, int vertex_a, int vertex_b,
                                   double slowdown);

// Scalar boundary data for the analytic lemmas: an evaluator plus the
// breakpoints the quadrature must split at.
struct ScalarBoundaryData {
    std::function<double(double)> f;
    std::vector<double> breakpoints;
};

double poisson_extend_scalar(const ScalarBoundaryData& data, double r, double t,
                             const PoissonOptions& options = {});
double poisson_tangential_derivative_scalar(const ScalarBoundaryData& data, double r, double t,
                                            const PoissonOptions& options = {});

struct MonotonicityReport {
    bool hypothesis_ok = false;
    std::vector<double> r_grid;
    std::vector<bool> holds_at_r;
    double empirical_r = 1.0; // smallest grid r from which the conclusion holds onward
    bool conclusion_tail_ok = false;
};

// Checks the harmonic-extension monotonicity transfer: if f(t) - f(s) >=
// c (t - s) on [-delta, delta], then for r close enough to 1 the extension
// satisfies F(r e^{it}) - F(r e^{is}) >= (c/2)(t - s) on [-delta/8, delta/8].
MonotonicityReport monotonicity_check(const ScalarBoundaryData& data, double c, double delta,
                                      const std::vector<double>& r_grid,
                                      const PoissonOptions& options = {});

struct ConstantAudit {
    double max_dev_half_plus_2pi_atan = 0.0; // vs 1/2 + (2/pi) arctan x
    double max_dev_half_plus_1pi_atan = 0.0; // vs 1/2 + (1/pi) arctan x
    std::string best;                        // "2/pi" or "1/pi"
};

// Measures the on-diameter profile of the harmonic extension of the
// half-circle indicator and compares it against the two candidate closed
// forms.
ConstantAudit half_disk_constant_audit(int grid = 33, const PoissonOptions& options = {});

} // namespace conetutte

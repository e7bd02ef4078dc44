#include "conetutte/certify.hpp"
#include "conetutte/cones.hpp"
#include "conetutte/disk.hpp"
#include "conetutte/error.hpp"
#include "conetutte/extension.hpp"
#include "conetutte/io.hpp"
#include "conetutte/solver.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <memory>
#include <string>

namespace ct = conetutte;

namespace {

int log_level() {
    const char* env = std::getenv("CONE_TUTTE_LOG");
    return env ? std::atoi(env) : 0;
}

void log_info(const std::string& message) {
    if (log_level() > 0) std::cerr << "[conetutte] " << message << "\n";
}

std::shared_ptr<const ct::Triangulation> load_tri(const std::string& path) {
    ct::MeshData data = ct::load_mesh_file(path);
    log_info("mesh " + path + ": " + std::to_string(data.n) + " vertices, " +
             std::to_string(data.faces.size()) + " faces");
    return std::make_shared<ct::Triangulation>(
        ct::build_triangulation(std::move(data.faces), data.n));
}

// Loads coordinates and aligns the canonical face orientation with them, so
// that externally produced drawings are judged in their own orientation.
ct::PlanarDrawing load_drawing_aligned(std::shared_ptr<const ct::Triangulation>& tri,
                                       const std::string& path) {
    auto coords = ct::load_drawing_coords(path);
    tri = ct::align_to_coords(tri, coords);
    return ct::PlanarDrawing::make(tri, std::move(coords));
}

ct::PlanarDrawing load_drawing(const std::shared_ptr<const ct::Triangulation>& tri,
                               const std::string& path) {
    return ct::PlanarDrawing::make(tri, ct::load_drawing_coords(path));
}

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitRejected = 2;

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete-harmonic embeddings into convex and non-convex polygons, "
                 "with exact injectivity certification"};
    app.set_config("--config");
    app.require_subcommand(1);

    std::uint64_t seed = 1;
    app.add_option("--seed", seed, "seed for every random choice");

    // ---- embed ----
    auto* embed = app.add_subcommand("embed", "solve the discrete Dirichlet problem");
    std::string embed_mesh, embed_polygon, embed_weights = "uniform", embed_out;
    int embed_start = 0;
    bool embed_report = false;
    embed->add_option("--mesh", embed_mesh)->required();
    embed->add_option("--polygon", embed_polygon)->required();
    embed->add_option("--weights", embed_weights,
                      "uniform | random:<seed>:<lo>:<hi> | weights.json");
    embed->add_option("--start-vertex", embed_start,
                      "polygon vertex matched with the first boundary-cycle vertex");
    embed->add_option("--out", embed_out);
    embed->add_flag("--report", embed_report, "print the cone report summary");

    // ---- certify ----
    auto* certify = app.add_subcommand("certify", "certify a piecewise-linear homeomorphism");
    std::string cert_mesh, cert_source, cert_target, cert_out;
    certify->add_option("--mesh", cert_mesh)->required();
    certify->add_option("--source", cert_source)->required();
    certify->add_option("--target", cert_target)->required();
    certify->add_option("--out", cert_out);

    // ---- cones ----
    auto* cones = app.add_subcommand("cones", "evaluate the boundary cone condition");
    std::string cones_mesh, cones_drawing, cones_weights = "uniform", cones_out, cones_svg;
    double cones_arrow = 1.0;
    cones->add_option("--mesh", cones_mesh)->required();
    cones->add_option("--drawing", cones_drawing)->required();
    cones->add_option("--weights", cones_weights);
    cones->add_option("--out", cones_out);
    cones->add_option("--svg", cones_svg);
    cones->add_option("--arrow-scale", cones_arrow);

    // ---- extend ----
    auto* extend = app.add_subcommand("extend", "convex completion of a harmonic drawing");
    std::string ext_mesh, ext_drawing, ext_weights = "uniform", ext_out, ext_svg;
    bool ext_verify = false, ext_high_ears = false;
    extend->add_option("--mesh", ext_mesh)->required();
    extend->add_option("--drawing", ext_drawing)->required();
    extend->add_option("--weights", ext_weights);
    extend->add_option("--out", ext_out);
    extend->add_option("--svg", ext_svg);
    extend->add_flag("--verify", ext_verify, "re-solve on the extension and compare");
    extend->add_flag("--highest-index-ears", ext_high_ears, "clip ears from the highest index");

    // ---- recover-weights ----
    auto* recover = app.add_subcommand("recover-weights",
                                       "positive weights certifying a homeomorphism");
    std::string rec_mesh, rec_source, rec_target, rec_out, rec_report;
    recover->add_option("--mesh", rec_mesh)->required();
    recover->add_option("--source", rec_source)->required();
    recover->add_option("--target", rec_target)->required();
    recover->add_option("--out", rec_out);
    recover->add_option("--report", rec_report, "write the cone report JSON");

    // ---- disk ----
    auto* disk = app.add_subcommand("disk", "continuous harmonic-extension checks");
    disk->require_subcommand(1);
    int disk_m = 1024;
    disk->add_option("--m", disk_m, "base quadrature resolution");

    auto* rkc = disk->add_subcommand("rkc", "sampled injectivity for a convex target");
    std::string rkc_polygon, rkc_svg, rkc_csv;
    int rkc_theta = 48, rkc_nu = 12;
    rkc->add_option("--polygon", rkc_polygon)->required();
    rkc->add_option("--theta", rkc_theta);
    rkc->add_option("--nu", rkc_nu);
    rkc->add_option("--svg", rkc_svg);
    rkc->add_option("--csv", rkc_csv);

    auto* an = disk->add_subcommand("an-check", "determinant vs cone condition, smooth maps");
    std::string an_map;
    int an_samples = 128;
    an->add_option("--map", an_map)->required();
    an->add_option("--samples", an_samples);

    auto* choquet = disk->add_subcommand("choquet", "non-convex counterexample family");
    std::string cho_polygon, cho_out, cho_svg;
    double cho_min_s = 9.5367431640625e-07;
    choquet->add_option("--polygon", cho_polygon)->required();
    choquet->add_option("--min-slowdown", cho_min_s);
    choquet->add_option("--out", cho_out);
    choquet->add_option("--svg", cho_svg);

    auto* mono = disk->add_subcommand("monotone", "boundary monotonicity transfer check");
    std::string mono_family = "linear";
    double mono_c = 1.0, mono_delta = 0.5;
    mono->add_option("--family", mono_family, "linear | step");
    mono->add_option("--c", mono_c);
    mono->add_option("--delta", mono_delta);

    // ---- render ----
    auto* render = app.add_subcommand("render", "SVG rendering of drawings and reports");
    std::string ren_mesh, ren_drawing, ren_cones_weights, ren_svg = "out.svg";
    double ren_arrow = 1.0;
    render->add_option("--mesh", ren_mesh)->required();
    render->add_option("--drawing", ren_drawing)->required();
    render->add_option("--cone-weights", ren_cones_weights,
                       "weights spec; draws force arrows when given");
    render->add_option("--svg", ren_svg);
    render->add_option("--arrow-scale", ren_arrow);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*embed) {
            auto tri = load_tri(embed_mesh);
            auto polygon = ct::TargetPolygon::from_points(ct::load_polygon_file(embed_polygon));
            ct::EdgeWeights weights = ct::make_weights(embed_weights, tri, seed);
            ct::PlanarDrawing drawing =
                ct::harmonic_embed_polygon(tri, weights, polygon, embed_start);
            ct::EmbeddingCertificate cert = ct::certify_and_mark(drawing);
            if (!embed_out.empty()) ct::save_json_atomic(embed_out, ct::drawing_to_json(drawing));
            if (embed_report) {
                ct::ConeReport report = ct::cone_condition_report(drawing, weights);
                std::cout << "cone condition: " << (report.overall ? "pass" : "fail")
                          << " (min reflex margin " << report.min_reflex_margin << ")\n";
            }
            std::cout << "embedding " << (cert.certified ? "certified" : "rejected") << "\n";
            return cert.certified ? kExitOk : kExitRejected;
        }
        if (*certify) {
            auto tri = load_tri(cert_mesh);
            ct::PlanarDrawing source = load_drawing_aligned(tri, cert_source);
            ct::PlanarDrawing target = load_drawing(tri, cert_target);
            ct::EmbeddingCertificate cert = ct::certify_homeomorphism(source, target);
            if (!cert_out.empty()) ct::save_json_atomic(cert_out, ct::certificate_to_json(cert));
            std::cout << (cert.certified ? "certified_embedding" : "rejected") << "\n";
            for (const auto& v : cert.violations) std::cout << "  " << ct::violation_to_string(v) << "\n";
            return cert.certified ? kExitOk : kExitRejected;
        }
        if (*cones) {
            auto tri = load_tri(cones_mesh);
            ct::PlanarDrawing drawing = load_drawing_aligned(tri, cones_drawing);
            ct::EdgeWeights weights = ct::make_weights(cones_weights, tri, seed);
            ct::ConeReport report = ct::cone_condition_report(drawing, weights);
            if (!cones_out.empty()) ct::save_json_atomic(cones_out, ct::cone_report_to_json(report));
            if (!cones_svg.empty()) {
                ct::SvgOptions svg;
                svg.arrow_scale = cones_arrow;
                ct::save_text_atomic(cones_svg,
                                     ct::render_drawing_svg(drawing, &report, nullptr, svg));
            }
            std::cout << "cone condition: " << (report.overall ? "pass" : "fail")
                      << " (min reflex margin " << report.min_reflex_margin << ")\n";
            return report.overall ? kExitOk : kExitRejected;
        }
        if (*extend) {
            auto tri = load_tri(ext_mesh);
            ct::PlanarDrawing drawing = load_drawing_aligned(tri, ext_drawing);
            ct::EdgeWeights weights = ct::make_weights(ext_weights, tri, seed);
            ct::ExtensionOptions opts;
            opts.highest_index_ears = ext_high_ears;
            ct::ConvexExtension extension;
            try {
                extension = ct::build_extension(drawing, weights, opts);
            } catch (const ct::Error& e) {
                if (e.code() == ct::ErrorCode::ConeConditionViolated) {
                    std::cout << e.what() << "\n";
                    return kExitRejected;
                }
                throw;
            }
            if (!ext_out.empty()) ct::save_json_atomic(ext_out, ct::extension_to_json(extension));
            if (!ext_svg.empty())
                ct::save_text_atomic(ext_svg,
                                     ct::render_drawing_svg(drawing, nullptr, &extension, {}));
            std::cout << "extension built: " << extension.delta_faces.size()
                      << " pocket triangles over " << extension.pockets.size() << " pockets\n";
            if (ext_verify) {
                ct::PlanarDrawing redo = ct::solve_extension_embedding(extension, drawing);
                double worst = 0.0;
                for (int v = 0; v < tri->vertex_count(); ++v)
                    if (extension.extended_tri->is_referenced(v))
                        worst = std::max(worst, ct::distance(redo.coords[v], drawing.coords[v]));
                double bound = 1e-8 * extension.hull.diameter();
                std::cout << "reproduction deviation " << worst << " (bound " << bound << ")\n";
                if (worst > bound) return kExitRejected;
            }
            return kExitOk;
        }
        if (*recover) {
            auto tri = load_tri(rec_mesh);
            ct::PlanarDrawing source = load_drawing_aligned(tri, rec_source);
            ct::PlanarDrawing target = load_drawing(tri, rec_target);
            ct::WeightRecovery recovery = ct::recover_weights(source, target);
            if (!rec_out.empty()) ct::save_json_atomic(rec_out, ct::weights_to_json(recovery.weights));
            if (!rec_report.empty())
                ct::save_json_atomic(rec_report, ct::cone_report_to_json(recovery.cone_report));
            std::cout << "weights recovered; max interior residual "
                      << recovery.max_interior_residual << "\n";
            return kExitOk;
        }
        if (*disk) {
            ct::PoissonOptions poisson;
            poisson.quadrature_m = disk_m;
            if (*rkc) {
                auto polygon = ct::TargetPolygon::from_points(ct::load_polygon_file(rkc_polygon));
                ct::DiskBoundaryMap map = ct::polygon_arclength_map(polygon);
                ct::GridInjectivityReport report =
                    ct::grid_injectivity_check(map, rkc_theta, rkc_nu, poisson);
                if (!rkc_svg.empty())
                    ct::save_text_atomic(rkc_svg,
                                         ct::render_disk_grid_svg(map, rkc_theta, rkc_nu, poisson));
                if (!rkc_csv.empty())
                    ct::save_text_atomic(rkc_csv, ct::disk_grid_csv(map, rkc_theta, rkc_nu, poisson));
                std::cout << "cells " << report.cells << ", flipped " << report.flipped_cells
                          << ", overlaps " << report.overlapping_pairs << " -> "
                          << (report.pass ? "pass" : "fail") << "\n";
                return report.pass ? kExitOk : kExitRejected;
            }
            if (*an) {
                ct::DiskBoundaryMap map = ct::load_boundary_map_file(an_map);
                ct::AnCheckReport report = ct::alessandrini_nesi_check(map, an_samples, 0.02, poisson);
                std::cout << "det/cone agreement: " << (report.samples.size() - report.disagreements)
                          << "/" << report.samples.size() << "\n";
                return report.pass ? kExitOk : kExitRejected;
            }
            if (*choquet) {
                auto polygon = ct::TargetPolygon::from_points(ct::load_polygon_file(cho_polygon));
                ct::ChoquetResult result = ct::choquet_counterexample(polygon, cho_min_s, poisson);
                std::cout << "witness at slowdown " << result.slowdown << ": phi("
                          << result.witness_nu << ", " << result.witness_theta << ") = ("
                          << result.witness_image.x << ", " << result.witness_image.y
                          << ") outside the polygon; scan min margin " << result.scan_min_margin
                          << "\n";
                if (!cho_out.empty()) {
                    ct::json j = ct::boundary_map_to_json(result.map);
                    j["slowdown"] = result.slowdown;
                    j["witness"] = {{"nu", result.witness_nu},
                                    {"theta", result.witness_theta},
                                    {"image", {result.witness_image.x, result.witness_image.y}},
                                    {"scan_min_margin", result.scan_min_margin}};
                    ct::save_json_atomic(cho_out, j);
                }
                if (!cho_svg.empty())
                    ct::save_text_atomic(cho_svg,
                                         ct::render_disk_grid_svg(result.map, 64, 12, poisson));
                return kExitOk;
            }
            if (*mono) {
                ct::ScalarBoundaryData data;
                if (mono_family == "linear") {
                    data.f = [](double t) { return t; };
                } else if (mono_family == "step") {
                    double edge = mono_delta + 0.1;
                    data.f = [edge](double t) { return t - 4.0 * (t > edge ? 1.0 : 0.0); };
                    data.breakpoints = {edge};
                } else {
                    ct::fail(ct::ErrorCode::UsageError, "unknown family " + mono_family);
                }
                std::vector<double> r_grid = {0.5, 0.7, 0.8, 0.9, 0.95, 0.98, 0.99};
                ct::MonotonicityReport report =
                    ct::monotonicity_check(data, mono_c, mono_delta, r_grid, poisson);
                std::cout << "hypothesis ok; conclusion holds for r >= " << report.empirical_r
                          << (report.conclusion_tail_ok ? "" : " (never on this grid)") << "\n";
                return report.conclusion_tail_ok ? kExitOk : kExitRejected;
            }
        }
        if (*render) {
            auto tri = load_tri(ren_mesh);
            ct::PlanarDrawing drawing = load_drawing_aligned(tri, ren_drawing);
            ct::SvgOptions svg;
            svg.arrow_scale = ren_arrow;
            if (!ren_cones_weights.empty()) {
                ct::EdgeWeights weights = ct::make_weights(ren_cones_weights, tri, seed);
                ct::ConeReport report = ct::cone_condition_report(drawing, weights);
                ct::save_text_atomic(ren_svg, ct::render_drawing_svg(drawing, &report, nullptr, svg));
            } else {
                ct::save_text_atomic(ren_svg, ct::render_drawing_svg(drawing, nullptr, nullptr, svg));
            }
            std::cout << "wrote " << ren_svg << "\n";
            return kExitOk;
        }
    } catch (const ct::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

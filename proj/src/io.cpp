#include "conetutte/io.hpp"

#include "conetutte/error.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace conetutte {

namespace {

void require_keys(const json& j, std::initializer_list<const char*> allowed, const char* what) {
    if (!j.is_object()) fail(ErrorCode::ParseError, std::string(what) + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) known = true;
        if (!known)
            fail(ErrorCode::ParseError,
                 std::string(what) + ": unknown key \"" + it.key() + "\"");
    }
}

void require_version(const json& j, const char* what) {
    if (!j.contains("v")) return; // missing version reads as v1
    if (!j["v"].is_number_integer() || j["v"].get<int>() != 1)
        fail(ErrorCode::ParseError, std::string(what) + ": unsupported schema version");
}

double finite_number(const json& j, const char* what) {
    if (!j.is_number()) fail(ErrorCode::ParseError, std::string(what) + ": expected a number");
    double x = j.get<double>();
    if (!std::isfinite(x)) fail(ErrorCode::ParseError, std::string(what) + ": non-finite number");
    return x;
}

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", x);
    return buf;
}

} // namespace

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::IoError, "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        fail(ErrorCode::ParseError, path + ": " + e.what());
    }
    return j;
}

void save_text_atomic(const std::string& path, const std::string& text) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorCode::IoError, "cannot open " + tmp + " for writing");
        out << text;
        if (!out) fail(ErrorCode::IoError, "write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        fail(ErrorCode::IoError, "cannot rename " + tmp + " to " + path + ": " +
                                     std::strerror(errno));
    }
}

void save_json_atomic(const std::string& path, const json& value) {
    save_text_atomic(path, value.dump(2) + "\n");
}

MeshData parse_mesh_json(const json& j) {
    require_keys(j, {"v", "n", "faces"}, "mesh");
    require_version(j, "mesh");
    MeshData data;
    if (!j.contains("n") || !j["n"].is_number_integer())
        fail(ErrorCode::ParseError, "mesh: missing integer \"n\"");
    data.n = j["n"].get<int>();
    if (!j.contains("faces") || !j["faces"].is_array())
        fail(ErrorCode::ParseError, "mesh: missing \"faces\" array");
    for (const json& f : j["faces"]) {
        if (!f.is_array() || f.size() != 3)
            fail(ErrorCode::ParseError, "mesh: each face must be a triple");
        Face face;
        for (int k = 0; k < 3; ++k) {
            if (!f[k].is_number_integer()) fail(ErrorCode::ParseError, "mesh: face index not integral");
            face[k] = f[k].get<int>();
        }
        data.faces.push_back(face);
    }
    return data;
}

json mesh_to_json(const Triangulation& tri) {
    json faces = json::array();
    for (const Face& f : tri.faces()) faces.push_back({f[0], f[1], f[2]});
    return json{{"v", 1}, {"n", tri.vertex_count()}, {"faces", faces}};
}

MeshData load_mesh_off(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::IoError, "cannot open " + path);
    std::vector<std::string> tokens;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
    }
    std::size_t pos = 0;
    auto next = [&]() -> const std::string& {
        if (pos >= tokens.size()) fail(ErrorCode::ParseError, path + ": truncated OFF file");
        return tokens[pos++];
    };
    auto next_double = [&]() {
        const std::string& t = next();
        char* end = nullptr;
        double x = std::strtod(t.c_str(), &end);
        if (end == t.c_str() || *end != '\0' || !std::isfinite(x))
            fail(ErrorCode::ParseError, path + ": bad coordinate \"" + t + "\"");
        return x;
    };
    auto next_int = [&]() {
        const std::string& t = next();
        char* end = nullptr;
        long v = std::strtol(t.c_str(), &end, 10);
        if (end == t.c_str() || *end != '\0')
            fail(ErrorCode::ParseError, path + ": bad integer \"" + t + "\"");
        return static_cast<int>(v);
    };

    if (next() != "OFF") fail(ErrorCode::ParseError, path + ": missing OFF header");
    int nv = next_int();
    int nf = next_int();
    (void)next_int(); // edge count, ignored
    if (nv <= 0 || nf <= 0) fail(ErrorCode::ParseError, path + ": empty OFF mesh");

    // Vertex rows may carry 2 or 3 coordinates; with 3, the z column must be
    // zero. Sniff the arity from the token count.
    std::size_t remaining = tokens.size() - pos;
    std::size_t count2 = static_cast<std::size_t>(2 * nv);
    bool has_z = true;
    {
        // Faces consume 4 tokens each ("3 i j k").
        std::size_t with_z = static_cast<std::size_t>(3 * nv) + static_cast<std::size_t>(4 * nf);
        std::size_t without_z = count2 + static_cast<std::size_t>(4 * nf);
        if (remaining == without_z) has_z = false;
        else if (remaining != with_z)
            fail(ErrorCode::ParseError, path + ": unexpected token count for OFF body");
    }
    MeshData data;
    data.n = nv;
    for (int v = 0; v < nv; ++v) {
        (void)next_double();
        (void)next_double();
        if (has_z) {
            double z = next_double();
            if (z != 0.0)
                fail(ErrorCode::ParseError, path + ": nonzero z coordinate; only planar OFF input is supported");
        }
    }
    for (int f = 0; f < nf; ++f) {
        int arity = next_int();
        if (arity != 3) fail(ErrorCode::ParseError, path + ": only triangle faces are supported");
        Face face{next_int(), next_int(), next_int()};
        data.faces.push_back(face);
    }
    return data;
}

MeshData load_mesh_file(const std::string& path) {
    auto dot = path.find_last_of('.');
    std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    if (ext == "off" || ext == "OFF") return load_mesh_off(path);
    return parse_mesh_json(load_json_file(path));
}

std::vector<Vec2> parse_point_list(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array())
        fail(ErrorCode::ParseError, std::string("missing \"") + key + "\" array");
    std::vector<Vec2> out;
    for (const json& p : j[key]) {
        if (!p.is_array() || p.size() != 2)
            fail(ErrorCode::ParseError, std::string(key) + ": each point must be [x, y]");
        out.push_back({finite_number(p[0], key), finite_number(p[1], key)});
    }
    return out;
}

json polygon_to_json(const std::vector<Vec2>& vertices) {
    json pts = json::array();
    for (const Vec2& p : vertices) pts.push_back({p.x, p.y});
    return json{{"v", 1}, {"vertices", pts}};
}

std::vector<Vec2> load_polygon_file(const std::string& path) {
    json j = load_json_file(path);
    require_keys(j, {"v", "vertices"}, "polygon");
    require_version(j, "polygon");
    return parse_point_list(j, "vertices");
}

json drawing_to_json(const PlanarDrawing& drawing) {
    json pts = json::array();
    for (const Vec2& p : drawing.coords) pts.push_back({p.x, p.y});
    return json{{"v", 1}, {"coords", pts}};
}

std::vector<Vec2> load_drawing_coords(const std::string& path) {
    json j = load_json_file(path);
    require_keys(j, {"v", "coords"}, "drawing");
    require_version(j, "drawing");
    return parse_point_list(j, "coords");
}

json weights_to_json(const EdgeWeights& weights) {
    json edges = json::array();
    for (const auto& [i, j, w] : weights.edge_list()) edges.push_back({i, j, w});
    return json{{"v", 1}, {"edges", edges}};
}

std::vector<std::tuple<int, int, double>> load_weight_entries(const std::string& path) {
    json j = load_json_file(path);
    require_keys(j, {"v", "edges"}, "weights");
    require_version(j, "weights");
    if (!j.contains("edges") || !j["edges"].is_array())
        fail(ErrorCode::ParseError, "weights: missing \"edges\" array");
    std::vector<std::tuple<int, int, double>> out;
    for (const json& e : j["edges"]) {
        if (!e.is_array() || e.size() != 3)
            fail(ErrorCode::ParseError, "weights: each entry must be [i, j, w]");
        if (!e[0].is_number_integer() || !e[1].is_number_integer())
            fail(ErrorCode::ParseError, "weights: edge endpoints must be integers");
        out.emplace_back(e[0].get<int>(), e[1].get<int>(), finite_number(e[2], "weights"));
    }
    return out;
}

json cone_report_to_json(const ConeReport& report) {
    json vertices = json::array();
    for (const ConeVertexReport& v : report.vertices) {
        vertices.push_back(json{{"index", v.vertex},
                                {"class", turn_class_name(v.cls)},
                                {"force", {v.force.x, v.force.y}},
                                {"margin", v.margin},
                                {"pass", v.pass}});
    }
    return json{{"v", 1},
                {"overall", report.overall},
                {"min_reflex_margin", report.min_reflex_margin},
                {"vertices", vertices}};
}

json certificate_to_json(const EmbeddingCertificate& cert) {
    json violations = json::array();
    for (const Violation& v : cert.violations) violations.push_back(violation_to_string(v));
    return json{{"v", 1},
                {"verdict", cert.certified ? "certified_embedding" : "rejected"},
                {"method", cert.method},
                {"orientation_certificate", cert.orientation_certificate},
                {"pairwise_clean", cert.pairwise_clean},
                {"violations", violations}};
}

json det_check_to_json(const DetCheck& check) {
    return json{{"v", 1},
                {"faces", check.faces},
                {"det_signs", check.signs},
                {"det_ratios", check.ratios},
                {"all_positive", check.all_positive}};
}

json extension_to_json(const ConvexExtension& ext) {
    json hull = json::array();
    for (const Vec2& p : ext.hull.vertices()) hull.push_back({p.x, p.y});
    json pockets = json::array();
    for (const auto& pocket : ext.pockets) pockets.push_back(pocket);
    json delta = json::array();
    for (const Face& f : ext.delta_faces) delta.push_back({f[0], f[1], f[2]});
    json weights = json::array();
    for (const auto& [i, j, w] : ext.extended_weights.edge_list()) weights.push_back({i, j, w});
    return json{{"v", 1},        {"trivial", ext.trivial},       {"hull", hull},
                {"pockets", pockets}, {"delta_faces", delta},    {"extended_weights", weights}};
}

json boundary_map_to_json(const DiskBoundaryMap& map) {
    json pieces = json::array();
    for (const CurvePiece& p : map.pieces()) {
        pieces.push_back(json{{"form", p.form == CurvePiece::Form::Polynomial ? "poly" : "trig"},
                              {"theta0", p.theta0},
                              {"theta1", p.theta1},
                              {"x", p.cx},
                              {"y", p.cy}});
    }
    return json{{"v", 1}, {"pieces", pieces}};
}

DiskBoundaryMap parse_boundary_map(const json& j) {
    require_keys(j, {"v", "pieces"}, "boundary map");
    require_version(j, "boundary map");
    if (!j.contains("pieces") || !j["pieces"].is_array())
        fail(ErrorCode::ParseError, "boundary map: missing \"pieces\" array");
    std::vector<CurvePiece> pieces;
    for (const json& pj : j["pieces"]) {
        require_keys(pj, {"form", "theta0", "theta1", "x", "y"}, "boundary map piece");
        CurvePiece p;
        std::string form = pj.value("form", "poly");
        if (form == "poly") p.form = CurvePiece::Form::Polynomial;
        else if (form == "trig") p.form = CurvePiece::Form::Trigonometric;
        else fail(ErrorCode::ParseError, "boundary map: unknown piece form \"" + form + "\"");
        p.theta0 = finite_number(pj.at("theta0"), "theta0");
        p.theta1 = finite_number(pj.at("theta1"), "theta1");
        for (const json& c : pj.at("x")) p.cx.push_back(finite_number(c, "x coefficient"));
        for (const json& c : pj.at("y")) p.cy.push_back(finite_number(c, "y coefficient"));
        pieces.push_back(std::move(p));
    }
    return DiskBoundaryMap::from_pieces(std::move(pieces));
}

DiskBoundaryMap load_boundary_map_file(const std::string& path) {
    return parse_boundary_map(load_json_file(path));
}

std::string disk_grid_csv(const DiskBoundaryMap& map, int n_theta, int n_nu,
                          const PoissonOptions& options) {
    PoissonEvaluator eval(map, options);
    std::ostringstream out;
    out << "nu,theta,phi_x,phi_y,dnu_x,dnu_y,dtheta_x,dtheta_y\n";
    for (int j = 0; j <= n_nu; ++j) {
        double nu = static_cast<double>(j) / (n_nu + 1);
        for (int i = 0; i < n_theta; ++i) {
            double theta = -3.14159265358979323846 + 2.0 * 3.14159265358979323846 * i / n_theta;
            Vec2 phi = (j == 0) ? map.eval(theta) : eval.value(nu, theta);
            Vec2 dn = eval.radial_derivative(nu, theta);
            Vec2 dt = (j == 0) ? map.derivative_plus(theta) : eval.tangential_derivative(nu, theta);
            out << format_double(nu) << ',' << format_double(theta) << ',' << format_double(phi.x)
                << ',' << format_double(phi.y) << ',' << format_double(dn.x) << ','
                << format_double(dn.y) << ',' << format_double(dt.x) << ',' << format_double(dt.y)
                << '\n';
        }
    }
    return out.str();
}

EdgeWeights make_weights(const std::string& spec, std::shared_ptr<const Triangulation> tri,
                         std::uint64_t default_seed) {
    if (spec == "uniform") return EdgeWeights::uniform(std::move(tri));
    if (spec == "random") return EdgeWeights::random_positive(std::move(tri), default_seed, 0.1, 10.0);
    if (spec.rfind("random:", 0) == 0) {
        std::istringstream ss(spec.substr(7));
        std::string seed_s, lo_s, hi_s;
        if (!std::getline(ss, seed_s, ':') || !std::getline(ss, lo_s, ':') ||
            !std::getline(ss, hi_s, ':'))
            fail(ErrorCode::UsageError, "random weights spec must be random:<seed>:<lo>:<hi>");
        return EdgeWeights::random_positive(std::move(tri), std::stoull(seed_s), std::stod(lo_s),
                                            std::stod(hi_s));
    }
    return EdgeWeights::from_edge_list(std::move(tri), load_weight_entries(spec));
}

namespace {

struct SvgCanvas {
    std::ostringstream body;
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    int size = 800;

    double sx(double x) const { return (x - xmin) / (xmax - xmin) * (size - 40) + 20; }
    double sy(double y) const { return (ymax - y) / (ymax - ymin) * (size - 40) + 20; }

    void fit(const std::vector<Vec2>& pts) {
        if (pts.empty()) return;
        xmin = xmax = pts[0].x;
        ymin = ymax = pts[0].y;
        for (const Vec2& p : pts) {
            xmin = std::min(xmin, p.x);
            xmax = std::max(xmax, p.x);
            ymin = std::min(ymin, p.y);
            ymax = std::max(ymax, p.y);
        }
        double dx = xmax - xmin, dy = ymax - ymin;
        if (dx <= 0) dx = 1;
        if (dy <= 0) dy = 1;
        xmin -= 0.05 * dx;
        xmax += 0.05 * dx;
        ymin -= 0.05 * dy;
        ymax += 0.05 * dy;
        double span = std::max(xmax - xmin, ymax - ymin);
        xmax = xmin + span;
        ymax = ymin + span;
    }

    void polygon(const std::vector<Vec2>& pts, const std::string& fill,
                 const std::string& stroke, double width) {
        body << "<polygon points=\"";
        for (const Vec2& p : pts) body << format_double(sx(p.x)) << ',' << format_double(sy(p.y)) << ' ';
        body << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\" stroke-width=\""
             << format_double(width) << "\"/>\n";
    }

    void line(const Vec2& a, const Vec2& b, const std::string& stroke, double width) {
        body << "<line x1=\"" << format_double(sx(a.x)) << "\" y1=\"" << format_double(sy(a.y))
             << "\" x2=\"" << format_double(sx(b.x)) << "\" y2=\"" << format_double(sy(b.y))
             << "\" stroke=\"" << stroke << "\" stroke-width=\"" << format_double(width)
             << "\"/>\n";
    }

    void circle(const Vec2& c, double r_px, const std::string& fill) {
        body << "<circle cx=\"" << format_double(sx(c.x)) << "\" cy=\"" << format_double(sy(c.y))
             << "\" r=\"" << format_double(r_px) << "\" fill=\"" << fill << "\"/>\n";
    }

    void arrow(const Vec2& from, const Vec2& dir_world, const std::string& color) {
        Vec2 to = from + dir_world;
        line(from, to, color, 1.6);
        Vec2 d = normalized(dir_world);
        Vec2 n = perp_ccw(d);
        double head = 0.012 * (xmax - xmin);
        polygon({to, to - d * head + n * (0.5 * head), to - d * head - n * (0.5 * head)}, color,
                color, 0.5);
    }

    std::string finish() const {
        std::ostringstream out;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\""
            << size << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n"
            << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
            << body.str() << "</svg>\n";
        return out.str();
    }
};

} // namespace

std::string render_drawing_svg(const PlanarDrawing& drawing, const ConeReport* cones,
                               const ConvexExtension* extension, const SvgOptions& options) {
    SvgCanvas canvas;
    canvas.size = options.size_px;
    std::vector<Vec2> all = drawing.coords;
    if (extension)
        for (const Vec2& p : extension->hull.vertices()) all.push_back(p);
    canvas.fit(all);

    if (extension && !extension->trivial) {
        canvas.polygon(extension->hull.vertices(), "#f2e8cf", "#b08968", 1.0);
        for (const Face& f : extension->delta_faces)
            canvas.polygon({drawing.coords[f[0]], drawing.coords[f[1]], drawing.coords[f[2]]},
                           "#e9edc9", "#a3b18a", 0.6);
    }
    for (const Face& f : drawing.tri->faces())
        canvas.polygon({drawing.coords[f[0]], drawing.coords[f[1]], drawing.coords[f[2]]},
                       "#dbe7f5", "#6c8ebf", 0.6);
    auto loop = drawing.boundary_points();
    for (std::size_t i = 0; i < loop.size(); ++i)
        canvas.line(loop[i], loop[(i + 1) % loop.size()], "#1d3557", 2.2);

    if (cones) {
        double scale = options.arrow_scale * 0.12 * polygon_diameter(loop);
        double fmax = 1e-300;
        for (const ConeVertexReport& v : cones->vertices) fmax = std::max(fmax, norm(v.force));
        for (const ConeVertexReport& v : cones->vertices) {
            const Vec2& p = drawing.coords[v.vertex];
            bool reflex = is_reflex(v.cls);
            if (reflex) canvas.circle(p, 5.0, v.pass ? options.pass_color : options.fail_color);
            if (norm(v.force) > 0.0)
                canvas.arrow(p, v.force * (scale / fmax),
                             v.pass || !reflex ? options.pass_color : options.fail_color);
        }
    }
    return canvas.finish();
}

std::string render_disk_grid_svg(const DiskBoundaryMap& map, int n_theta, int n_nu,
                                 const PoissonOptions& poisson, const SvgOptions& options) {
    PoissonEvaluator eval(map, poisson);
    SvgCanvas canvas;
    canvas.size = options.size_px;

    std::vector<std::vector<Vec2>> grid(static_cast<std::size_t>(n_nu + 1));
    std::vector<Vec2> all;
    for (int j = 0; j <= n_nu; ++j) {
        double nu = static_cast<double>(j) / (n_nu + 1);
        grid[j].resize(static_cast<std::size_t>(n_theta));
        for (int i = 0; i < n_theta; ++i) {
            double theta = -3.14159265358979323846 + 2.0 * 3.14159265358979323846 * i / n_theta;
            grid[j][i] = (j == 0) ? map.eval(theta) : eval.value(nu, theta);
            all.push_back(grid[j][i]);
        }
    }
    canvas.fit(all);
    for (int j = 0; j <= n_nu; ++j)
        for (int i = 0; i < n_theta; ++i) {
            canvas.line(grid[j][i], grid[j][(i + 1) % n_theta], "#6c8ebf", 0.7);
            if (j < n_nu) canvas.line(grid[j][i], grid[j + 1][i], "#a2b8d8", 0.7);
        }
    // Normal-derivative arrows along the boundary.
    double diam = polygon_diameter(grid[0]);
    for (int i = 0; i < n_theta; i += std::max(1, n_theta / 48)) {
        double theta = -3.14159265358979323846 + 2.0 * 3.14159265358979323846 * i / n_theta;
        Vec2 n = eval.radial_derivative(0.0, theta);
        if (norm(n) > 0.0)
            canvas.arrow(grid[0][i], n * (options.arrow_scale * 0.06 * diam / norm(n)),
                         options.fail_color);
    }
    return canvas.finish();
}

} // namespace conetutte

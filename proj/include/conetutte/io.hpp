#pragma once

#include "conetutte/certify.hpp"
#include "conetutte/cones.hpp"
#include "conetutte/disk.hpp"
#include "conetutte/extension.hpp"
#include "conetutte/mesh.hpp"
#include "conetutte/weights.hpp"

#include <json.hpp>

#include <string>
#include <tuple>
#include <vector>

namespace conetutte {

using nlohmann::json;

// All JSON artifacts carry a top-level version field "v" and reject unknown
// keys. Writers are atomic: data lands in a temp file that is renamed over
// the destination, so no partial artifact survives an error.

json load_json_file(const std::string& path);
void save_json_atomic(const std::string& path, const json& value);
void save_text_atomic(const std::string& path, const std::string& text);

struct MeshData {
    int n = 0;
    std::vector<Face> faces;
};

MeshData parse_mesh_json(const json& j);
json mesh_to_json(const Triangulation& tri);
MeshData load_mesh_off(const std::string& path);
// Dispatch by extension: .off or .json.
MeshData load_mesh_file(const std::string& path);

std::vector<Vec2> parse_point_list(const json& j, const char* key);
json polygon_to_json(const std::vector<Vec2>& vertices);
std::vector<Vec2> load_polygon_file(const std::string& path);

json drawing_to_json(const PlanarDrawing& drawing);
std::vector<Vec2> load_drawing_coords(const std::string& path);

json weights_to_json(const EdgeWeights& weights);
std::vector<std::tuple<int, int, double>> load_weight_entries(const std::string& path);

json cone_report_to_json(const ConeReport& report);
json certificate_to_json(const EmbeddingCertificate& cert);
json det_check_to_json(const DetCheck& check);
json extension_to_json(const ConvexExtension& ext);

json boundary_map_to_json(const DiskBoundaryMap& map);
DiskBoundaryMap parse_boundary_map(const json& j);
DiskBoundaryMap load_boundary_map_file(const std::string& path);

std::string disk_grid_csv(const DiskBoundaryMap& map, int n_theta, int n_nu,
                          const PoissonOptions& options = {});

// "uniform", "random" (seeded by default_seed, range [0.1, 10]),
// "random:<seed>:<lo>:<hi>", or a path to a weights JSON file.
EdgeWeights make_weights(const std::string& spec, std::shared_ptr<const Triangulation> tri,
                         std::uint64_t default_seed = 1);

struct SvgOptions {
    double arrow_scale = 1.0;
    int size_px = 800;
    std::string pass_color = "#2f9e44";
    std::string fail_color = "#d0342c";
};

std::string render_drawing_svg(const PlanarDrawing& drawing, const ConeReport* cones,
                               const ConvexExtension* extension, const SvgOptions& options = {});
std::string render_disk_grid_svg(const DiskBoundaryMap& map, int n_theta, int n_nu,
                                 const PoissonOptions& poisson = {},
                                 const SvgOptions& options = {});

} // namespace conetutte

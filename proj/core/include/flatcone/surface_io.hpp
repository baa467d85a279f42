#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "flatcone/surface.hpp"

namespace flatcone {

/// Parses the surface JSON format:
///
///   { "polygons": [ { "id": 0, "vertices": [[x, y], ...] }, ... ],
///     "gluings":  [ { "from": [chart_id, edge], "to": [chart_id, edge],
///                     "rotation_pi": [num, den], "translation": [x, y] }, ... ] }
///
/// Chart references use polygon ids. "translation" and "rotation_pi" are
/// optional and inferred from the edge endpoints when absent.
/// Malformed JSON throws SurfaceError with code Parse; geometric problems
/// throw the corresponding SurfaceErrc.
FlatConeSurface parse_surface(std::string_view json_text, const BuildOptions& options = {});

FlatConeSurface load_surface(const std::filesystem::path& path, const BuildOptions& options = {});

/// Serialises the charts and resolved gluings (rotation and translation always written).
std::string surface_to_json(const FlatConeSurface& surface);

/// Copy of the surface with every coordinate multiplied by factor (> 0).
FlatConeSurface scaled(const FlatConeSurface& surface, double factor);

}  // namespace flatcone

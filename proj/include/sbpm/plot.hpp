#pragma once

#include <string>
#include <vector>

#include "sbpm/data.hpp"

namespace sbpm {

/// One scatter layer: a role label ("train", "test", "synth", ...) and its
/// 2d numeric dataset. Marker style and color follow the layer's position.
struct PlotLayer {
    std::string role;
    const Dataset* data = nullptr;
};

/// Static SVG scatter of the layers with the outlier circle overlaid at
/// circle_radius (skipped when <= 0). Coincident points are drawn once with
/// a multiplicity annotation. Output bytes are deterministic for fixed
/// inputs. Requires every layer to be 2d numeric.
std::string render_scatter_svg(const std::vector<PlotLayer>& layers, double circle_radius);

}  // namespace sbpm

#pragma once

#include "specmap/cube.hpp"
#include "specmap/grid.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace specmap {

enum class MaskPolicy { all_cells, exclude_buildings };

const char* to_string(MaskPolicy policy);
MaskPolicy parse_mask_policy(const std::string& name);

/// RMSE of one estimate against its truth, in dB.
struct EvalReport {
    MaskPolicy mask = MaskPolicy::all_cells;
    std::vector<double> layer_rmse;
    std::vector<std::size_t> layer_cells; ///< cells included per layer
    double overall_rmse = 0.0;            ///< pooled over all included cells of all layers
    std::size_t overall_cells = 0;
};

/// sqrt(sum (E - P)^2 / #included). `city` is required for
/// MaskPolicy::exclude_buildings and ignored otherwise.
EvalReport rmse(const FrequencySpaceCube& estimate, const FrequencySpaceCube& truth,
                MaskPolicy mask = MaskPolicy::all_cells, const BinaryMap* city = nullptr);

/// 8-bit grayscale binary PGM (P5). Values map linearly from [lo, hi] to
/// [0, 255], rounded half up and clamped; row i is the i-th image row.
std::vector<std::uint8_t> render_layer(const RealMap& map, double lo = -150.0, double hi = -20.0);

} // namespace specmap

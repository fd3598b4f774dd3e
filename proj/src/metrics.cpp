#include "specmap/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace specmap {

const char* to_string(MaskPolicy policy)
{
    return policy == MaskPolicy::all_cells ? "all_cells" : "exclude_buildings";
}

MaskPolicy parse_mask_policy(const std::string& name)
{
    if (name == "all_cells") return MaskPolicy::all_cells;
    if (name == "exclude_buildings") return MaskPolicy::exclude_buildings;
    throw std::invalid_argument("unknown mask policy '" + name + "' (expected all_cells or exclude_buildings)");
}

EvalReport rmse(const FrequencySpaceCube& estimate, const FrequencySpaceCube& truth, MaskPolicy mask,
                const BinaryMap* city)
{
    if (!estimate.same_shape(truth)) throw std::invalid_argument("rmse: cube shapes differ");
    if (mask == MaskPolicy::exclude_buildings && (city == nullptr || city->size() != truth.size()))
        throw std::invalid_argument("rmse: exclude_buildings needs a city map of matching size");

    EvalReport report;
    report.mask = mask;
    double total = 0.0;
    const int n = truth.size();
    for (int k = 0; k < truth.layers(); ++k) {
        double sum = 0.0;
        std::size_t count = 0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (mask == MaskPolicy::exclude_buildings && (*city)(i, j) != 0) continue;
                const double d = estimate(k, i, j) - truth(k, i, j);
                sum += d * d;
                ++count;
            }
        }
        report.layer_rmse.push_back(count > 0 ? std::sqrt(sum / static_cast<double>(count)) : 0.0);
        report.layer_cells.push_back(count);
        total += sum;
        report.overall_cells += count;
    }
    report.overall_rmse = report.overall_cells > 0 ? std::sqrt(total / static_cast<double>(report.overall_cells)) : 0.0;
    return report;
}

std::vector<std::uint8_t> render_layer(const RealMap& map, double lo, double hi)
{
    if (!(lo < hi)) throw std::invalid_argument("render_layer: lo must be below hi");
    const int n = map.size();
    const std::string header = "P5\n" + std::to_string(n) + " " + std::to_string(n) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(header.size() + map.cell_count());
    for (double v : map.values()) {
        double scaled = std::floor((v - lo) / (hi - lo) * 255.0 + 0.5);
        if (std::isnan(scaled)) scaled = 0.0;
        out.push_back(static_cast<std::uint8_t>(std::clamp(scaled, 0.0, 255.0)));
    }
    return out;
}

} // namespace specmap

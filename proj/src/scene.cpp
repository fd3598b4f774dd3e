#include "specmap/scene.hpp"

#include "specmap/random.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace specmap {

int SceneConfig::target_index() const
{
    const auto it = std::find(frequencies_mhz.begin(), frequencies_mhz.end(), target_mhz);
    if (it == frequencies_mhz.end())
        throw std::invalid_argument("target frequency " + std::to_string(target_mhz) +
                                    " MHz is not in the frequency list");
    return static_cast<int>(it - frequencies_mhz.begin());
}

void SceneConfig::validate() const
{
    (void)grid(); // throws on a bad side length or cell count
    if (frequencies_mhz.empty()) throw std::invalid_argument("frequency list is empty");
    if (frequencies_mhz.size() > 255) throw std::invalid_argument("at most 255 frequencies supported");
    for (std::size_t k = 0; k < frequencies_mhz.size(); ++k) {
        if (!(frequencies_mhz[k] > 0.0)) throw std::invalid_argument("frequencies must be positive");
        if (k > 0 && !(frequencies_mhz[k] > frequencies_mhz[k - 1]))
            throw std::invalid_argument("frequencies must be strictly ascending");
    }
    (void)target_index();
    if (buildings_min < 0 || buildings_max < buildings_min)
        throw std::invalid_argument("building count bounds must satisfy 0 <= min <= max");
    if (!(building_side_min_cells > 0.0) || building_side_max_cells < building_side_min_cells)
        throw std::invalid_argument("building side bounds must satisfy 0 < min <= max");
    if (building_side_max_cells > cells_per_side)
        throw std::invalid_argument("building side may not exceed the area side");
    if (transmitters_min < 1 || transmitters_max < transmitters_min)
        throw std::invalid_argument("transmitter count bounds must satisfy 1 <= min <= max");
    if (!std::isfinite(power_min_dbm) || !std::isfinite(power_max_dbm) || power_max_dbm < power_min_dbm)
        throw std::invalid_argument("power bounds must satisfy min <= max");
    if (max_layout_attempts < 1) throw std::invalid_argument("max_layout_attempts must be >= 1");
}

Scene::Scene(GridSpec grid, BinaryMap buildings, std::vector<Transmitter> transmitters,
             std::vector<double> frequencies_mhz, int target_index, std::uint64_t seed)
    : grid_(grid), buildings_(std::move(buildings)), transmitters_(std::move(transmitters)),
      frequencies_(std::move(frequencies_mhz)), target_index_(target_index), seed_(seed)
{
    if (buildings_.size() != grid_.cells_per_side())
        throw std::invalid_argument("Scene: building map does not match grid");
    if (frequencies_.empty()) throw std::invalid_argument("Scene: no frequencies");
    for (std::size_t k = 1; k < frequencies_.size(); ++k)
        if (!(frequencies_[k] > frequencies_[k - 1]))
            throw std::invalid_argument("Scene: frequencies must be strictly ascending");
    if (target_index_ < 0 || target_index_ >= layer_count())
        throw std::invalid_argument("Scene: target index out of range");
    if (transmitters_.empty()) throw std::invalid_argument("Scene: at least one transmitter required");
    for (const auto& tx : transmitters_) {
        if (!grid_.contains(tx.cell)) throw std::invalid_argument("Scene: transmitter outside grid");
        if (buildings_[tx.cell] != 0) throw std::invalid_argument("Scene: transmitter inside a building");
        if (tx.mode == FrequencyMode::single && (tx.frequency_index < 0 || tx.frequency_index >= layer_count()))
            throw std::invalid_argument("Scene: transmitter frequency index out of range");
    }
}

std::size_t Scene::free_cell_count() const
{
    const auto v = buildings_.values();
    return static_cast<std::size_t>(std::count(v.begin(), v.end(), std::uint8_t{0}));
}

BinaryMap rasterize_buildings(const GridSpec& grid, const std::vector<Rectangle>& rects)
{
    const int n = grid.cells_per_side();
    BinaryMap occupied(n, 0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Point c = cell_center(grid, i, j);
            for (const auto& r : rects) {
                if (c.x >= r.x0 && c.x < r.x1 && c.y >= r.y0 && c.y < r.y1) {
                    occupied(i, j) = 1;
                    break;
                }
            }
        }
    }
    return occupied;
}

Scene generate_scene(const SceneConfig& config, std::uint64_t seed)
{
    config.validate();
    const GridSpec grid = config.grid();
    const double dd = grid.interval();
    const double side = grid.side_meters();
    Rng rng(seed);

    BinaryMap buildings;
    std::vector<CellIndex> free_cells;
    for (int attempt = 0; attempt < config.max_layout_attempts; ++attempt) {
        const auto count = rng.uniform_int(config.buildings_min, config.buildings_max);
        std::vector<Rectangle> rects;
        rects.reserve(static_cast<std::size_t>(count));
        for (std::int64_t b = 0; b < count; ++b) {
            const double w = rng.uniform_real(config.building_side_min_cells, config.building_side_max_cells) * dd;
            const double h = rng.uniform_real(config.building_side_min_cells, config.building_side_max_cells) * dd;
            const double x0 = rng.uniform_real(0.0, side - w);
            const double y0 = rng.uniform_real(0.0, side - h);
            rects.push_back({x0, y0, x0 + w, y0 + h});
        }
        buildings = rasterize_buildings(grid, rects);

        free_cells.clear();
        for (int i = 0; i < grid.cells_per_side(); ++i)
            for (int j = 0; j < grid.cells_per_side(); ++j)
                if (buildings(i, j) == 0) free_cells.push_back({i, j});
        if (!free_cells.empty()) break;
    }
    if (free_cells.empty())
        throw std::runtime_error("generate_scene: buildings cover every cell after " +
                                 std::to_string(config.max_layout_attempts) + " layout attempts");

    const int layers = static_cast<int>(config.frequencies_mhz.size());
    const auto tx_count = rng.uniform_int(config.transmitters_min, config.transmitters_max);
    std::vector<Transmitter> transmitters;
    transmitters.reserve(static_cast<std::size_t>(tx_count));
    for (std::int64_t t = 0; t < tx_count; ++t) {
        Transmitter tx;
        tx.cell = free_cells[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(free_cells.size()) - 1))];
        tx.power_dbm = rng.uniform_real(config.power_min_dbm, config.power_max_dbm);
        if (config.broadband) {
            tx.mode = FrequencyMode::broadband;
        } else {
            tx.mode = FrequencyMode::single;
            tx.frequency_index = static_cast<int>(rng.uniform_int(0, layers - 1));
        }
        transmitters.push_back(tx);
    }

    return Scene(grid, std::move(buildings), std::move(transmitters), config.frequencies_mhz,
                 config.target_index(), seed);
}

} // namespace specmap

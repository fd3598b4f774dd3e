#pragma once

#include "specmap/grid.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace specmap {

/// A transmitter either emits on one frequency of the scene's set or on all
/// of them ("broadband").
enum class FrequencyMode { single, broadband };

struct Transmitter {
    CellIndex cell;
    double power_dbm = 0.0;
    FrequencyMode mode = FrequencyMode::single;
    int frequency_index = 0; ///< meaningful for FrequencyMode::single only

    bool emits_on(int layer) const { return mode == FrequencyMode::broadband || frequency_index == layer; }

    friend bool operator==(const Transmitter&, const Transmitter&) = default;
};

/// Axis-aligned building footprint in meters, [x0, x1) x [y0, y1).
struct Rectangle {
    double x0 = 0.0;
    double y0 = 0.0;
    double x1 = 0.0;
    double y1 = 0.0;
};

/// Parameters of the randomized city generator. Defaults reproduce the
/// 256 m / 64 x 64 experiment with F = {900, 1500, 1800, 2100} MHz and
/// 1800 MHz as the unobserved target.
struct SceneConfig {
    double side_meters = 256.0;
    int cells_per_side = 64;
    std::vector<double> frequencies_mhz{900.0, 1500.0, 1800.0, 2100.0};
    double target_mhz = 1800.0;

    int buildings_min = 3;
    int buildings_max = 12;
    double building_side_min_cells = 4.0;
    double building_side_max_cells = 16.0;

    int transmitters_min = 1;
    int transmitters_max = 5;
    double power_min_dbm = 10.0;
    double power_max_dbm = 30.0;

    bool broadband = false;

    /// Layout redraws allowed when buildings leave no free cell.
    int max_layout_attempts = 8;

    GridSpec grid() const { return {side_meters, cells_per_side}; }

    /// Index of target_mhz inside frequencies_mhz; throws if absent.
    int target_index() const;

    /// Throws std::invalid_argument describing the first out-of-range field.
    void validate() const;
};

class Scene {
public:
    Scene(GridSpec grid, BinaryMap buildings, std::vector<Transmitter> transmitters,
          std::vector<double> frequencies_mhz, int target_index, std::uint64_t seed);

    const GridSpec& grid() const { return grid_; }
    const BinaryMap& buildings() const { return buildings_; }
    const std::vector<Transmitter>& transmitters() const { return transmitters_; }
    const std::vector<double>& frequencies_mhz() const { return frequencies_; }
    int target_index() const { return target_index_; }
    int layer_count() const { return static_cast<int>(frequencies_.size()); }
    std::uint64_t seed() const { return seed_; }

    std::size_t free_cell_count() const;

    friend bool operator==(const Scene&, const Scene&) = default;

private:
    GridSpec grid_;
    BinaryMap buildings_;
    std::vector<Transmitter> transmitters_;
    std::vector<double> frequencies_;
    int target_index_;
    std::uint64_t seed_;
};

/// Marks every cell whose center lies in one of the rectangles.
BinaryMap rasterize_buildings(const GridSpec& grid, const std::vector<Rectangle>& rects);

/// Draws a random scene. Pure in (config, seed).
Scene generate_scene(const SceneConfig& config, std::uint64_t seed);

} // namespace specmap

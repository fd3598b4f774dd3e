#pragma once

#include "specmap/cube.hpp"
#include "specmap/grid.hpp"
#include "specmap/scene.hpp"

namespace specmap {

/// Log-distance model with per-cell wall penetration and optional
/// spatially correlated log-normal shadowing.
struct PropagationParams {
    double path_loss_exponent = 3.0;
    double wall_loss_per_cell = 2.0;  ///< dB per occupied cell crossed
    double wall_loss_cap = 60.0;      ///< dB
    double reference_distance = 1.0;  ///< m
    double noise_floor = -150.0;      ///< dBm
    double shadowing_sigma = 0.0;     ///< dB, 0 disables shadowing
    double shadowing_correlation_cells = 8.0;

    void validate() const;
};

/// Free-space loss at 1 m for a frequency in MHz: 20 log10(f) - 27.55.
double reference_loss_db(double freq_mhz);

/// Total path loss in dB. `distance` is clamped below at `min_distance`
/// (half a cell interval in the ground-truth computation).
double path_loss_db(double freq_mhz, double distance, int walls_crossed, const PropagationParams& params,
                    double min_distance = 0.0);

/// Occupied cells whose interior the segment center(a) -> center(b) passes
/// through, not counting a and b. Exact integer grid traversal; a segment
/// passing exactly through a cell corner enters neither side cell.
int count_wall_crossings(const BinaryMap& buildings, CellIndex a, CellIndex b);

/// Zero-mean field with standard deviation `sigma` (dB), obtained by
/// smoothing white Gaussian noise with a periodic Gaussian kernel of
/// standard deviation `correlation_cells`.
RealMap correlated_shadowing(int n, double sigma, double correlation_cells, std::uint64_t seed);

/// Ground-truth received-power cube P for every layer of the scene. Linear
/// superposition of all transmitters that emit on a layer, clamped at the
/// noise floor. Deterministic in (scene, params).
FrequencySpaceCube compute_ground_truth(const Scene& scene, const PropagationParams& params);

} // namespace specmap

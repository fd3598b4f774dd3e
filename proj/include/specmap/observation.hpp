#pragma once

#include "specmap/cube.hpp"
#include "specmap/grid.hpp"
#include "specmap/scene.hpp"

#include <cstdint>
#include <vector>

namespace specmap {

/// Receiver placement for one scene. All sampled frequencies share the
/// same receiver cells.
struct SamplingPlan {
    double density = 0.0;
    std::vector<CellIndex> receiver_cells; ///< sorted, distinct, building-free
};

/// Binary city map Z (1 where a building occupies the cell) and binary
/// sampling-location map M (1 where the cell holds a receiver).
struct SemanticMaps {
    BinaryMap city;
    BinaryMap sampling;
};

/// Number of receivers for a density: round(density * free_cells), halves
/// rounded away from zero.
std::size_t receiver_count(double density, std::size_t free_cells);

/// Uniform sample without replacement of free cells. Throws
/// std::invalid_argument for a density outside (0, 1] or one that yields no
/// receiver.
SamplingPlan place_receivers(const Scene& scene, double density, std::uint64_t seed);

/// Incomplete cube S: truth at receiver cells on sampled layers, 0 elsewhere,
/// and an all-zero target layer.
FrequencySpaceCube build_incomplete_cube(const FrequencySpaceCube& truth, const SamplingPlan& plan,
                                         int target_index);

/// Adds i.i.d. N(0, sigma^2) dB noise to the observed entries of S.
void add_measurement_noise(FrequencySpaceCube& incomplete, const SamplingPlan& plan, int target_index,
                           double sigma, std::uint64_t seed);

SemanticMaps build_semantics(const Scene& scene, const SamplingPlan& plan);

/// Z and M replicated along the frequency axis, `layers` identical copies
/// each, in cube order (layer-major, then row-major).
struct StackedSemantics {
    int size = 0;
    int layers = 0;
    std::vector<std::uint8_t> city;
    std::vector<std::uint8_t> sampling;
};

StackedSemantics stack_semantics_3d(const SemanticMaps& maps, int layers);

} // namespace specmap

#pragma once

#include "specmap/config.hpp"
#include "specmap/cube.hpp"
#include "specmap/dataset.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace specmap {

/// Seed streams split off each scene seed.
inline constexpr std::uint64_t kReceiverStream = 1;
inline constexpr std::uint64_t kMeasurementNoiseStream = 2;

/// Scene seed for record `scene_index` of a dataset drawn from `master_seed`.
std::uint64_t scene_seed(std::uint64_t master_seed, std::uint64_t scene_index);

/// Scene, ground truth, receivers, S and semantic maps for one record; cube
/// values rounded to f32 so the record survives the file format unchanged.
ScenarioRecord make_scenario_record(const ExperimentConfig& config, std::uint64_t master_seed,
                                    std::uint64_t scene_index, double density);

/// Records 0 .. scenes-1. Work is split over `threads` workers (0 picks
/// the hardware concurrency); output is independent of the thread count.
std::vector<ScenarioRecord> generate_dataset(const ExperimentConfig& config, std::size_t scenes, double density,
                                             std::uint64_t master_seed, unsigned threads = 0);

enum class Method { idw, knn, kriging };

const char* to_string(Method m);
/// Throws std::invalid_argument listing the valid names.
Method parse_method(const std::string& name);

struct ReconstructOptions {
    Method method = Method::kriging;
    double side_meters = 256.0; ///< area side; the files only carry N
    double idw_power = 2.0;
    int knn_k = 5;
    int kriging_neighbors = 32;
    bool force_zero_nugget = false;
};

struct ReconstructDiagnostics {
    double max_weight_sum_error = 0.0;
    std::size_t jittered_cells = 0;
    std::size_t degenerate_fits = 0;
};

/// Estimates every sampled layer from S and M with the chosen method, then
/// infers the target layer with complete_target_layer. Returns E.
FrequencySpaceCube reconstruct_record(const ScenarioRecord& record, const ReconstructOptions& options,
                                      ReconstructDiagnostics* diagnostics = nullptr);

std::vector<PredictionRecord> reconstruct_dataset(const std::vector<ScenarioRecord>& records,
                                                  const ReconstructOptions& options, unsigned threads = 0,
                                                  ReconstructDiagnostics* diagnostics = nullptr);

} // namespace specmap

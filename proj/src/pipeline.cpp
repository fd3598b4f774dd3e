#include "specmap/pipeline.hpp"

#include "parallel.hpp"
#include "specmap/completion.hpp"
#include "specmap/interpolation.hpp"
#include "specmap/kriging.hpp"
#include "specmap/observation.hpp"
#include "specmap/propagation.hpp"
#include "specmap/random.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace specmap {

std::uint64_t scene_seed(std::uint64_t master_seed, std::uint64_t scene_index)
{
    return derive_seed(master_seed, scene_index);
}

ScenarioRecord make_scenario_record(const ExperimentConfig& config, std::uint64_t master_seed,
                                    std::uint64_t scene_index, double density)
{
    const std::uint64_t seed = scene_seed(master_seed, scene_index);
    const Scene scene = generate_scene(config.scene, seed);
    FrequencySpaceCube truth = compute_ground_truth(scene, config.propagation);
    quantize_to_f32(truth);

    const SamplingPlan plan = place_receivers(scene, density, derive_seed(seed, kReceiverStream));
    FrequencySpaceCube incomplete = build_incomplete_cube(truth, plan, scene.target_index());
    add_measurement_noise(incomplete, plan, scene.target_index(), config.measurement_noise_sigma,
                          derive_seed(seed, kMeasurementNoiseStream));
    quantize_to_f32(incomplete);
    SemanticMaps maps = build_semantics(scene, plan);

    ScenarioRecord rec;
    rec.scene_id = scene_index;
    rec.density = static_cast<float>(density);
    rec.seed = seed;
    for (double f : scene.frequencies_mhz()) rec.frequencies_mhz.push_back(static_cast<float>(f));
    rec.target_index = scene.target_index();
    rec.truth = std::move(truth);
    rec.incomplete = std::move(incomplete);
    rec.city = std::move(maps.city);
    rec.sampling = std::move(maps.sampling);
    return rec;
}

std::vector<ScenarioRecord> generate_dataset(const ExperimentConfig& config, std::size_t scenes, double density,
                                             std::uint64_t master_seed, unsigned threads)
{
    config.validate();
    std::vector<ScenarioRecord> records(scenes);
    detail::parallel_for(scenes, threads, [&](std::size_t k) {
        records[k] = make_scenario_record(config, master_seed, k, density);
    });
    return records;
}

const char* to_string(Method m)
{
    switch (m) {
    case Method::idw: return "idw";
    case Method::knn: return "knn";
    case Method::kriging: return "kriging";
    }
    return "unknown";
}

Method parse_method(const std::string& name)
{
    if (name == "idw") return Method::idw;
    if (name == "knn") return Method::knn;
    if (name == "kriging") return Method::kriging;
    throw std::invalid_argument("unknown method '" + name + "' (valid: idw, knn, kriging)");
}

FrequencySpaceCube reconstruct_record(const ScenarioRecord& record, const ReconstructOptions& options,
                                      ReconstructDiagnostics* diagnostics)
{
    const int n = record.size();
    const int layers = record.layers();
    if (n <= 0 || layers <= 0) throw std::invalid_argument("reconstruct_record: empty record");
    const GridSpec grid(options.side_meters, n);

    FrequencySpaceCube estimate(n, layers, 0.0);
    for (int k = 0; k < layers; ++k) {
        if (k == record.target_index) continue;
        const SampleList samples = samples_from_layer(record.incomplete, record.sampling, k);
        switch (options.method) {
        case Method::idw: estimate.set_layer(k, idw_reconstruct(samples, grid, options.idw_power)); break;
        case Method::knn: estimate.set_layer(k, knn_reconstruct(samples, grid, options.knn_k)); break;
        case Method::kriging: {
            const auto bins = empirical_variogram(samples, grid);
            VariogramFit fit = fit_variogram(bins, grid);
            if (options.force_zero_nugget) fit.model.nugget = 0.0;
            const KrigingResult kr = kriging_reconstruct(samples, grid, fit.model, options.kriging_neighbors);
            estimate.set_layer(k, kr.map);
            if (diagnostics != nullptr) {
                diagnostics->max_weight_sum_error = std::max(diagnostics->max_weight_sum_error, kr.max_weight_sum_error);
                diagnostics->jittered_cells += kr.jittered_cells;
                if (fit.degenerate) ++diagnostics->degenerate_fits;
            }
            break;
        }
        }
    }
    estimate.set_layer(record.target_index,
                       complete_target_layer(estimate, record.frequencies_mhz, record.target_index));
    return estimate;
}

std::vector<PredictionRecord> reconstruct_dataset(const std::vector<ScenarioRecord>& records,
                                                  const ReconstructOptions& options, unsigned threads,
                                                  ReconstructDiagnostics* diagnostics)
{
    std::vector<PredictionRecord> out(records.size());
    std::mutex diag_mutex;
    detail::parallel_for(records.size(), threads, [&](std::size_t k) {
        ReconstructDiagnostics local;
        out[k].scene_id = records[k].scene_id;
        out[k].estimate = reconstruct_record(records[k], options, &local);
        if (diagnostics != nullptr) {
            std::lock_guard lock(diag_mutex);
            diagnostics->max_weight_sum_error = std::max(diagnostics->max_weight_sum_error, local.max_weight_sum_error);
            diagnostics->jittered_cells += local.jittered_cells;
            diagnostics->degenerate_fits += local.degenerate_fits;
        }
    });
    return out;
}

} // namespace specmap

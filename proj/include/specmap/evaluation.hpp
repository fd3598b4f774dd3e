#pragma once

#include "specmap/dataset.hpp"
#include "specmap/metrics.hpp"

#include <string>
#include <vector>

namespace specmap {

struct LabeledPredictions {
    std::string label;
    std::vector<PredictionRecord> records;
};

/// One CSV row. Per-scene rows carry the scene id; aggregate rows carry
/// scene_id "aggregate" and pool squared errors over every scene of the
/// same (density, method). `layer` is a frequency in MHz or "all".
struct EvalRow {
    std::string scene_id;
    float density = 0.0f;
    std::string method;
    std::string layer;
    double rmse_db = 0.0;
    std::size_t cells = 0;
};

/// Joins each prediction set to the truth records by scene id. Throws
/// std::invalid_argument if a prediction has no matching scene, a scene has
/// no prediction, an id repeats, or shapes disagree.
std::vector<EvalRow> evaluate(const std::vector<ScenarioRecord>& truth,
                              const std::vector<LabeledPredictions>& predictions,
                              MaskPolicy mask = MaskPolicy::all_cells);

/// Header `scene_id,density,method,layer_freq_mhz,rmse_db`, fixed-precision
/// numbers, so identical inputs give identical bytes.
std::string format_eval_csv(const std::vector<EvalRow>& rows);

std::string format_frequency(double mhz);

} // namespace specmap

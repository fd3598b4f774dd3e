#include "specmap/evaluation.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <tuple>
#include <stdexcept>
#include <unordered_map>

namespace specmap {

std::string format_frequency(double mhz)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, mhz);
    return std::string(buf, ptr);
}

std::vector<EvalRow> evaluate(const std::vector<ScenarioRecord>& truth,
                              const std::vector<LabeledPredictions>& predictions, MaskPolicy mask)
{
    std::unordered_map<std::uint64_t, std::size_t> by_id;
    for (std::size_t r = 0; r < truth.size(); ++r)
        if (!by_id.emplace(truth[r].scene_id, r).second)
            throw std::invalid_argument("truth dataset repeats scene_id " + std::to_string(truth[r].scene_id));

    struct Pool {
        double sum_sq = 0.0;
        std::size_t cells = 0;
    };
    // (density, method order, layer index or -1 for all) -> pooled squared error
    std::map<std::tuple<float, std::size_t, int>, Pool> pools;

    std::vector<EvalRow> rows;
    for (std::size_t p = 0; p < predictions.size(); ++p) {
        const auto& set = predictions[p];
        std::vector<const PredictionRecord*> matched(truth.size(), nullptr);
        for (const auto& pred : set.records) {
            const auto it = by_id.find(pred.scene_id);
            if (it == by_id.end())
                throw std::invalid_argument("predictions '" + set.label + "': scene_id " +
                                            std::to_string(pred.scene_id) + " not in truth dataset");
            if (matched[it->second] != nullptr)
                throw std::invalid_argument("predictions '" + set.label + "': scene_id " +
                                            std::to_string(pred.scene_id) + " appears twice");
            matched[it->second] = &pred;
        }
        for (std::size_t r = 0; r < truth.size(); ++r) {
            const ScenarioRecord& rec = truth[r];
            if (matched[r] == nullptr)
                throw std::invalid_argument("predictions '" + set.label + "': no prediction for scene_id " +
                                            std::to_string(rec.scene_id));
            if (!matched[r]->estimate.same_shape(rec.truth))
                throw std::invalid_argument("predictions '" + set.label + "': shape mismatch for scene_id " +
                                            std::to_string(rec.scene_id));
            const EvalReport report = rmse(matched[r]->estimate, rec.truth, mask, &rec.city);
            const std::string id = std::to_string(rec.scene_id);
            for (int k = 0; k < rec.layers(); ++k) {
                const auto ku = static_cast<std::size_t>(k);
                rows.push_back({id, rec.density, set.label, format_frequency(rec.frequencies_mhz[ku]),
                                report.layer_rmse[ku], report.layer_cells[ku]});
                auto& pool = pools[{rec.density, p, k}];
                pool.sum_sq += report.layer_rmse[ku] * report.layer_rmse[ku] * static_cast<double>(report.layer_cells[ku]);
                pool.cells += report.layer_cells[ku];
            }
            rows.push_back({id, rec.density, set.label, "all", report.overall_rmse, report.overall_cells});
            auto& pool = pools[{rec.density, p, -1}];
            pool.sum_sq += report.overall_rmse * report.overall_rmse * static_cast<double>(report.overall_cells);
            pool.cells += report.overall_cells;
        }
    }

    const std::vector<double> freqs = truth.empty() ? std::vector<double>{} : truth.front().frequencies_mhz;
    for (const auto& [key, pool] : pools) {
        const auto& [density, p, k] = key;
        const std::string layer = k < 0 ? "all" : format_frequency(freqs.at(static_cast<std::size_t>(k)));
        const double value = pool.cells > 0 ? std::sqrt(pool.sum_sq / static_cast<double>(pool.cells)) : 0.0;
        rows.push_back({"aggregate", density, predictions[p].label, layer, value, pool.cells});
    }
    return rows;
}

std::string format_eval_csv(const std::vector<EvalRow>& rows)
{
    std::string out = "scene_id,density,method,layer_freq_mhz,rmse_db\n";
    char buf[64];
    for (const auto& r : rows) {
        out += r.scene_id;
        std::snprintf(buf, sizeof buf, ",%.4f,", static_cast<double>(r.density));
        out += buf;
        out += r.method;
        out += ',';
        out += r.layer;
        std::snprintf(buf, sizeof buf, ",%.6f\n", r.rmse_db);
        out += buf;
    }
    return out;
}

} // namespace specmap

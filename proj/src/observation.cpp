#include "specmap/observation.hpp"

#include "specmap/random.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace specmap {

std::size_t receiver_count(double density, std::size_t free_cells)
{
    return static_cast<std::size_t>(std::llround(density * static_cast<double>(free_cells)));
}

SamplingPlan place_receivers(const Scene& scene, double density, std::uint64_t seed)
{
    if (!(density > 0.0 && density <= 1.0))
        throw std::invalid_argument("place_receivers: density must lie in (0, 1]");

    std::vector<CellIndex> free_cells;
    const int n = scene.grid().cells_per_side();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (scene.buildings()(i, j) == 0) free_cells.push_back({i, j});

    const std::size_t count = receiver_count(density, free_cells.size());
    if (count == 0) throw std::invalid_argument("place_receivers: density yields zero receivers");

    // Partial Fisher-Yates.
    Rng rng(seed);
    for (std::size_t r = 0; r < count; ++r) {
        const auto pick = static_cast<std::size_t>(
            rng.uniform_int(static_cast<std::int64_t>(r), static_cast<std::int64_t>(free_cells.size()) - 1));
        std::swap(free_cells[r], free_cells[pick]);
    }
    free_cells.resize(count);
    std::sort(free_cells.begin(), free_cells.end());
    return {density, std::move(free_cells)};
}

FrequencySpaceCube build_incomplete_cube(const FrequencySpaceCube& truth, const SamplingPlan& plan,
                                         int target_index)
{
    if (target_index < 0 || target_index >= truth.layers())
        throw std::invalid_argument("build_incomplete_cube: target index out of range");
    FrequencySpaceCube s(truth.size(), truth.layers(), 0.0);
    for (int k = 0; k < truth.layers(); ++k) {
        if (k == target_index) continue;
        for (const auto& c : plan.receiver_cells) s(k, c.i, c.j) = truth(k, c.i, c.j);
    }
    return s;
}

void add_measurement_noise(FrequencySpaceCube& incomplete, const SamplingPlan& plan, int target_index,
                           double sigma, std::uint64_t seed)
{
    if (sigma < 0.0) throw std::invalid_argument("add_measurement_noise: negative sigma");
    if (sigma == 0.0) return;
    Rng rng(seed);
    for (int k = 0; k < incomplete.layers(); ++k) {
        if (k == target_index) continue;
        for (const auto& c : plan.receiver_cells) incomplete(k, c.i, c.j) += sigma * rng.normal();
    }
}

SemanticMaps build_semantics(const Scene& scene, const SamplingPlan& plan)
{
    const int n = scene.grid().cells_per_side();
    SemanticMaps maps{BinaryMap(n, 0), BinaryMap(n, 0)};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) maps.city(i, j) = scene.buildings()(i, j) != 0 ? 1 : 0;
    for (const auto& c : plan.receiver_cells) {
        if (!scene.grid().contains(c)) throw std::invalid_argument("build_semantics: receiver outside grid");
        maps.sampling[c] = 1;
    }
    return maps;
}

StackedSemantics stack_semantics_3d(const SemanticMaps& maps, int layers)
{
    if (layers < 1) throw std::invalid_argument("stack_semantics_3d: need at least one layer");
    StackedSemantics out{maps.city.size(), layers, {}, {}};
    out.city.reserve(maps.city.cell_count() * layers);
    out.sampling.reserve(maps.sampling.cell_count() * layers);
    for (int k = 0; k < layers; ++k) {
        out.city.insert(out.city.end(), maps.city.values().begin(), maps.city.values().end());
        out.sampling.insert(out.sampling.end(), maps.sampling.values().begin(), maps.sampling.values().end());
    }
    return out;
}

} // namespace specmap

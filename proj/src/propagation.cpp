#include "specmap/propagation.hpp"

#include "specmap/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace specmap {

void PropagationParams::validate() const
{
    if (!(path_loss_exponent >= 2.0)) throw std::invalid_argument("path_loss_exponent must be >= 2");
    if (!(wall_loss_per_cell >= 0.0) || !(wall_loss_cap >= 0.0))
        throw std::invalid_argument("wall losses must be non-negative");
    if (!(reference_distance > 0.0)) throw std::invalid_argument("reference_distance must be positive");
    if (!std::isfinite(noise_floor)) throw std::invalid_argument("noise_floor must be finite");
    if (!(shadowing_sigma >= 0.0)) throw std::invalid_argument("shadowing_sigma must be non-negative");
    if (!(shadowing_correlation_cells > 0.0))
        throw std::invalid_argument("shadowing_correlation_cells must be positive");
}

double reference_loss_db(double freq_mhz)
{
    return 20.0 * std::log10(freq_mhz) - 27.55;
}

double path_loss_db(double freq_mhz, double distance, int walls_crossed, const PropagationParams& params,
                    double min_distance)
{
    if (!(freq_mhz > 0.0)) throw std::invalid_argument("path_loss_db: frequency must be positive");
    if (distance < 0.0) throw std::invalid_argument("path_loss_db: negative distance");
    if (walls_crossed < 0) throw std::invalid_argument("path_loss_db: negative wall count");
    const double d = std::max(distance, min_distance);
    const double spreading = 10.0 * params.path_loss_exponent * std::log10(d / params.reference_distance);
    const double walls = std::min(walls_crossed * params.wall_loss_per_cell, params.wall_loss_cap);
    return reference_loss_db(freq_mhz) + spreading + walls;
}

int count_wall_crossings(const BinaryMap& buildings, CellIndex a, CellIndex b)
{
    // Both endpoints are cell centers, so with unit cells the segment meets
    // its m-th row boundary at t = (2m + 1) / (2|di|) and its m-th column
    // boundary at t = (2m + 1) / (2|dj|). Cross-multiplying keeps the
    // ordering exact; equality is a corner and steps both axes at once.
    const long di = std::labs(static_cast<long>(b.i) - a.i);
    const long dj = std::labs(static_cast<long>(b.j) - a.j);
    const int si = b.i > a.i ? 1 : -1;
    const int sj = b.j > a.j ? 1 : -1;

    CellIndex cur = a;
    long crossed_i = 0;
    long crossed_j = 0;
    int count = 0;
    while (crossed_i < di || crossed_j < dj) {
        const long next_i = (2 * crossed_i + 1) * dj; // scaled t of next row boundary
        const long next_j = (2 * crossed_j + 1) * di; // scaled t of next column boundary
        const bool step_i = crossed_i < di && (crossed_j >= dj || next_i <= next_j);
        const bool step_j = crossed_j < dj && (crossed_i >= di || next_j <= next_i);
        if (step_i) {
            cur.i += si;
            ++crossed_i;
        }
        if (step_j) {
            cur.j += sj;
            ++crossed_j;
        }
        if (cur != b && buildings[cur] != 0) ++count;
    }
    return count;
}

RealMap correlated_shadowing(int n, double sigma, double correlation_cells, std::uint64_t seed)
{
    RealMap field(n, 0.0);
    if (sigma == 0.0) return field;

    Rng rng(seed);
    RealMap white(n);
    for (auto& v : white.values()) v = rng.normal();

    // Truncate so every wrapped offset is used once; the variance of the
    // smoothed field is then exactly sum(w^2).
    const int radius = std::min(static_cast<int>(std::ceil(3.0 * correlation_cells)), (n - 1) / 2);
    std::vector<double> kernel;
    double energy = 0.0;
    for (int di = -radius; di <= radius; ++di) {
        for (int dj = -radius; dj <= radius; ++dj) {
            const double w = std::exp(-(di * di + dj * dj) / (2.0 * correlation_cells * correlation_cells));
            kernel.push_back(w);
            energy += w * w;
        }
    }
    const double scale = sigma / std::sqrt(energy);
    const int width = 2 * radius + 1;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double acc = 0.0;
            for (int di = -radius; di <= radius; ++di) {
                const int ii = ((i + di) % n + n) % n;
                for (int dj = -radius; dj <= radius; ++dj) {
                    const int jj = ((j + dj) % n + n) % n;
                    acc += kernel[static_cast<std::size_t>((di + radius) * width + dj + radius)] * white(ii, jj);
                }
            }
            field(i, j) = acc * scale;
        }
    }
    return field;
}

namespace {

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

constexpr std::uint64_t kShadowingStream = 0x5348ULL;

} // namespace

FrequencySpaceCube compute_ground_truth(const Scene& scene, const PropagationParams& params)
{
    params.validate();
    const GridSpec& grid = scene.grid();
    const int n = grid.cells_per_side();
    const int layers = scene.layer_count();
    const double min_distance = grid.interval() / 2.0;

    // Frequency-independent geometry per transmitter: distance and walls.
    struct Geometry {
        std::vector<double> dist;
        std::vector<int> walls;
    };
    std::vector<Geometry> geometry;
    geometry.reserve(scene.transmitters().size());
    for (const auto& tx : scene.transmitters()) {
        Geometry g{std::vector<double>(grid.cell_count()), std::vector<int>(grid.cell_count())};
        const Point src = cell_center(grid, tx.cell.i, tx.cell.j);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const std::size_t o = grid.offset({i, j});
                g.dist[o] = distance(src, cell_center(grid, i, j));
                g.walls[o] = count_wall_crossings(scene.buildings(), tx.cell, {i, j});
            }
        }
        geometry.push_back(std::move(g));
    }

    FrequencySpaceCube cube(n, layers, params.noise_floor);
    for (int k = 0; k < layers; ++k) {
        const double f = scene.frequencies_mhz()[static_cast<std::size_t>(k)];
        std::vector<double> linear(grid.cell_count(), 0.0);
        bool any = false;
        for (std::size_t t = 0; t < scene.transmitters().size(); ++t) {
            const auto& tx = scene.transmitters()[t];
            if (!tx.emits_on(k)) continue;
            any = true;
            for (std::size_t o = 0; o < linear.size(); ++o) {
                const double pl = path_loss_db(f, geometry[t].dist[o], geometry[t].walls[o], params, min_distance);
                linear[o] += dbm_to_mw(tx.power_dbm - pl);
            }
        }
        if (!any) continue; // stays at the noise floor

        const RealMap shadow = correlated_shadowing(n, params.shadowing_sigma, params.shadowing_correlation_cells,
                                                    derive_seed(scene.seed(), kShadowingStream + k));
        auto out = cube.layer(k);
        const auto sh = shadow.values();
        for (std::size_t o = 0; o < linear.size(); ++o)
            out[o] = std::max(mw_to_dbm(linear[o]) + sh[o], params.noise_floor);
    }
    return cube;
}

} // namespace specmap

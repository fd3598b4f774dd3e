#include "specmap/kriging.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace specmap {

double VariogramModel::value(double h) const
{
    return nugget + sill * (1.0 - std::exp(-3.0 * h / range));
}

void VariogramModel::validate() const
{
    if (!(nugget >= 0.0)) throw std::invalid_argument("VariogramModel: nugget must be >= 0");
    if (!(sill > 0.0)) throw std::invalid_argument("VariogramModel: sill must be > 0");
    if (!(range > 0.0)) throw std::invalid_argument("VariogramModel: range must be > 0");
}

std::vector<VariogramBin> empirical_variogram(const SampleList& samples, const GridSpec& grid, double bin_width,
                                              double max_lag)
{
    if (samples.size() < 2) throw std::invalid_argument("empirical_variogram: need at least two samples");
    if (!(bin_width > 0.0)) throw std::invalid_argument("empirical_variogram: bin width must be positive");
    if (!(max_lag > 0.0)) throw std::invalid_argument("empirical_variogram: max lag must be positive");

    const auto bins = static_cast<std::size_t>(std::floor(max_lag / bin_width)) + 1;
    std::vector<double> lag_sum(bins, 0.0);
    std::vector<double> sq_sum(bins, 0.0);
    std::vector<std::size_t> count(bins, 0);

    std::vector<Point> pts;
    pts.reserve(samples.size());
    for (const auto& s : samples) pts.push_back(cell_center(grid, s.cell.i, s.cell.j));

    for (std::size_t a = 0; a < samples.size(); ++a) {
        for (std::size_t b = a + 1; b < samples.size(); ++b) {
            const double d = distance(pts[a], pts[b]);
            if (d > max_lag) continue;
            const auto bin = static_cast<std::size_t>(std::floor(d / bin_width));
            const double diff = samples[a].value - samples[b].value;
            lag_sum[bin] += d;
            sq_sum[bin] += diff * diff;
            ++count[bin];
        }
    }

    std::vector<VariogramBin> out;
    for (std::size_t b = 0; b < bins; ++b) {
        if (count[b] == 0) continue;
        const auto c = static_cast<double>(count[b]);
        out.push_back({lag_sum[b] / c, sq_sum[b] / (2.0 * c), count[b]});
    }
    return out;
}

std::vector<VariogramBin> empirical_variogram(const SampleList& samples, const GridSpec& grid)
{
    return empirical_variogram(samples, grid, 2.0 * grid.interval(), grid.side_meters() / 2.0);
}

double variogram_sse(const VariogramModel& model, std::span<const VariogramBin> empirical)
{
    double sse = 0.0;
    for (const auto& b : empirical) {
        const double r = model.value(b.lag) - b.gamma;
        sse += static_cast<double>(b.pairs) * r * r;
    }
    return sse;
}

VariogramModel fit_sill_for_range(std::span<const VariogramBin> empirical, double range)
{
    // Weighted normal equations for gamma ~ c0 + c g(h), g = 1 - exp(-3h/a).
    double sw = 0, sg = 0, sgg = 0, sy = 0, sgy = 0;
    for (const auto& b : empirical) {
        const double w = static_cast<double>(b.pairs);
        const double g = 1.0 - std::exp(-3.0 * b.lag / range);
        sw += w;
        sg += w * g;
        sgg += w * g * g;
        sy += w * b.gamma;
        sgy += w * g * b.gamma;
    }

    std::vector<VariogramModel> candidates;
    const double det = sw * sgg - sg * sg;
    if (std::abs(det) > 1e-12 * sw * sgg) {
        const double c0 = (sgg * sy - sg * sgy) / det;
        const double c = (sw * sgy - sg * sy) / det;
        if (c0 >= 0.0 && c >= kMinSill) candidates.push_back({c0, c, range});
    }
    // Boundary faces of the feasible box; the corner is covered by clamping.
    if (sgg > 0.0) candidates.push_back({0.0, std::max(kMinSill, sgy / sgg), range});
    candidates.push_back({std::max(0.0, (sy - kMinSill * sg) / sw), kMinSill, range});

    VariogramModel best = candidates.front();
    double best_sse = variogram_sse(best, empirical);
    for (std::size_t k = 1; k < candidates.size(); ++k) {
        const double sse = variogram_sse(candidates[k], empirical);
        if (sse < best_sse) {
            best_sse = sse;
            best = candidates[k];
        }
    }
    return best;
}

VariogramFit fit_variogram(std::span<const VariogramBin> empirical, const GridSpec& grid)
{
    if (empirical.size() < 3) throw std::invalid_argument("fit_variogram: need at least three nonempty bins");
    const double dd = grid.interval();

    if (std::all_of(empirical.begin(), empirical.end(), [](const VariogramBin& b) { return b.gamma == 0.0; }))
        return {{0.0, kMinSill, dd}, variogram_sse({0.0, kMinSill, dd}, empirical), true};

    const int steps = std::max(1, static_cast<int>(std::floor(grid.side_meters() / 2.0 / dd + 1e-9)));
    VariogramFit best{{}, std::numeric_limits<double>::infinity(), false};
    for (int m = 1; m <= steps; ++m) {
        const VariogramModel model = fit_sill_for_range(empirical, m * dd);
        const double sse = variogram_sse(model, empirical);
        if (sse < best.weighted_sse) best = {model, sse, false};
    }
    return best;
}

namespace {

// Solves the bordered system in place; `a` and `rhs` hold the semivariogram
// block with the unit-sum row and column already set.
void solve_bordered(Eigen::MatrixXd& a, const Eigen::VectorXd& rhs, Eigen::PartialPivLU<Eigen::MatrixXd>& lu,
                    Eigen::VectorXd& sol, bool& jittered)
{
    const Eigen::Index m = a.rows() - 1;
    lu.compute(a);
    jittered = false;
    if (lu.rcond() < 1e-12) {
        for (Eigen::Index r = 0; r < m; ++r) a(r, r) += 1e-10;
        lu.compute(a);
        jittered = true;
    }
    sol = lu.solve(rhs);
    double sum = 0.0;
    for (Eigen::Index r = 0; r < m; ++r) sum += sol(r);
    if (!(std::abs(sum - 1.0) <= kWeightSumTolerance))
        throw std::runtime_error("ordinary kriging: weights sum to " + std::to_string(sum) + ", not 1");
}

} // namespace

KrigingWeights ordinary_kriging_weights(std::span<const Point> support, Point query, const VariogramModel& model)
{
    const auto m = static_cast<Eigen::Index>(support.size());
    if (m < 1) throw std::invalid_argument("ordinary_kriging_weights: empty support");

    Eigen::MatrixXd a(m + 1, m + 1);
    Eigen::VectorXd rhs(m + 1);
    for (Eigen::Index r = 0; r < m; ++r) {
        for (Eigen::Index c = 0; c < m; ++c)
            a(r, c) = model.system_value(distance(support[static_cast<std::size_t>(r)], support[static_cast<std::size_t>(c)]));
        a(r, m) = 1.0;
        a(m, r) = 1.0;
        rhs(r) = model.system_value(distance(support[static_cast<std::size_t>(r)], query));
    }
    a(m, m) = 0.0;
    rhs(m) = 1.0;

    KrigingWeights out;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(m + 1);
    Eigen::VectorXd sol;
    solve_bordered(a, rhs, lu, sol, out.jittered);
    out.weights.assign(sol.data(), sol.data() + m);
    out.lagrange = sol(m);
    return out;
}

KrigingResult kriging_reconstruct(const SampleList& samples, const GridSpec& grid, const VariogramModel& model,
                                  int neighborhood)
{
    if (samples.size() < 2) throw std::invalid_argument("kriging_reconstruct: need at least two samples");
    if (neighborhood < 1) throw std::invalid_argument("kriging_reconstruct: neighborhood must be >= 1");
    model.validate();
    for (const auto& s : samples)
        if (!grid.contains(s.cell)) throw std::invalid_argument("kriging_reconstruct: sample outside grid");

    const auto m = std::min<std::size_t>(static_cast<std::size_t>(neighborhood), samples.size());
    const auto mi = static_cast<Eigen::Index>(m);
    const int n = grid.cells_per_side();

    // Every separation on the grid is interval * sqrt(integer), so gamma is
    // tabulated once by squared offset in cells.
    std::vector<double> gamma(2 * static_cast<std::size_t>(n - 1) * static_cast<std::size_t>(n - 1) + 1);
    for (std::size_t d2 = 0; d2 < gamma.size(); ++d2)
        gamma[d2] = model.system_value(grid.interval() * std::sqrt(static_cast<double>(d2)));
    const auto sq = [](int di, int dj) { return static_cast<std::size_t>(di * di + dj * dj); };

    struct Candidate {
        long d2;
        CellIndex cell;
        std::size_t index;
    };
    const auto closer = [](const Candidate& a, const Candidate& b) {
        return a.d2 != b.d2 ? a.d2 < b.d2 : a.cell < b.cell;
    };

    KrigingResult result{RealMap(n), 0.0, 0};
    std::vector<Candidate> cand(samples.size());
    Eigen::MatrixXd a(mi + 1, mi + 1);
    Eigen::VectorXd rhs(mi + 1), sol(mi + 1);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(mi + 1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (std::size_t s = 0; s < samples.size(); ++s) {
                const long di = samples[s].cell.i - i;
                const long dj = samples[s].cell.j - j;
                cand[s] = {di * di + dj * dj, samples[s].cell, s};
            }
            std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(m), cand.end(), closer);

            for (Eigen::Index r = 0; r < mi; ++r) {
                const CellIndex cr = cand[static_cast<std::size_t>(r)].cell;
                a(r, r) = gamma[0];
                for (Eigen::Index c = r + 1; c < mi; ++c) {
                    const CellIndex cc = cand[static_cast<std::size_t>(c)].cell;
                    a(r, c) = a(c, r) = gamma[sq(cr.i - cc.i, cr.j - cc.j)];
                }
                a(r, mi) = a(mi, r) = 1.0;
                rhs(r) = gamma[static_cast<std::size_t>(cand[static_cast<std::size_t>(r)].d2)];
            }
            a(mi, mi) = 0.0;
            rhs(mi) = 1.0;

            bool jittered = false;
            solve_bordered(a, rhs, lu, sol, jittered);
            double value = 0.0;
            double sum = 0.0;
            for (std::size_t s = 0; s < m; ++s) {
                value += sol(static_cast<Eigen::Index>(s)) * samples[cand[s].index].value;
                sum += sol(static_cast<Eigen::Index>(s));
            }
            result.map(i, j) = value;
            result.max_weight_sum_error = std::max(result.max_weight_sum_error, std::abs(sum - 1.0));
            if (jittered) ++result.jittered_cells;
        }
    }
    return result;
}

} // namespace specmap

#pragma once

#include "specmap/grid.hpp"
#include "specmap/interpolation.hpp"

#include <span>
#include <vector>

namespace specmap {

/// Smallest sill the fitter will return, in dB^2.
inline constexpr double kMinSill = 1e-6;

/// Exponential semivariogram gamma(h) = c0 + c (1 - exp(-3h / a)) for h > 0.
struct VariogramModel {
    double nugget = 0.0; ///< c0, dB^2
    double sill = 1.0;   ///< c, dB^2 (partial sill above the nugget)
    double range = 1.0;  ///< a, m (practical range)

    /// Model value; equals the nugget at h = 0.
    double value(double h) const;

    /// Entry used in the kriging system, where gamma(0) = 0 so that the
    /// predictor interpolates the samples exactly.
    double system_value(double h) const { return h > 0.0 ? value(h) : 0.0; }

    void validate() const;
};

struct VariogramBin {
    double lag = 0.0;        ///< mean pair distance in the bin, m
    double gamma = 0.0;      ///< half mean squared difference, dB^2
    std::size_t pairs = 0;
};

/// Classical (Matheron) estimator over bins [b w, (b+1) w), pairs with
/// distance above `max_lag` dropped, empty bins omitted.
std::vector<VariogramBin> empirical_variogram(const SampleList& samples, const GridSpec& grid, double bin_width,
                                              double max_lag);

/// Defaults: bin width 2 dd, max lag W / 2.
std::vector<VariogramBin> empirical_variogram(const SampleList& samples, const GridSpec& grid);

struct VariogramFit {
    VariogramModel model;
    double weighted_sse = 0.0;
    bool degenerate = false; ///< all bins had zero semivariance; nugget-only fallback
};

/// Pair-count-weighted squared error of a model against empirical bins.
double variogram_sse(const VariogramModel& model, std::span<const VariogramBin> empirical);

/// Best (nugget, sill) for a fixed range: weighted linear least squares with
/// nugget >= 0 and sill >= kMinSill.
VariogramModel fit_sill_for_range(std::span<const VariogramBin> empirical, double range);

/// Grid search over ranges {dd, 2 dd, ..., W/2}, each with the constrained
/// linear solve above; returns the minimum weighted SSE candidate (first on
/// ties). Needs at least three bins.
VariogramFit fit_variogram(std::span<const VariogramBin> empirical, const GridSpec& grid);

/// Ordinary kriging weights for one query point.
struct KrigingWeights {
    std::vector<double> weights;
    double lagrange = 0.0;
    bool jittered = false;
};

/// Solves the bordered system [Gamma 1; 1' 0] [w; mu] = [gamma0; 1]. Falls
/// back to a 1e-10 diagonal jitter on the Gamma block when the system is
/// near singular. Throws std::runtime_error if the weights miss the
/// unit-sum constraint by more than kWeightSumTolerance.
KrigingWeights ordinary_kriging_weights(std::span<const Point> support, Point query, const VariogramModel& model);

inline constexpr double kWeightSumTolerance = 1e-9;

struct KrigingResult {
    RealMap map;
    double max_weight_sum_error = 0.0; ///< max |sum(w) - 1| over all queried cells
    std::size_t jittered_cells = 0;
};

/// Ordinary kriging of every cell from its `neighborhood` nearest samples
/// (clamped to the sample count; ties by sample cell order).
KrigingResult kriging_reconstruct(const SampleList& samples, const GridSpec& grid, const VariogramModel& model,
                                  int neighborhood = 32);

} // namespace specmap

#include "specmap/completion.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace specmap {

RealMap complete_target_layer(const FrequencySpaceCube& estimates, std::span<const double> frequencies_mhz,
                              int target_index)
{
    if (static_cast<int>(frequencies_mhz.size()) != estimates.layers())
        throw std::invalid_argument("complete_target_layer: frequency count does not match layers");
    if (target_index < 0 || target_index >= estimates.layers())
        throw std::invalid_argument("complete_target_layer: target index out of range");
    if (estimates.layers() - 1 < 2)
        throw std::invalid_argument("complete_target_layer: need at least two sampled layers");

    std::vector<int> sampled;
    std::vector<double> x;
    for (int k = 0; k < estimates.layers(); ++k) {
        const double f = frequencies_mhz[static_cast<std::size_t>(k)];
        if (!(f > 0.0)) throw std::invalid_argument("complete_target_layer: frequencies must be positive");
        if (k == target_index) continue;
        sampled.push_back(k);
        x.push_back(10.0 * std::log10(f));
    }
    const double x0 = 10.0 * std::log10(frequencies_mhz[static_cast<std::size_t>(target_index)]);

    const auto count = static_cast<double>(x.size());
    double x_mean = 0.0;
    for (double v : x) x_mean += v;
    x_mean /= count;
    double sxx = 0.0;
    for (double v : x) sxx += (v - x_mean) * (v - x_mean);
    if (!(sxx > 0.0)) throw std::invalid_argument("complete_target_layer: sampled frequencies coincide");

    const int n = estimates.size();
    RealMap out(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double y_mean = 0.0;
            for (int k : sampled) y_mean += estimates(k, i, j);
            y_mean /= count;
            double sxy = 0.0;
            for (std::size_t s = 0; s < sampled.size(); ++s)
                sxy += (x[s] - x_mean) * (estimates(sampled[s], i, j) - y_mean);
            out(i, j) = y_mean + (sxy / sxx) * (x0 - x_mean);
        }
    }
    return out;
}

} // namespace specmap

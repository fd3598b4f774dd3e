#pragma once

#include "specmap/cube.hpp"
#include "specmap/grid.hpp"

#include <vector>

namespace specmap {

struct Sample {
    CellIndex cell;
    double value = 0.0; ///< dBm
};

/// Observations of one frequency layer. Cells are distinct and values
/// finite; the constructor throws std::invalid_argument otherwise.
class SampleList {
public:
    SampleList() = default;
    explicit SampleList(std::vector<Sample> entries);

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const Sample& operator[](std::size_t k) const { return entries_[k]; }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

private:
    std::vector<Sample> entries_;
};

/// Samples of layer `k` of an incomplete cube at cells where `sampling` is 1.
SampleList samples_from_layer(const FrequencySpaceCube& incomplete, const BinaryMap& sampling, int k);

/// Inverse-distance weighting with exponent `power`. Sample cells keep
/// their value exactly.
RealMap idw_reconstruct(const SampleList& samples, const GridSpec& grid, double power = 2.0);

/// Unweighted mean of the `k` nearest samples (k clamped to the sample
/// count). Equal distances are ordered by sample cell (row, then column).
RealMap knn_reconstruct(const SampleList& samples, const GridSpec& grid, int k = 5);

} // namespace specmap

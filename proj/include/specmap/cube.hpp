#pragma once

#include "specmap/grid.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace specmap {

/// N x N x (K+1) stack of per-frequency maps in dBm, layers in ascending
/// frequency order. Storage is layer-major, then row-major, which is also
/// the on-disk order.
class FrequencySpaceCube {
public:
    FrequencySpaceCube() = default;
    FrequencySpaceCube(int n, int layers, double fill = 0.0)
        : n_(n), layers_(layers), data_(static_cast<std::size_t>(n) * n * layers, fill)
    {
        if (n <= 0 || layers <= 0) throw std::invalid_argument("FrequencySpaceCube: empty shape");
    }

    int size() const { return n_; }
    int layers() const { return layers_; }
    std::size_t layer_cells() const { return static_cast<std::size_t>(n_) * n_; }

    double& operator()(int k, int i, int j) { return data_[index(k, i, j)]; }
    double operator()(int k, int i, int j) const { return data_[index(k, i, j)]; }

    std::span<double> layer(int k) { return {data_.data() + k * layer_cells(), layer_cells()}; }
    std::span<const double> layer(int k) const { return {data_.data() + k * layer_cells(), layer_cells()}; }

    RealMap layer_map(int k) const
    {
        RealMap m(n_);
        const auto src = layer(k);
        std::copy(src.begin(), src.end(), m.values().begin());
        return m;
    }

    void set_layer(int k, const RealMap& m)
    {
        if (m.size() != n_) throw std::invalid_argument("FrequencySpaceCube: layer size mismatch");
        std::copy(m.values().begin(), m.values().end(), layer(k).begin());
    }

    std::span<double> values() { return data_; }
    std::span<const double> values() const { return data_; }

    bool same_shape(const FrequencySpaceCube& o) const { return n_ == o.n_ && layers_ == o.layers_; }

    friend bool operator==(const FrequencySpaceCube&, const FrequencySpaceCube&) = default;

private:
    std::size_t index(int k, int i, int j) const
    {
        return static_cast<std::size_t>(k) * layer_cells() + static_cast<std::size_t>(i) * n_ + j;
    }

    int n_ = 0;
    int layers_ = 0;
    std::vector<double> data_;
};

} // namespace specmap

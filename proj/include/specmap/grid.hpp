#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace specmap {

/// Grid index I = (i, j). `i` selects the row, `j` the column.
struct CellIndex {
    int i = 0;
    int j = 0;

    friend bool operator==(const CellIndex&, const CellIndex&) = default;
    friend auto operator<=>(const CellIndex&, const CellIndex&) = default;
};

/// Metric position inside the target area, in meters.
struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Square target area of side W meters divided into N x N cells of
/// interval W / N.
class GridSpec {
public:
    GridSpec(double side_meters, int cells_per_side);

    double side_meters() const { return side_; }
    int cells_per_side() const { return cells_; }
    double interval() const { return side_ / cells_; }
    std::size_t cell_count() const { return static_cast<std::size_t>(cells_) * cells_; }

    bool contains(CellIndex c) const { return c.i >= 0 && c.j >= 0 && c.i < cells_ && c.j < cells_; }

    /// Flat row-major offset of a cell.
    std::size_t offset(CellIndex c) const
    {
        return static_cast<std::size_t>(c.i) * cells_ + static_cast<std::size_t>(c.j);
    }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;

private:
    double side_;
    int cells_;
};

/// Center of cell (i, j): ((i + 0.5) * dd, (j + 0.5) * dd). Throws
/// std::out_of_range for indices outside [0, N).
Point cell_center(const GridSpec& grid, int i, int j);

double distance(Point a, Point b);

/// Dense N x N array stored row-major.
template <class T>
class Map2D {
public:
    Map2D() = default;
    explicit Map2D(int n, T fill = T{}) : n_(n), data_(static_cast<std::size_t>(n) * n, fill)
    {
        if (n <= 0) throw std::invalid_argument("Map2D: side must be positive");
    }

    int size() const { return n_; }
    std::size_t cell_count() const { return data_.size(); }

    T& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * n_ + j]; }
    const T& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * n_ + j]; }
    T& operator[](CellIndex c) { return (*this)(c.i, c.j); }
    const T& operator[](CellIndex c) const { return (*this)(c.i, c.j); }

    std::span<T> values() { return data_; }
    std::span<const T> values() const { return data_; }

    friend bool operator==(const Map2D&, const Map2D&) = default;

private:
    int n_ = 0;
    std::vector<T> data_;
};

using RealMap = Map2D<double>;
using BinaryMap = Map2D<std::uint8_t>;

} // namespace specmap

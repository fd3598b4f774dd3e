#include "specmap/grid.hpp"

#include <cmath>
#include <string>

namespace specmap {

GridSpec::GridSpec(double side_meters, int cells_per_side) : side_(side_meters), cells_(cells_per_side)
{
    if (!(side_meters > 0.0) || !std::isfinite(side_meters))
        throw std::invalid_argument("GridSpec: side length must be positive and finite");
    if (cells_per_side <= 0)
        throw std::invalid_argument("GridSpec: cells per side must be positive");
}

Point cell_center(const GridSpec& grid, int i, int j)
{
    if (!grid.contains({i, j}))
        throw std::out_of_range("cell_center: index (" + std::to_string(i) + ", " + std::to_string(j) +
                                ") outside " + std::to_string(grid.cells_per_side()) + "x" +
                                std::to_string(grid.cells_per_side()) + " grid");
    const double dd = grid.interval();
    return {(i + 0.5) * dd, (j + 0.5) * dd};
}

double distance(Point a, Point b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

} // namespace specmap

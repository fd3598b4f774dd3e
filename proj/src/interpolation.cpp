#include "specmap/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace specmap {

SampleList::SampleList(std::vector<Sample> entries) : entries_(std::move(entries))
{
    std::set<CellIndex> seen;
    for (const auto& s : entries_) {
        if (!std::isfinite(s.value)) throw std::invalid_argument("SampleList: non-finite sample value");
        if (!seen.insert(s.cell).second) throw std::invalid_argument("SampleList: duplicate sample cell");
    }
}

SampleList samples_from_layer(const FrequencySpaceCube& incomplete, const BinaryMap& sampling, int k)
{
    if (sampling.size() != incomplete.size())
        throw std::invalid_argument("samples_from_layer: sampling map does not match cube");
    std::vector<Sample> out;
    for (int i = 0; i < incomplete.size(); ++i)
        for (int j = 0; j < incomplete.size(); ++j)
            if (sampling(i, j) != 0) out.push_back({{i, j}, incomplete(k, i, j)});
    return SampleList(std::move(out));
}

namespace {

void check_grid(const SampleList& samples, const GridSpec& grid, const char* who)
{
    if (samples.empty()) throw std::invalid_argument(std::string(who) + ": no samples");
    for (const auto& s : samples)
        if (!grid.contains(s.cell)) throw std::invalid_argument(std::string(who) + ": sample outside grid");
}

} // namespace

RealMap idw_reconstruct(const SampleList& samples, const GridSpec& grid, double power)
{
    check_grid(samples, grid, "idw_reconstruct");
    if (!(power > 0.0)) throw std::invalid_argument("idw_reconstruct: power must be positive");

    const int n = grid.cells_per_side();
    RealMap out(n);
    std::vector<Point> centers;
    centers.reserve(samples.size());
    for (const auto& s : samples) centers.push_back(cell_center(grid, s.cell.i, s.cell.j));

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Point q = cell_center(grid, i, j);
            double num = 0.0;
            double den = 0.0;
            bool exact = false;
            for (std::size_t s = 0; s < samples.size(); ++s) {
                if (samples[s].cell == CellIndex{i, j}) {
                    out(i, j) = samples[s].value;
                    exact = true;
                    break;
                }
                const double w = std::pow(distance(q, centers[s]), -power);
                num += w * samples[s].value;
                den += w;
            }
            if (!exact) out(i, j) = num / den;
        }
    }
    return out;
}

RealMap knn_reconstruct(const SampleList& samples, const GridSpec& grid, int k)
{
    check_grid(samples, grid, "knn_reconstruct");
    if (k < 1) throw std::invalid_argument("knn_reconstruct: k must be >= 1");
    const auto kk = std::min<std::size_t>(static_cast<std::size_t>(k), samples.size());

    struct Candidate {
        long d2; // squared distance in cell units, exact
        CellIndex cell;
        double value;
    };
    const auto closer = [](const Candidate& a, const Candidate& b) {
        return a.d2 != b.d2 ? a.d2 < b.d2 : a.cell < b.cell;
    };

    const int n = grid.cells_per_side();
    RealMap out(n);
    std::vector<Candidate> cand(samples.size());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (std::size_t s = 0; s < samples.size(); ++s) {
                const long di = samples[s].cell.i - i;
                const long dj = samples[s].cell.j - j;
                cand[s] = {di * di + dj * dj, samples[s].cell, samples[s].value};
            }
            std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(kk), cand.end(), closer);
            double sum = 0.0;
            for (std::size_t s = 0; s < kk; ++s) sum += cand[s].value;
            out(i, j) = sum / static_cast<double>(kk);
        }
    }
    return out;
}

} // namespace specmap

#pragma once

// Brute-force reference implementations used only by the tests. They share
// no code path with the library beyond plain data types.

#include "specmap/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

struct Obs {
    int i;
    int j;
    double v;
};

inline double center(int idx, double dd) { return (idx + 0.5) * dd; }

inline double dist(int ai, int aj, int bi, int bj, double dd)
{
    const double dx = (ai - bi) * dd;
    const double dy = (aj - bj) * dd;
    return std::sqrt(dx * dx + dy * dy);
}

/// Double-loop inverse distance weighting.
inline std::vector<double> idw(const std::vector<Obs>& obs, int n, double dd, double p)
{
    std::vector<double> out(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double num = 0, den = 0;
            bool hit = false;
            for (const auto& o : obs) {
                if (o.i == i && o.j == j) {
                    out[i * n + j] = o.v;
                    hit = true;
                    break;
                }
                const double w = 1.0 / std::pow(dist(i, j, o.i, o.j, dd), p);
                num += w * o.v;
                den += w;
            }
            if (!hit) out[i * n + j] = num / den;
        }
    }
    return out;
}

/// Full sort of every sample by (distance, row, column), mean of the first k.
inline std::vector<double> knn(const std::vector<Obs>& obs, int n, double dd, int k)
{
    std::vector<double> out(static_cast<std::size_t>(n) * n);
    const auto kk = std::min<std::size_t>(static_cast<std::size_t>(k), obs.size());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            std::vector<std::pair<std::pair<double, std::pair<int, int>>, double>> all;
            for (const auto& o : obs) all.push_back({{dist(i, j, o.i, o.j, dd), {o.i, o.j}}, o.v});
            std::sort(all.begin(), all.end());
            double s = 0;
            for (std::size_t m = 0; m < kk; ++m) s += all[m].second;
            out[i * n + j] = s / static_cast<double>(kk);
        }
    }
    return out;
}

/// Gaussian elimination with partial pivoting on a dense row-major system.
inline std::vector<double> gauss_solve(std::vector<std::vector<double>> a, std::vector<double> b)
{
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (a[piv][col] == 0.0) throw std::runtime_error("gauss_solve: singular");
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t r = n; r-- > 0;) {
        double s = b[r];
        for (std::size_t c = r + 1; c < n; ++c) s -= a[r][c] * x[c];
        x[r] = s / a[r][r];
    }
    return x;
}

/// Exponential semivariogram with gamma(0) = 0.
inline double gamma_exp(double h, double c0, double c, double a)
{
    return h > 0.0 ? c0 + c * (1.0 - std::exp(-3.0 * h / a)) : 0.0;
}

/// Ordinary kriging over every sample at once, solved densely.
inline std::vector<double> kriging_full(const std::vector<Obs>& obs, int n, double dd, double c0, double c, double a)
{
    const std::size_t m = obs.size();
    std::vector<std::vector<double>> sys(m + 1, std::vector<double>(m + 1, 1.0));
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t q = 0; q < m; ++q)
            sys[r][q] = gamma_exp(dist(obs[r].i, obs[r].j, obs[q].i, obs[q].j, dd), c0, c, a);
    sys[m][m] = 0.0;

    std::vector<double> out(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            std::vector<double> rhs(m + 1, 1.0);
            for (std::size_t r = 0; r < m; ++r) rhs[r] = gamma_exp(dist(obs[r].i, obs[r].j, i, j, dd), c0, c, a);
            const auto w = gauss_solve(sys, rhs);
            double v = 0;
            for (std::size_t r = 0; r < m; ++r) v += w[r] * obs[r].v;
            out[i * n + j] = v;
        }
    }
    return out;
}

/// Walks the segment between two cell centers in steps of 1/100 cell and
/// collects the occupied cells whose interior a sample point falls in.
/// Points within 1e-9 of a grid line are skipped so that corner touches do
/// not count as entering a cell.
inline int supersampled_walls(const specmap::BinaryMap& b, specmap::CellIndex a, specmap::CellIndex z)
{
    const double ax = a.i + 0.5, ay = a.j + 0.5, zx = z.i + 0.5, zy = z.j + 0.5;
    const double len = std::hypot(zx - ax, zy - ay);
    const auto steps = static_cast<long>(std::ceil(len * 100.0));
    std::set<std::pair<int, int>> hit;
    for (long s = 0; s <= steps; ++s) {
        const double t = steps == 0 ? 0.0 : static_cast<double>(s) / static_cast<double>(steps);
        const double x = ax + t * (zx - ax);
        const double y = ay + t * (zy - ay);
        const double fx = x - std::floor(x), fy = y - std::floor(y);
        if (fx < 1e-9 || fx > 1 - 1e-9 || fy < 1e-9 || fy > 1 - 1e-9) continue;
        const int ci = static_cast<int>(std::floor(x)), cj = static_cast<int>(std::floor(y));
        if ((ci == a.i && cj == a.j) || (ci == z.i && cj == z.j)) continue;
        if (b(ci, cj) != 0) hit.insert({ci, cj});
    }
    return static_cast<int>(hit.size());
}

} // namespace oracle

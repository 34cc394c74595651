#include "harmatte/morphology.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

namespace harmatte {

std::vector<std::uint8_t> dilate_square(const std::vector<std::uint8_t>& mask, int width, int height,
                                        int radius) {
    if (width < 1 || height < 1 || mask.size() != static_cast<std::size_t>(width) * height) {
        throw std::invalid_argument("dilate_square: bad mask dimensions");
    }
    if (radius < 0) throw std::invalid_argument("dilate_square: radius must be nonnegative");
    if (radius == 0) return mask;

    std::vector<std::uint8_t> horiz(mask.size(), 0);
#pragma omp parallel for
    for (int y = 0; y < height; ++y) {
        const std::uint8_t* src = mask.data() + static_cast<std::size_t>(y) * width;
        std::uint8_t* dst = horiz.data() + static_cast<std::size_t>(y) * width;
        for (int x = 0; x < width; ++x) {
            int lo = std::max(0, x - radius);
            int hi = std::min(width - 1, x + radius);
            std::uint8_t v = 0;
            for (int i = lo; i <= hi && !v; ++i) v = src[i];
            dst[x] = v;
        }
    }
    std::vector<std::uint8_t> out(mask.size(), 0);
#pragma omp parallel for
    for (int y = 0; y < height; ++y) {
        int lo = std::max(0, y - radius);
        int hi = std::min(height - 1, y + radius);
        std::uint8_t* dst = out.data() + static_cast<std::size_t>(y) * width;
        for (int x = 0; x < width; ++x) {
            std::uint8_t v = 0;
            for (int i = lo; i <= hi && !v; ++i) v = horiz[static_cast<std::size_t>(i) * width + x];
            dst[x] = v;
        }
    }
    return out;
}

namespace {

constexpr double kDtInf = 1e20;

// 1D squared-distance transform: lower envelope of parabolas.
void dt1d(const double* f, double* d, int n, int* v, double* z) {
    int k = 0;
    v[0] = 0;
    z[0] = -kDtInf;
    z[1] = kDtInf;
    for (int q = 1; q < n; ++q) {
        double s = ((f[q] + static_cast<double>(q) * q) -
                    (f[v[k]] + static_cast<double>(v[k]) * v[k])) /
                   (2.0 * q - 2.0 * v[k]);
        while (s <= z[k]) {
            --k;
            s = ((f[q] + static_cast<double>(q) * q) -
                 (f[v[k]] + static_cast<double>(v[k]) * v[k])) /
                (2.0 * q - 2.0 * v[k]);
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = kDtInf;
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[k + 1] < q) ++k;
        double dq = q - v[k];
        d[q] = dq * dq + f[v[k]];
    }
}

}  // namespace

std::vector<double> euclidean_distance(const std::vector<std::uint8_t>& mask, int width, int height) {
    if (width < 1 || height < 1 || mask.size() != static_cast<std::size_t>(width) * height) {
        throw std::invalid_argument("euclidean_distance: bad mask dimensions");
    }
    std::vector<double> dist(mask.size());
    for (std::size_t i = 0; i < mask.size(); ++i) dist[i] = mask[i] ? kDtInf : 0.0;

    // Columns, then rows.
    {
        std::vector<double> f(height), d(height);
        std::vector<int> v(height);
        std::vector<double> z(height + 1);
        for (int x = 0; x < width; ++x) {
            for (int y = 0; y < height; ++y) f[y] = dist[static_cast<std::size_t>(y) * width + x];
            dt1d(f.data(), d.data(), height, v.data(), z.data());
            for (int y = 0; y < height; ++y) dist[static_cast<std::size_t>(y) * width + x] = d[y];
        }
    }
    {
        std::vector<double> f(width), d(width);
        std::vector<int> v(width);
        std::vector<double> z(width + 1);
        for (int y = 0; y < height; ++y) {
            double* row = dist.data() + static_cast<std::size_t>(y) * width;
            std::copy(row, row + width, f.begin());
            dt1d(f.data(), d.data(), width, v.data(), z.data());
            std::copy(d.begin(), d.end(), row);
        }
    }
    for (double& d : dist) d = std::sqrt(d);
    return dist;
}

}  // namespace harmatte

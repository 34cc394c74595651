#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "harmatte/adjust.hpp"
#include "harmatte/morphology.hpp"

namespace harmatte {

namespace {

// Window radius for the weighted neighbor average.
constexpr int kFillRadius = 3;

}  // namespace

RgbImage inpaint_background(const RgbImage& img, const AlphaMatte& alpha, int mask_dilation) {
    detail::require_same_size(img.width, img.height, alpha.width, alpha.height,
                              "inpaint_background: img vs alpha");
    detail::require(mask_dilation >= 0, "inpaint_background: mask_dilation must be nonnegative");
    img.validate();
    alpha.validate();

    const int w = img.width;
    const int h = img.height;
    const std::size_t n = img.pixel_count();

    std::vector<std::uint8_t> mask(n);
    for (std::size_t i = 0; i < n; ++i) mask[i] = alpha.data[i] > 0.0 ? 1 : 0;
    mask = dilate_square(mask, w, h, mask_dilation);

    std::size_t masked = 0;
    for (std::uint8_t m : mask) masked += m;
    if (masked == n) {
        throw std::invalid_argument("inpaint_background: fill mask covers the whole image");
    }
    if (masked == 0) return img;

    std::vector<double> dist = euclidean_distance(mask, w, h);

    // Fill order: march inward, nearest to the known region first. Ties
    // resolve by pixel index so the result is reproducible.
    std::vector<std::uint32_t> order;
    order.reserve(masked);
    for (std::size_t i = 0; i < n; ++i) {
        if (mask[i]) order.push_back(static_cast<std::uint32_t>(i));
    }
    std::sort(order.begin(), order.end(), [&dist](std::uint32_t a, std::uint32_t b) {
        if (dist[a] != dist[b]) return dist[a] < dist[b];
        return a < b;
    });

    RgbImage out = img;
    std::vector<std::uint8_t> known(n);
    for (std::size_t i = 0; i < n; ++i) known[i] = mask[i] ? 0 : 1;

    for (std::uint32_t idx : order) {
        const int x = static_cast<int>(idx % w);
        const int y = static_cast<int>(idx / w);

        // Inward direction: gradient of the distance field.
        int xl = std::max(0, x - 1), xr = std::min(w - 1, x + 1);
        int yl = std::max(0, y - 1), yr = std::min(h - 1, y + 1);
        double gx = xr == xl ? 0.0
                             : (dist[static_cast<std::size_t>(y) * w + xr] -
                                dist[static_cast<std::size_t>(y) * w + xl]) /
                                   (xr - xl);
        double gy = yr == yl ? 0.0
                             : (dist[static_cast<std::size_t>(yr) * w + x] -
                                dist[static_cast<std::size_t>(yl) * w + x]) /
                                   (yr - yl);
        double gn = std::sqrt(gx * gx + gy * gy);
        if (gn > 0.0) {
            gx /= gn;
            gy /= gn;
        }

        double acc[3] = {0.0, 0.0, 0.0};
        double cmin[3] = {2.0, 2.0, 2.0};
        double cmax[3] = {-1.0, -1.0, -1.0};
        double wsum = 0.0;
        for (int dy = -kFillRadius; dy <= kFillRadius; ++dy) {
            int qy = y + dy;
            if (qy < 0 || qy >= h) continue;
            for (int dx = -kFillRadius; dx <= kFillRadius; ++dx) {
                int qx = x + dx;
                if (qx < 0 || qx >= w) continue;
                int d2 = dx * dx + dy * dy;
                if (d2 == 0 || d2 > kFillRadius * kFillRadius) continue;
                std::size_t q = static_cast<std::size_t>(qy) * w + qx;
                if (!known[q]) continue;
                double d = std::sqrt(static_cast<double>(d2));
                // All three factors stay strictly positive, so the fill is a
                // convex combination of the contributing values.
                double dir = std::abs(gx * dx + gy * dy) / d + 0.05;
                double dst = 1.0 / d2;
                double lev = 1.0 / (1.0 + std::abs(dist[q] - dist[idx]));
                double wq = dir * dst * lev;
                wsum += wq;
                for (int c = 0; c < 3; ++c) {
                    double v = out.at(qx, qy, c);
                    acc[c] += wq * v;
                    cmin[c] = std::min(cmin[c], v);
                    cmax[c] = std::max(cmax[c], v);
                }
            }
        }
        // Every masked pixel has an 8-neighbor strictly closer to the known
        // region, and that neighbor is filled (or known) before this one, so
        // the window always holds at least one usable value.
        for (int c = 0; c < 3; ++c) out.at(x, y, c) = std::clamp(acc[c] / wsum, cmin[c], cmax[c]);
        known[idx] = 1;
    }
    return out;
}

}  // namespace harmatte

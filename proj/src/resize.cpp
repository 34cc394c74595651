#include "harmatte/resize.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace harmatte {

namespace {

struct Tap {
    int i0;
    int i1;
    double frac;
};

Tap tap_for(int dst, double scale, int src_n) {
    double s = (dst + 0.5) * scale - 0.5;
    s = std::clamp(s, 0.0, static_cast<double>(src_n - 1));
    int i0 = static_cast<int>(s);
    if (i0 > src_n - 1) i0 = src_n - 1;
    int i1 = std::min(i0 + 1, src_n - 1);
    return {i0, i1, s - i0};
}

}  // namespace

RgbImage resize_bilinear(const RgbImage& img, int out_w, int out_h) {
    detail::require(out_w >= 1 && out_h >= 1, "resize_bilinear: target dimensions must be positive");
    img.validate();
    RgbImage out(out_w, out_h);
    const double sx = static_cast<double>(img.width) / out_w;
    const double sy = static_cast<double>(img.height) / out_h;
#pragma omp parallel for
    for (int y = 0; y < out_h; ++y) {
        Tap ty = tap_for(y, sy, img.height);
        double* dst = out.row(y);
        for (int x = 0; x < out_w; ++x) {
            Tap tx = tap_for(x, sx, img.width);
            double w00 = (1.0 - tx.frac) * (1.0 - ty.frac);
            double w01 = tx.frac * (1.0 - ty.frac);
            double w10 = (1.0 - tx.frac) * ty.frac;
            double w11 = tx.frac * ty.frac;
            for (int c = 0; c < 3; ++c) {
                double v00 = img.at(tx.i0, ty.i0, c);
                double v01 = img.at(tx.i1, ty.i0, c);
                double v10 = img.at(tx.i0, ty.i1, c);
                double v11 = img.at(tx.i1, ty.i1, c);
                double v = w00 * v00 + w01 * v01 + w10 * v10 + w11 * v11;
                // The exact result is a convex combination of the four taps;
                // clamping strips rounding noise so the range contract holds.
                double lo = std::min(std::min(v00, v01), std::min(v10, v11));
                double hi = std::max(std::max(v00, v01), std::max(v10, v11));
                dst[x * 3 + c] = std::clamp(v, lo, hi);
            }
        }
    }
    return out;
}

AlphaMatte resize_bilinear(const AlphaMatte& img, int out_w, int out_h) {
    detail::require(out_w >= 1 && out_h >= 1, "resize_bilinear: target dimensions must be positive");
    img.validate();
    AlphaMatte out(out_w, out_h);
    const double sx = static_cast<double>(img.width) / out_w;
    const double sy = static_cast<double>(img.height) / out_h;
#pragma omp parallel for
    for (int y = 0; y < out_h; ++y) {
        Tap ty = tap_for(y, sy, img.height);
        for (int x = 0; x < out_w; ++x) {
            Tap tx = tap_for(x, sx, img.width);
            double v00 = img.at(tx.i0, ty.i0);
            double v01 = img.at(tx.i1, ty.i0);
            double v10 = img.at(tx.i0, ty.i1);
            double v11 = img.at(tx.i1, ty.i1);
            double v = (1.0 - tx.frac) * (1.0 - ty.frac) * v00 + tx.frac * (1.0 - ty.frac) * v01 +
                       (1.0 - tx.frac) * ty.frac * v10 + tx.frac * ty.frac * v11;
            double lo = std::min(std::min(v00, v01), std::min(v10, v11));
            double hi = std::max(std::max(v00, v01), std::max(v10, v11));
            out.at(x, y) = std::clamp(v, lo, hi);
        }
    }
    return out;
}

}  // namespace harmatte

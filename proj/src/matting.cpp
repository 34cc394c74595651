#include "harmatte/matting.hpp"

#include <algorithm>
#include <cstddef>

#include "harmatte/morphology.hpp"

namespace harmatte {

RgbImage composite(const RgbImage& fg_source, const AlphaMatte& alpha, const RgbImage& background) {
    detail::require_same_size(fg_source.width, fg_source.height, alpha.width, alpha.height,
                              "composite: fg_source vs alpha");
    detail::require_same_size(fg_source.width, fg_source.height, background.width, background.height,
                              "composite: fg_source vs background");
    RgbImage out(fg_source.width, fg_source.height);
    const int h = fg_source.height;
    const int w = fg_source.width;
#pragma omp parallel for
    for (int y = 0; y < h; ++y) {
        const double* f = fg_source.row(y);
        const double* b = background.row(y);
        const double* a = alpha.data.data() + static_cast<std::size_t>(y) * w;
        double* dst = out.row(y);
        for (int x = 0; x < w; ++x) {
            double av = a[x];
            for (int c = 0; c < 3; ++c) {
                double fv = f[x * 3 + c];
                double bv = b[x * 3 + c];
                double v = av * fv + (1.0 - av) * bv;
                // Strip rounding noise so the blend stays between its inputs.
                dst[x * 3 + c] = std::clamp(v, std::min(fv, bv), std::max(fv, bv));
            }
        }
    }
    return out;
}

RgbImage extract_foreground(const RgbImage& img, const AlphaMatte& alpha) {
    detail::require_same_size(img.width, img.height, alpha.width, alpha.height,
                              "extract_foreground: img vs alpha");
    RgbImage out(img.width, img.height);
    const int h = img.height;
    const int w = img.width;
#pragma omp parallel for
    for (int y = 0; y < h; ++y) {
        const double* src = img.row(y);
        const double* a = alpha.data.data() + static_cast<std::size_t>(y) * w;
        double* dst = out.row(y);
        for (int x = 0; x < w; ++x) {
            for (int c = 0; c < 3; ++c) dst[x * 3 + c] = a[x] * src[x * 3 + c];
        }
    }
    return out;
}

Trimap generate_trimap(const AlphaMatte& alpha, int band_radius) {
    detail::require(band_radius >= 0, "generate_trimap: band_radius must be nonnegative");
    alpha.validate();
    const int w = alpha.width;
    const int h = alpha.height;
    std::vector<std::uint8_t> fractional(alpha.pixel_count());
    for (std::size_t i = 0; i < alpha.pixel_count(); ++i) {
        double a = alpha.data[i];
        fractional[i] = (a > 0.0 && a < 1.0) ? 1 : 0;
    }
    std::vector<std::uint8_t> unknown = dilate_square(fractional, w, h, band_radius);
    Trimap t(w, h);
    for (std::size_t i = 0; i < alpha.pixel_count(); ++i) {
        if (unknown[i]) {
            t.labels[i] = TrimapLabel::Unknown;
        } else if (alpha.data[i] == 1.0) {
            t.labels[i] = TrimapLabel::Foreground;
        } else {
            t.labels[i] = TrimapLabel::Background;
        }
    }
    return t;
}

AlphaMatte fuse_prediction(const AlphaMatte& raw_pred, const Trimap& trimap) {
    detail::require_same_size(raw_pred.width, raw_pred.height, trimap.width, trimap.height,
                              "fuse_prediction: raw_pred vs trimap");
    AlphaMatte out(raw_pred.width, raw_pred.height);
    for (std::size_t i = 0; i < out.pixel_count(); ++i) {
        switch (trimap.labels[i]) {
            case TrimapLabel::Unknown: out.data[i] = raw_pred.data[i]; break;
            case TrimapLabel::Foreground: out.data[i] = 1.0; break;
            case TrimapLabel::Background: out.data[i] = 0.0; break;
        }
    }
    return out;
}

}  // namespace harmatte

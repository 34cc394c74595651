#include "harmatte/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace harmatte {

namespace detail {

void require(bool cond, const char* what) {
    if (!cond) throw std::invalid_argument(what);
}

void require_same_size(int aw, int ah, int bw, int bh, const char* what) {
    if (aw != bw || ah != bh) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch, " + std::to_string(aw) +
                                    "x" + std::to_string(ah) + " vs " + std::to_string(bw) + "x" +
                                    std::to_string(bh));
    }
}

}  // namespace detail

RgbImage RgbImage::filled(int w, int h, double r, double g, double b) {
    RgbImage img(w, h);
    for (std::size_t p = 0; p < img.pixel_count(); ++p) {
        img.data[p * 3 + 0] = r;
        img.data[p * 3 + 1] = g;
        img.data[p * 3 + 2] = b;
    }
    return img;
}

void RgbImage::validate() const {
    detail::require(width >= 1 && height >= 1, "RgbImage: dimensions must be at least 1x1");
    detail::require(data.size() == pixel_count() * 3, "RgbImage: data length mismatch");
    for (double v : data) {
        detail::require(std::isfinite(v) && v >= 0.0 && v <= 1.0,
                        "RgbImage: values must be finite and in [0, 1]");
    }
}

void LalphabetaImage::validate() const {
    detail::require(width >= 1 && height >= 1, "LalphabetaImage: dimensions must be at least 1x1");
    detail::require(data.size() == pixel_count() * 3, "LalphabetaImage: data length mismatch");
    for (double v : data) {
        detail::require(std::isfinite(v), "LalphabetaImage: values must be finite");
    }
}

AlphaMatte AlphaMatte::filled(int w, int h, double value) {
    AlphaMatte m(w, h);
    std::fill(m.data.begin(), m.data.end(), value);
    return m;
}

void AlphaMatte::validate() const {
    detail::require(width >= 1 && height >= 1, "AlphaMatte: dimensions must be at least 1x1");
    detail::require(data.size() == pixel_count(), "AlphaMatte: data length mismatch");
    for (double v : data) {
        detail::require(std::isfinite(v) && v >= 0.0 && v <= 1.0,
                        "AlphaMatte: values must be finite and in [0, 1]");
    }
}

std::size_t Trimap::count(TrimapLabel label) const {
    return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), label));
}

}  // namespace harmatte

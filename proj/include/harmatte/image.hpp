#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace harmatte {

/// Three-channel color image, row-major RGB, channel values in [0, 1].
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<double> data;  // width * height * 3

    RgbImage() = default;
    RgbImage(int w, int h) : width(w), height(h), data(static_cast<std::size_t>(w) * h * 3, 0.0) {}

    static RgbImage filled(int w, int h, double r, double g, double b);

    double& at(int x, int y, int c) { return data[(static_cast<std::size_t>(y) * width + x) * 3 + c]; }
    double at(int x, int y, int c) const { return data[(static_cast<std::size_t>(y) * width + x) * 3 + c]; }

    double* row(int y) { return data.data() + static_cast<std::size_t>(y) * width * 3; }
    const double* row(int y) const { return data.data() + static_cast<std::size_t>(y) * width * 3; }

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
    bool same_size(int w, int h) const { return width == w && height == h; }

    /// Throws std::invalid_argument on bad dimensions, non-finite or out-of-range values.
    void validate() const;
};

/// Per-pixel (l, alpha, beta) image. Values are unbounded reals.
struct LalphabetaImage {
    int width = 0;
    int height = 0;
    std::vector<double> data;  // width * height * 3

    LalphabetaImage() = default;
    LalphabetaImage(int w, int h) : width(w), height(h), data(static_cast<std::size_t>(w) * h * 3, 0.0) {}

    double& at(int x, int y, int c) { return data[(static_cast<std::size_t>(y) * width + x) * 3 + c]; }
    double at(int x, int y, int c) const { return data[(static_cast<std::size_t>(y) * width + x) * 3 + c]; }

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }

    void validate() const;
};

/// Single-channel opacity map, values in [0, 1].
struct AlphaMatte {
    int width = 0;
    int height = 0;
    std::vector<double> data;  // width * height

    AlphaMatte() = default;
    AlphaMatte(int w, int h) : width(w), height(h), data(static_cast<std::size_t>(w) * h, 0.0) {}

    static AlphaMatte filled(int w, int h, double value);

    double& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
    bool same_size(int w, int h) const { return width == w && height == h; }

    void validate() const;
};

enum class TrimapLabel : std::uint8_t {
    Background = 0,
    Unknown = 1,
    Foreground = 2,
};

/// Three-state segmentation map. The unknown region is where predictions happen.
struct Trimap {
    int width = 0;
    int height = 0;
    std::vector<TrimapLabel> labels;  // width * height

    Trimap() = default;
    Trimap(int w, int h)
        : width(w), height(h), labels(static_cast<std::size_t>(w) * h, TrimapLabel::Background) {}

    TrimapLabel& at(int x, int y) { return labels[static_cast<std::size_t>(y) * width + x]; }
    TrimapLabel at(int x, int y) const { return labels[static_cast<std::size_t>(y) * width + x]; }

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
    std::size_t count(TrimapLabel label) const;
};

/// Per-channel mean and population standard deviation.
struct ChannelStats {
    double mean[3] = {0.0, 0.0, 0.0};
    double stddev[3] = {0.0, 0.0, 0.0};
};

namespace detail {
void require(bool cond, const char* what);
void require_same_size(int aw, int ah, int bw, int bh, const char* what);
}  // namespace detail

}  // namespace harmatte

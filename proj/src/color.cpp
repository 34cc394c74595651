#include "harmatte/color.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace harmatte {

namespace {

// Reinhard et al. RGB -> LMS matrix. The inverse is computed numerically:
// the rounded inverse printed alongside it in the literature is not an exact
// inverse, and the round-trip contract here is tighter than that rounding.
constexpr double kRgbToLms[3][3] = {
    {0.3811, 0.5783, 0.0402},
    {0.1967, 0.7244, 0.0782},
    {0.0241, 0.1288, 0.8444},
};

struct Mat3 {
    double m[3][3];
};

Mat3 invert3(const double a[3][3]) {
    double det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                 a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                 a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    Mat3 r;
    r.m[0][0] = (a[1][1] * a[2][2] - a[1][2] * a[2][1]) / det;
    r.m[0][1] = -(a[0][1] * a[2][2] - a[0][2] * a[2][1]) / det;
    r.m[0][2] = (a[0][1] * a[1][2] - a[0][2] * a[1][1]) / det;
    r.m[1][0] = -(a[1][0] * a[2][2] - a[1][2] * a[2][0]) / det;
    r.m[1][1] = (a[0][0] * a[2][2] - a[0][2] * a[2][0]) / det;
    r.m[1][2] = -(a[0][0] * a[1][2] - a[0][2] * a[1][0]) / det;
    r.m[2][0] = (a[1][0] * a[2][1] - a[1][1] * a[2][0]) / det;
    r.m[2][1] = -(a[0][0] * a[2][1] - a[0][1] * a[2][0]) / det;
    r.m[2][2] = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) / det;
    return r;
}

const Mat3 kLmsToRgb = invert3(kRgbToLms);

const double kInvSqrt3 = 1.0 / std::sqrt(3.0);
const double kInvSqrt6 = 1.0 / std::sqrt(6.0);
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const double kSqrt3Over3 = std::sqrt(3.0) / 3.0;
const double kSqrt6Over6 = std::sqrt(6.0) / 6.0;
const double kSqrt2Over2 = std::sqrt(2.0) / 2.0;

}  // namespace

LalphabetaImage rgb_to_lalphabeta(const RgbImage& img) {
    img.validate();
    LalphabetaImage out(img.width, img.height);
    const int h = img.height;
    const int w = img.width;
#pragma omp parallel for
    for (int y = 0; y < h; ++y) {
        const double* src = img.row(y);
        double* dst = out.data.data() + static_cast<std::size_t>(y) * w * 3;
        for (int x = 0; x < w; ++x) {
            double r = src[x * 3 + 0];
            double g = src[x * 3 + 1];
            double b = src[x * 3 + 2];
            double L = kRgbToLms[0][0] * r + kRgbToLms[0][1] * g + kRgbToLms[0][2] * b;
            double M = kRgbToLms[1][0] * r + kRgbToLms[1][1] * g + kRgbToLms[1][2] * b;
            double S = kRgbToLms[2][0] * r + kRgbToLms[2][1] * g + kRgbToLms[2][2] * b;
            double lL = std::log10(std::max(L, kLmsLogFloor));
            double lM = std::log10(std::max(M, kLmsLogFloor));
            double lS = std::log10(std::max(S, kLmsLogFloor));
            dst[x * 3 + 0] = (lL + lM + lS) * kInvSqrt3;
            dst[x * 3 + 1] = (lL + lM - 2.0 * lS) * kInvSqrt6;
            dst[x * 3 + 2] = (lL - lM) * kInvSqrt2;
        }
    }
    return out;
}

RgbImage lalphabeta_to_rgb(const LalphabetaImage& img) {
    img.validate();
    RgbImage out(img.width, img.height);
    const int h = img.height;
    const int w = img.width;
#pragma omp parallel for
    for (int y = 0; y < h; ++y) {
        const double* src = img.data.data() + static_cast<std::size_t>(y) * w * 3;
        double* dst = out.row(y);
        for (int x = 0; x < w; ++x) {
            double l = src[x * 3 + 0];
            double a = src[x * 3 + 1];
            double b = src[x * 3 + 2];
            double lL = l * kSqrt3Over3 + a * kSqrt6Over6 + b * kSqrt2Over2;
            double lM = l * kSqrt3Over3 + a * kSqrt6Over6 - b * kSqrt2Over2;
            double lS = l * kSqrt3Over3 - a * (2.0 * kSqrt6Over6);
            double L = std::pow(10.0, lL);
            double M = std::pow(10.0, lM);
            double S = std::pow(10.0, lS);
            for (int c = 0; c < 3; ++c) {
                double v = kLmsToRgb.m[c][0] * L + kLmsToRgb.m[c][1] * M + kLmsToRgb.m[c][2] * S;
                dst[x * 3 + c] = std::clamp(v, 0.0, 1.0);
            }
        }
    }
    return out;
}

ChannelStats lab_channel_stats(const LalphabetaImage& img) {
    img.validate();
    const int h = img.height;
    const int w = img.width;
    const double n = static_cast<double>(img.pixel_count());

    // Row partials combined in row order, so the result does not depend on
    // the number of threads.
    std::vector<double> row_sum(static_cast<std::size_t>(h) * 3, 0.0);
#pragma omp parallel for
    for (int y = 0; y < h; ++y) {
        const double* src = img.data.data() + static_cast<std::size_t>(y) * w * 3;
        double s[3] = {0.0, 0.0, 0.0};
        for (int x = 0; x < w; ++x) {
            s[0] += src[x * 3 + 0];
            s[1] += src[x * 3 + 1];
            s[2] += src[x * 3 + 2];
        }
        for (int c = 0; c < 3; ++c) row_sum[static_cast<std::size_t>(y) * 3 + c] = s[c];
    }
    ChannelStats stats;
    for (int y = 0; y < h; ++y) {
        for (int c = 0; c < 3; ++c) stats.mean[c] += row_sum[static_cast<std::size_t>(y) * 3 + c];
    }
    for (int c = 0; c < 3; ++c) stats.mean[c] /= n;

#pragma omp parallel for
    for (int y = 0; y < h; ++y) {
        const double* src = img.data.data() + static_cast<std::size_t>(y) * w * 3;
        double s[3] = {0.0, 0.0, 0.0};
        for (int x = 0; x < w; ++x) {
            for (int c = 0; c < 3; ++c) {
                double d = src[x * 3 + c] - stats.mean[c];
                s[c] += d * d;
            }
        }
        for (int c = 0; c < 3; ++c) row_sum[static_cast<std::size_t>(y) * 3 + c] = s[c];
    }
    double var[3] = {0.0, 0.0, 0.0};
    for (int y = 0; y < h; ++y) {
        for (int c = 0; c < 3; ++c) var[c] += row_sum[static_cast<std::size_t>(y) * 3 + c];
    }
    for (int c = 0; c < 3; ++c) stats.stddev[c] = std::sqrt(var[c] / n);
    return stats;
}

}  // namespace harmatte

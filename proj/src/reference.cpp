#include "harmatte/reference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "harmatte/color.hpp"

namespace harmatte::reference {

namespace {

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

int reflect(int i, int n) {
    while (i < 0 || i >= n) {
        if (i < 0) i = -i - 1;
        if (i >= n) i = 2 * n - 1 - i;
    }
    return i;
}

}  // namespace

RgbImage composite(const RgbImage& fg_source, const AlphaMatte& alpha, const RgbImage& background) {
    detail::require_same_size(fg_source.width, fg_source.height, alpha.width, alpha.height,
                              "reference::composite: fg_source vs alpha");
    detail::require_same_size(fg_source.width, fg_source.height, background.width, background.height,
                              "reference::composite: fg_source vs background");
    RgbImage out(fg_source.width, fg_source.height);
    for (std::size_t p = 0; p < out.pixel_count(); ++p) {
        double a = alpha.data[p];
        for (int c = 0; c < 3; ++c) {
            double fv = fg_source.data[p * 3 + c];
            double bv = background.data[p * 3 + c];
            double v = a * fv + (1.0 - a) * bv;
            out.data[p * 3 + c] = std::clamp(v, std::min(fv, bv), std::max(fv, bv));
        }
    }
    return out;
}

RgbImage extract_foreground(const RgbImage& img, const AlphaMatte& alpha) {
    detail::require_same_size(img.width, img.height, alpha.width, alpha.height,
                              "reference::extract_foreground: img vs alpha");
    RgbImage out(img.width, img.height);
    for (std::size_t p = 0; p < out.pixel_count(); ++p) {
        for (int c = 0; c < 3; ++c) out.data[p * 3 + c] = alpha.data[p] * img.data[p * 3 + c];
    }
    return out;
}

AlphaMatte fuse_prediction(const AlphaMatte& raw_pred, const Trimap& trimap) {
    detail::require_same_size(raw_pred.width, raw_pred.height, trimap.width, trimap.height,
                              "reference::fuse_prediction: raw_pred vs trimap");
    AlphaMatte out(raw_pred.width, raw_pred.height);
    for (std::size_t i = 0; i < out.pixel_count(); ++i) {
        if (trimap.labels[i] == TrimapLabel::Unknown) {
            out.data[i] = raw_pred.data[i];
        } else if (trimap.labels[i] == TrimapLabel::Foreground) {
            out.data[i] = 1.0;
        } else {
            out.data[i] = 0.0;
        }
    }
    return out;
}

RgbImage illumination_adjust(const RgbImage& img, double factor) {
    detail::require(std::isfinite(factor) && factor > 0.0,
                    "reference::illumination_adjust: factor must be positive");
    img.validate();
    RgbImage out(img.width, img.height);
    for (std::size_t i = 0; i < img.data.size(); ++i) {
        out.data[i] = std::clamp(factor * img.data[i], 0.0, 1.0);
    }
    return out;
}

RgbImage color_enhance(const RgbImage& img, double factor) {
    detail::require(std::isfinite(factor) && factor > 0.0,
                    "reference::color_enhance: factor must be positive");
    img.validate();
    RgbImage out(img.width, img.height);
    for (std::size_t p = 0; p < img.pixel_count(); ++p) {
        double gray = 0.299 * img.data[p * 3 + 0] + 0.587 * img.data[p * 3 + 1] +
                      0.114 * img.data[p * 3 + 2];
        for (int c = 0; c < 3; ++c) {
            out.data[p * 3 + c] = std::clamp(gray + factor * (img.data[p * 3 + c] - gray), 0.0, 1.0);
        }
    }
    return out;
}

LalphabetaImage rgb_to_lalphabeta(const RgbImage& img) {
    img.validate();
    LalphabetaImage out(img.width, img.height);
    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    const double inv_sqrt6 = 1.0 / std::sqrt(6.0);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t p = 0; p < img.pixel_count(); ++p) {
        double r = img.data[p * 3 + 0];
        double g = img.data[p * 3 + 1];
        double b = img.data[p * 3 + 2];
        double lms[3];
        for (int c = 0; c < 3; ++c) {
            lms[c] = std::log10(
                std::max(kRgbToLms[c][0] * r + kRgbToLms[c][1] * g + kRgbToLms[c][2] * b,
                         kLmsLogFloor));
        }
        out.data[p * 3 + 0] = (lms[0] + lms[1] + lms[2]) * inv_sqrt3;
        out.data[p * 3 + 1] = (lms[0] + lms[1] - 2.0 * lms[2]) * inv_sqrt6;
        out.data[p * 3 + 2] = (lms[0] - lms[1]) * inv_sqrt2;
    }
    return out;
}

RgbImage lalphabeta_to_rgb(const LalphabetaImage& img) {
    img.validate();
    RgbImage out(img.width, img.height);
    const double s3 = std::sqrt(3.0) / 3.0;
    const double s6 = std::sqrt(6.0) / 6.0;
    const double s2 = std::sqrt(2.0) / 2.0;
    for (std::size_t p = 0; p < img.pixel_count(); ++p) {
        double l = img.data[p * 3 + 0];
        double a = img.data[p * 3 + 1];
        double b = img.data[p * 3 + 2];
        double L = std::pow(10.0, l * s3 + a * s6 + b * s2);
        double M = std::pow(10.0, l * s3 + a * s6 - b * s2);
        double S = std::pow(10.0, l * s3 - a * (2.0 * s6));
        for (int c = 0; c < 3; ++c) {
            double v = kLmsToRgb.m[c][0] * L + kLmsToRgb.m[c][1] * M + kLmsToRgb.m[c][2] * S;
            out.data[p * 3 + c] = std::clamp(v, 0.0, 1.0);
        }
    }
    return out;
}

ChannelStats lab_channel_stats(const LalphabetaImage& img) {
    img.validate();
    ChannelStats stats;
    const double n = static_cast<double>(img.pixel_count());
    for (std::size_t p = 0; p < img.pixel_count(); ++p) {
        for (int c = 0; c < 3; ++c) stats.mean[c] += img.data[p * 3 + c];
    }
    for (int c = 0; c < 3; ++c) stats.mean[c] /= n;
    double var[3] = {0.0, 0.0, 0.0};
    for (std::size_t p = 0; p < img.pixel_count(); ++p) {
        for (int c = 0; c < 3; ++c) {
            double d = img.data[p * 3 + c] - stats.mean[c];
            var[c] += d * d;
        }
    }
    for (int c = 0; c < 3; ++c) stats.stddev[c] = std::sqrt(var[c] / n);
    return stats;
}

namespace {

double sample_axis(int dst, double scale, int n, int& i0, int& i1) {
    double s = (dst + 0.5) * scale - 0.5;
    s = std::clamp(s, 0.0, static_cast<double>(n - 1));
    i0 = static_cast<int>(s);
    if (i0 > n - 1) i0 = n - 1;
    i1 = std::min(i0 + 1, n - 1);
    return s - i0;
}

}  // namespace

RgbImage resize_bilinear(const RgbImage& img, int out_w, int out_h) {
    detail::require(out_w >= 1 && out_h >= 1,
                    "reference::resize_bilinear: target dimensions must be positive");
    img.validate();
    RgbImage out(out_w, out_h);
    double sx = static_cast<double>(img.width) / out_w;
    double sy = static_cast<double>(img.height) / out_h;
    for (int y = 0; y < out_h; ++y) {
        int y0, y1;
        double fy = sample_axis(y, sy, img.height, y0, y1);
        for (int x = 0; x < out_w; ++x) {
            int x0, x1;
            double fx = sample_axis(x, sx, img.width, x0, x1);
            for (int c = 0; c < 3; ++c) {
                double v00 = img.at(x0, y0, c);
                double v01 = img.at(x1, y0, c);
                double v10 = img.at(x0, y1, c);
                double v11 = img.at(x1, y1, c);
                double v = (1.0 - fx) * (1.0 - fy) * v00 + fx * (1.0 - fy) * v01 +
                           (1.0 - fx) * fy * v10 + fx * fy * v11;
                double lo = std::min(std::min(v00, v01), std::min(v10, v11));
                double hi = std::max(std::max(v00, v01), std::max(v10, v11));
                out.at(x, y, c) = std::clamp(v, lo, hi);
            }
        }
    }
    return out;
}

AlphaMatte resize_bilinear(const AlphaMatte& img, int out_w, int out_h) {
    detail::require(out_w >= 1 && out_h >= 1,
                    "reference::resize_bilinear: target dimensions must be positive");
    img.validate();
    AlphaMatte out(out_w, out_h);
    double sx = static_cast<double>(img.width) / out_w;
    double sy = static_cast<double>(img.height) / out_h;
    for (int y = 0; y < out_h; ++y) {
        int y0, y1;
        double fy = sample_axis(y, sy, img.height, y0, y1);
        for (int x = 0; x < out_w; ++x) {
            int x0, x1;
            double fx = sample_axis(x, sx, img.width, x0, x1);
            double v00 = img.at(x0, y0);
            double v01 = img.at(x1, y0);
            double v10 = img.at(x0, y1);
            double v11 = img.at(x1, y1);
            double v = (1.0 - fx) * (1.0 - fy) * v00 + fx * (1.0 - fy) * v01 +
                       (1.0 - fx) * fy * v10 + fx * fy * v11;
            double lo = std::min(std::min(v00, v01), std::min(v10, v11));
            double hi = std::max(std::max(v00, v01), std::max(v10, v11));
            out.at(x, y) = std::clamp(v, lo, hi);
        }
    }
    return out;
}

std::vector<double> gaussian_gradient_magnitude(const AlphaMatte& m, double sigma) {
    detail::require(std::isfinite(sigma) && sigma > 0.0,
                    "reference::gaussian_gradient_magnitude: sigma must be positive");
    int r = std::max(1, static_cast<int>(std::floor(4.0 * sigma)));
    std::vector<double> smooth(2 * r + 1), deriv(2 * r + 1);
    double sum = 0.0;
    for (int i = -r; i <= r; ++i) {
        smooth[i + r] = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
        sum += smooth[i + r];
    }
    for (int i = -r; i <= r; ++i) {
        smooth[i + r] /= sum;
        deriv[i + r] = (-i / (sigma * sigma)) * smooth[i + r];
    }

    const int w = m.width;
    const int h = m.height;
    auto corr_h = [&](const std::vector<double>& src, const std::vector<double>& k) {
        std::vector<double> out(src.size());
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                double s = 0.0;
                for (int i = -r; i <= r; ++i) {
                    s += k[i + r] * src[static_cast<std::size_t>(y) * w + reflect(x + i, w)];
                }
                out[static_cast<std::size_t>(y) * w + x] = s;
            }
        }
        return out;
    };
    auto corr_v = [&](const std::vector<double>& src, const std::vector<double>& k) {
        std::vector<double> out(src.size());
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                double s = 0.0;
                for (int i = -r; i <= r; ++i) {
                    s += k[i + r] * src[static_cast<std::size_t>(reflect(y + i, h)) * w + x];
                }
                out[static_cast<std::size_t>(y) * w + x] = s;
            }
        }
        return out;
    };

    std::vector<double> gx = corr_v(corr_h(m.data, deriv), smooth);
    std::vector<double> gy = corr_h(corr_v(m.data, deriv), smooth);
    std::vector<double> mag(m.data.size());
    for (std::size_t i = 0; i < mag.size(); ++i) mag[i] = std::sqrt(gx[i] * gx[i] + gy[i] * gy[i]);
    return mag;
}

std::vector<std::uint8_t> dilate_square(const std::vector<std::uint8_t>& mask, int width, int height,
                                        int radius) {
    if (width < 1 || height < 1 || mask.size() != static_cast<std::size_t>(width) * height) {
        throw std::invalid_argument("reference::dilate_square: bad mask dimensions");
    }
    if (radius < 0) throw std::invalid_argument("reference::dilate_square: radius must be nonnegative");
    std::vector<std::uint8_t> out(mask.size(), 0);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            std::uint8_t v = 0;
            for (int dy = -radius; dy <= radius && !v; ++dy) {
                int qy = y + dy;
                if (qy < 0 || qy >= height) continue;
                for (int dx = -radius; dx <= radius && !v; ++dx) {
                    int qx = x + dx;
                    if (qx < 0 || qx >= width) continue;
                    v = mask[static_cast<std::size_t>(qy) * width + qx];
                }
            }
            out[static_cast<std::size_t>(y) * width + x] = v;
        }
    }
    return out;
}

}  // namespace harmatte::reference

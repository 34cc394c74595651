#include "harmatte/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <stdexcept>

namespace harmatte {

namespace {

void check_metric_inputs(const AlphaMatte& pred, const AlphaMatte& gt, const Trimap& trimap,
                         const char* what) {
    detail::require_same_size(pred.width, pred.height, gt.width, gt.height, what);
    detail::require_same_size(pred.width, pred.height, trimap.width, trimap.height, what);
    pred.validate();
    gt.validate();
    detail::require(trimap.count(TrimapLabel::Unknown) > 0,
                    "matting metrics: trimap has no unknown pixels");
}

int reflect(int i, int n) {
    while (i < 0 || i >= n) {
        if (i < 0) i = -i - 1;
        if (i >= n) i = 2 * n - 1 - i;
    }
    return i;
}

// Horizontal then vertical correlation passes with reflective borders.
std::vector<double> correlate_h(const std::vector<double>& src, int w, int h,
                                const std::vector<double>& k, int r) {
    std::vector<double> out(src.size());
#pragma omp parallel for
    for (int y = 0; y < h; ++y) {
        const double* row = src.data() + static_cast<std::size_t>(y) * w;
        double* dst = out.data() + static_cast<std::size_t>(y) * w;
        for (int x = 0; x < w; ++x) {
            double s = 0.0;
            for (int i = -r; i <= r; ++i) s += k[i + r] * row[reflect(x + i, w)];
            dst[x] = s;
        }
    }
    return out;
}

std::vector<double> correlate_v(const std::vector<double>& src, int w, int h,
                                const std::vector<double>& k, int r) {
    std::vector<double> out(src.size());
#pragma omp parallel for
    for (int y = 0; y < h; ++y) {
        double* dst = out.data() + static_cast<std::size_t>(y) * w;
        for (int x = 0; x < w; ++x) {
            double s = 0.0;
            for (int i = -r; i <= r; ++i) {
                s += k[i + r] * src[static_cast<std::size_t>(reflect(y + i, h)) * w + x];
            }
            dst[x] = s;
        }
    }
    return out;
}

void derivative_kernels(double sigma, std::vector<double>& smooth, std::vector<double>& deriv,
                        int& radius) {
    radius = std::max(1, static_cast<int>(std::floor(4.0 * sigma)));
    smooth.assign(2 * radius + 1, 0.0);
    deriv.assign(2 * radius + 1, 0.0);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        double g = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
        smooth[i + radius] = g;
        sum += g;
    }
    for (int i = -radius; i <= radius; ++i) {
        smooth[i + radius] /= sum;
        deriv[i + radius] = (-i / (sigma * sigma)) * smooth[i + radius];
    }
}

// Finds the largest 4-connected component of a binary map; ties go to the
// component discovered first in scan order.
std::vector<std::uint8_t> largest_component(const std::vector<std::uint8_t>& bin, int w, int h) {
    std::vector<std::uint8_t> omega(bin.size(), 0);
    std::vector<std::uint8_t> visited(bin.size(), 0);
    std::vector<std::uint32_t> best, current, stack;
    for (std::size_t start = 0; start < bin.size(); ++start) {
        if (!bin[start] || visited[start]) continue;
        current.clear();
        stack.assign(1, static_cast<std::uint32_t>(start));
        visited[start] = 1;
        while (!stack.empty()) {
            std::uint32_t p = stack.back();
            stack.pop_back();
            current.push_back(p);
            int x = static_cast<int>(p % w);
            int y = static_cast<int>(p / w);
            const int nx[4] = {x - 1, x + 1, x, x};
            const int ny[4] = {y, y, y - 1, y + 1};
            for (int i = 0; i < 4; ++i) {
                if (nx[i] < 0 || nx[i] >= w || ny[i] < 0 || ny[i] >= h) continue;
                std::size_t q = static_cast<std::size_t>(ny[i]) * w + nx[i];
                if (bin[q] && !visited[q]) {
                    visited[q] = 1;
                    stack.push_back(static_cast<std::uint32_t>(q));
                }
            }
        }
        if (current.size() > best.size()) best = current;
    }
    for (std::uint32_t p : best) omega[p] = 1;
    return omega;
}

}  // namespace

std::vector<double> gaussian_gradient_magnitude(const AlphaMatte& m, double sigma) {
    detail::require(std::isfinite(sigma) && sigma > 0.0,
                    "gaussian_gradient_magnitude: sigma must be positive");
    std::vector<double> smooth, deriv;
    int r = 0;
    derivative_kernels(sigma, smooth, deriv, r);
    std::vector<double> gx = correlate_v(correlate_h(m.data, m.width, m.height, deriv, r), m.width,
                                         m.height, smooth, r);
    std::vector<double> gy = correlate_h(correlate_v(m.data, m.width, m.height, deriv, r), m.width,
                                         m.height, smooth, r);
    std::vector<double> mag(m.data.size());
#pragma omp parallel for
    for (int y = 0; y < m.height; ++y) {
        for (int x = 0; x < m.width; ++x) {
            std::size_t i = static_cast<std::size_t>(y) * m.width + x;
            mag[i] = std::sqrt(gx[i] * gx[i] + gy[i] * gy[i]);
        }
    }
    return mag;
}

double mse_alpha(const AlphaMatte& pred, const AlphaMatte& gt, const Trimap& trimap) {
    check_metric_inputs(pred, gt, trimap, "mse_alpha");
    double total = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < pred.pixel_count(); ++i) {
        if (trimap.labels[i] != TrimapLabel::Unknown) continue;
        double d = pred.data[i] - gt.data[i];
        total += d * d;
        ++count;
    }
    return total / static_cast<double>(count);
}

double sad_alpha(const AlphaMatte& pred, const AlphaMatte& gt, const Trimap& trimap) {
    check_metric_inputs(pred, gt, trimap, "sad_alpha");
    double total = 0.0;
    for (std::size_t i = 0; i < pred.pixel_count(); ++i) {
        if (trimap.labels[i] != TrimapLabel::Unknown) continue;
        total += std::abs(pred.data[i] - gt.data[i]);
    }
    return total / 1000.0;
}

double grad_error(const AlphaMatte& pred, const AlphaMatte& gt, const Trimap& trimap, double sigma) {
    check_metric_inputs(pred, gt, trimap, "grad_error");
    std::vector<double> mp = gaussian_gradient_magnitude(pred, sigma);
    std::vector<double> mg = gaussian_gradient_magnitude(gt, sigma);
    double total = 0.0;
    for (std::size_t i = 0; i < pred.pixel_count(); ++i) {
        if (trimap.labels[i] != TrimapLabel::Unknown) continue;
        double d = mp[i] - mg[i];
        total += d * d;
    }
    return total / 1000.0;
}

double conn_error(const AlphaMatte& pred, const AlphaMatte& gt, const Trimap& trimap, double step,
                  double theta) {
    detail::require(std::isfinite(step) && step > 0.0 && step < 1.0,
                    "conn_error: step must be in (0, 1)");
    detail::require(std::isfinite(theta) && theta > 0.0 && theta < 1.0,
                    "conn_error: theta must be in (0, 1)");
    check_metric_inputs(pred, gt, trimap, "conn_error");

    const int w = pred.width;
    const int h = pred.height;
    const std::size_t n = pred.pixel_count();

    // l(p): the last threshold at which p was still inside the source region,
    // walking thresholds upward from 0. Pixels that never leave keep 1.
    std::vector<double> level(n, 1.0);
    std::vector<std::uint8_t> dropped(n, 0);
    std::vector<std::uint8_t> bin(n);
    double prev_t = 0.0;
    for (int k = 1;; ++k) {
        double t = k * step;
        if (t > 1.0 + 1e-12) break;
        for (std::size_t i = 0; i < n; ++i) bin[i] = (pred.data[i] >= t && gt.data[i] >= t) ? 1 : 0;
        std::vector<std::uint8_t> omega = largest_component(bin, w, h);
        for (std::size_t i = 0; i < n; ++i) {
            if (!dropped[i] && !omega[i]) {
                dropped[i] = 1;
                level[i] = prev_t;
            }
        }
        prev_t = t;
    }

    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (trimap.labels[i] != TrimapLabel::Unknown) continue;
        double dp = pred.data[i] - level[i];
        double dg = gt.data[i] - level[i];
        double phi_p = 1.0 - (dp >= theta ? dp : 0.0);
        double phi_g = 1.0 - (dg >= theta ? dg : 0.0);
        total += std::abs(phi_p - phi_g);
    }
    return total / 1000.0;
}

MattingScore score_matting(const AlphaMatte& pred, const AlphaMatte& gt, const Trimap& trimap,
                           double grad_sigma, double conn_step, double conn_theta) {
    MattingScore s;
    s.mse = mse_alpha(pred, gt, trimap);
    s.sad = sad_alpha(pred, gt, trimap);
    s.grad = grad_error(pred, gt, trimap, grad_sigma);
    s.conn = conn_error(pred, gt, trimap, conn_step, conn_theta);
    s.unknown_pixel_count = trimap.count(TrimapLabel::Unknown);
    return s;
}

std::map<std::string, MosSummary> mos_aggregate(const std::vector<RaterScore>& scores) {
    detail::require(!scores.empty(), "mos_aggregate: empty score list");
    struct Bucket {
        std::vector<int> values;
        std::set<std::string> raters;
    };
    std::map<std::string, Bucket> buckets;
    for (const RaterScore& s : scores) {
        detail::require(s.score >= 1 && s.score <= 5, "mos_aggregate: scores must be integers in [1, 5]");
        Bucket& b = buckets[s.method];
        b.values.push_back(s.score);
        b.raters.insert(s.rater_id);
    }
    std::map<std::string, MosSummary> out;
    for (const auto& [method, bucket] : buckets) {
        double sum = 0.0;
        for (int v : bucket.values) sum += v;
        double mean = sum / static_cast<double>(bucket.values.size());
        double var = 0.0;
        for (int v : bucket.values) var += (v - mean) * (v - mean);
        var /= static_cast<double>(bucket.values.size());
        out[method] = MosSummary{mean, std::sqrt(var), bucket.raters.size()};
    }
    return out;
}

}  // namespace harmatte

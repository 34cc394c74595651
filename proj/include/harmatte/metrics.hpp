#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "harmatte/image.hpp"

namespace harmatte {

/// The standard matting error suite, computed over the trimap unknown region.
struct MattingScore {
    double mse = 0.0;
    double sad = 0.0;
    double grad = 0.0;
    double conn = 0.0;
    std::size_t unknown_pixel_count = 0;
};

/// Defaults of the conventional matting benchmark tooling.
inline constexpr double kGradSigma = 1.4;
inline constexpr double kConnStep = 0.1;
inline constexpr double kConnTheta = 0.15;

/// Per-pixel gradient magnitude from separable first-order Gaussian
/// derivative filters (kernels truncated at 4*sigma, reflective borders).
std::vector<double> gaussian_gradient_magnitude(const AlphaMatte& m, double sigma);

/// Mean of (pred - gt)^2 over unknown pixels. Rejects an empty unknown region.
double mse_alpha(const AlphaMatte& pred, const AlphaMatte& gt, const Trimap& trimap);

/// Sum of |pred - gt| over unknown pixels, divided by 1000 (the conventional
/// reporting scale).
double sad_alpha(const AlphaMatte& pred, const AlphaMatte& gt, const Trimap& trimap);

/// Gradient-magnitude discrepancy: both mattes are filtered with first-order
/// Gaussian derivative kernels (truncated at 4*sigma, reflective borders);
/// returns sum over unknown of (|grad pred| - |grad gt|)^2, divided by 1000.
double grad_error(const AlphaMatte& pred, const AlphaMatte& gt, const Trimap& trimap,
                  double sigma = kGradSigma);

/// Connectivity-degree discrepancy. Thresholds t = 0, step, 2*step, ... <= 1
/// binarize both mattes at >= t; the source region Omega_t is the largest
/// 4-connected component of their intersection (ties broken toward the
/// earliest component in scan order). A pixel's connectivity level l(p) is
/// the last threshold before it first falls out of Omega (1 if it never
/// does, 0 if Omega is empty at the first positive threshold). With
/// d(p) = x(p) - l(p), the degree is phi(x, p) = 1 - d(p) * [d(p) >= theta];
/// returns sum over unknown of |phi(pred, p) - phi(gt, p)|, divided by 1000.
double conn_error(const AlphaMatte& pred, const AlphaMatte& gt, const Trimap& trimap,
                  double step = kConnStep, double theta = kConnTheta);

/// All four metrics in one pass over the shared validation.
MattingScore score_matting(const AlphaMatte& pred, const AlphaMatte& gt, const Trimap& trimap,
                           double grad_sigma = kGradSigma, double conn_step = kConnStep,
                           double conn_theta = kConnTheta);

/// One human rating: an integral score in [1, 5] from one rater for one
/// method's output on one image.
struct RaterScore {
    std::string image_id;
    std::string rater_id;
    std::string method;
    int score = 0;
};

struct MosSummary {
    double mean = 0.0;
    double stddev = 0.0;        // population convention
    std::size_t rater_count = 0;  // distinct raters contributing
};

/// Mean opinion score per method. Rejects an empty list and out-of-range or
/// non-integral scores.
std::map<std::string, MosSummary> mos_aggregate(const std::vector<RaterScore>& scores);

}  // namespace harmatte

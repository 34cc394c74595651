#pragma once

#include "harmatte/image.hpp"

namespace harmatte {

/// Per-pixel convex blend: out = alpha * fg_source + (1 - alpha) * background.
/// alpha == 1 returns the foreground source bit-exactly, alpha == 0 the
/// background. All three inputs must share dimensions.
RgbImage composite(const RgbImage& fg_source, const AlphaMatte& alpha, const RgbImage& background);

/// Premultiplied foreground F = alpha * img.
RgbImage extract_foreground(const RgbImage& img, const AlphaMatte& alpha);

/// Trimap from an alpha matte: the unknown band is the dilation of the
/// fractional-alpha set {0 < a < 1} by a square (Chebyshev) structuring
/// element of the given radius; remaining pixels are foreground where a == 1
/// and background where a == 0.
Trimap generate_trimap(const AlphaMatte& alpha, int band_radius);

/// Trimap-masked fusion: the raw prediction survives only on the unknown
/// region; known regions are forced to exactly 1 (foreground) or 0
/// (background). Idempotent.
AlphaMatte fuse_prediction(const AlphaMatte& raw_pred, const Trimap& trimap);

}  // namespace harmatte

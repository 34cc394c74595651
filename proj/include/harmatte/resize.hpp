#pragma once

#include "harmatte/image.hpp"

namespace harmatte {

/// Bilinear resample with the half-pixel-center convention; sampling
/// coordinates are clamped to the source edges, so output values never leave
/// the input's [min, max] range. Rejects non-positive target dimensions.
RgbImage resize_bilinear(const RgbImage& img, int out_w, int out_h);
AlphaMatte resize_bilinear(const AlphaMatte& img, int out_w, int out_h);

}  // namespace harmatte

#pragma once

#include "harmatte/image.hpp"

namespace harmatte {

/// Floor applied to LMS channels before the base-10 logarithm, so black
/// pixels stay finite.
inline constexpr double kLmsLogFloor = 1e-4;

/// RGB -> LMS -> log10 -> l-alpha-beta. Total on valid images; the LMS floor
/// keeps the logarithm finite for dark pixels.
LalphabetaImage rgb_to_lalphabeta(const RgbImage& img);

/// Algebraic inverse of rgb_to_lalphabeta (up to the LMS floor), with the
/// result clipped to [0, 1].
RgbImage lalphabeta_to_rgb(const LalphabetaImage& img);

/// Per-channel mean and population standard deviation over all pixels.
ChannelStats lab_channel_stats(const LalphabetaImage& img);

}  // namespace harmatte

#pragma once

#include <cstdint>
#include <vector>

namespace harmatte {

/// Binary dilation by a square (Chebyshev) structuring element of the given
/// radius. Separable: one horizontal and one vertical max pass.
std::vector<std::uint8_t> dilate_square(const std::vector<std::uint8_t>& mask, int width, int height,
                                        int radius);

/// Exact Euclidean distance to the nearest zero pixel, for every pixel of a
/// binary mask (distance 0 outside the mask). Squared-distance transform per
/// Felzenszwalb-Huttenlocher, then a square root.
std::vector<double> euclidean_distance(const std::vector<std::uint8_t>& mask, int width, int height);

}  // namespace harmatte

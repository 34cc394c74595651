#pragma once

#include <filesystem>

#include "harmatte/image.hpp"

namespace harmatte {

/// 8-bit PNG I/O. Decoding maps byte values to value/255; encoding rounds
/// half away from zero. Color inputs are reduced to the requested shape
/// (palette expanded, 16-bit stripped, alpha channels dropped for RGB loads).
/// Trimaps use the bit-exact {0, 128, 255} grayscale encoding.

RgbImage load_rgb_png(const std::filesystem::path& path);
AlphaMatte load_alpha_png(const std::filesystem::path& path);
Trimap load_trimap_png(const std::filesystem::path& path);

void save_rgb_png(const std::filesystem::path& path, const RgbImage& img);
void save_alpha_png(const std::filesystem::path& path, const AlphaMatte& alpha);
void save_trimap_png(const std::filesystem::path& path, const Trimap& trimap);

/// value/255 quantization used by the encoders, exposed for round-trip logic.
std::uint8_t encode_u8(double value);

}  // namespace harmatte

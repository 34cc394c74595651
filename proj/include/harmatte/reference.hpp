#pragma once

#include <cstdint>
#include <vector>

#include "harmatte/image.hpp"

// Plain single-threaded implementations of the data-parallel kernels. These
// stay deliberately simple: the tests hold the OpenMP kernels to them, and
// the benchmark binary measures one against the other.

namespace harmatte::reference {

RgbImage composite(const RgbImage& fg_source, const AlphaMatte& alpha, const RgbImage& background);
RgbImage extract_foreground(const RgbImage& img, const AlphaMatte& alpha);
AlphaMatte fuse_prediction(const AlphaMatte& raw_pred, const Trimap& trimap);
RgbImage illumination_adjust(const RgbImage& img, double factor);
RgbImage color_enhance(const RgbImage& img, double factor);
LalphabetaImage rgb_to_lalphabeta(const RgbImage& img);
RgbImage lalphabeta_to_rgb(const LalphabetaImage& img);
ChannelStats lab_channel_stats(const LalphabetaImage& img);
RgbImage resize_bilinear(const RgbImage& img, int out_w, int out_h);
AlphaMatte resize_bilinear(const AlphaMatte& img, int out_w, int out_h);
std::vector<double> gaussian_gradient_magnitude(const AlphaMatte& m, double sigma);
std::vector<std::uint8_t> dilate_square(const std::vector<std::uint8_t>& mask, int width, int height,
                                        int radius);

}  // namespace harmatte::reference

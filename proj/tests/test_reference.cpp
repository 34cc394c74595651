#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "harmatte/adjust.hpp"
#include "harmatte/color.hpp"
#include "harmatte/matting.hpp"
#include "harmatte/metrics.hpp"
#include "harmatte/morphology.hpp"
#include "harmatte/reference.hpp"
#include "harmatte/resize.hpp"
#include "harmatte/rng.hpp"
#include "helpers.hpp"

using namespace harmatte;

// The OpenMP kernels must match their single-threaded counterparts to the
// bit, not just to a tolerance: scheduling must never change the result.

TEST_CASE("compositing kernels agree bit for bit") {
    SplitMix64 rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        int w = 5 + static_cast<int>(rng.next_below(60));
        int h = 5 + static_cast<int>(rng.next_below(60));
        RgbImage fg = testutil::random_image(rng, w, h);
        RgbImage bg = testutil::random_image(rng, w, h);
        AlphaMatte a = testutil::random_matte(rng, w, h);
        CHECK(composite(fg, a, bg).data == reference::composite(fg, a, bg).data);
        CHECK(extract_foreground(fg, a).data == reference::extract_foreground(fg, a).data);
    }
}

TEST_CASE("prediction fusion kernels agree bit for bit") {
    SplitMix64 rng(102);
    for (int trial = 0; trial < 20; ++trial) {
        int w = 4 + static_cast<int>(rng.next_below(40));
        int h = 4 + static_cast<int>(rng.next_below(40));
        AlphaMatte pred = testutil::random_matte(rng, w, h);
        Trimap tm = testutil::random_trimap(rng, w, h);
        CHECK(fuse_prediction(pred, tm).data == reference::fuse_prediction(pred, tm).data);
    }
}

TEST_CASE("photometric adjustment kernels agree bit for bit") {
    SplitMix64 rng(103);
    for (int trial = 0; trial < 20; ++trial) {
        int w = 4 + static_cast<int>(rng.next_below(50));
        int h = 4 + static_cast<int>(rng.next_below(50));
        RgbImage img = testutil::random_image(rng, w, h);
        double illum = 0.4 + rng.next_double() * 1.4;
        double enh = 0.1 + rng.next_double() * 2.0;
        CHECK(illumination_adjust(img, illum).data == reference::illumination_adjust(img, illum).data);
        CHECK(color_enhance(img, enh).data == reference::color_enhance(img, enh).data);
    }
}

TEST_CASE("color space kernels agree bit for bit") {
    SplitMix64 rng(104);
    for (int trial = 0; trial < 20; ++trial) {
        int w = 4 + static_cast<int>(rng.next_below(50));
        int h = 4 + static_cast<int>(rng.next_below(50));
        RgbImage img = testutil::random_image(rng, w, h);
        LalphabetaImage lab = rgb_to_lalphabeta(img);
        LalphabetaImage lab_ref = reference::rgb_to_lalphabeta(img);
        CHECK(lab.data == lab_ref.data);
        CHECK(lalphabeta_to_rgb(lab).data == reference::lalphabeta_to_rgb(lab_ref).data);
    }
}

TEST_CASE("channel statistics agree to accumulation tolerance") {
    // the reference accumulates in a single pass, so the order of additions
    // differs; hold the two to a tight tolerance rather than bit equality
    SplitMix64 rng(105);
    for (int trial = 0; trial < 10; ++trial) {
        int w = 8 + static_cast<int>(rng.next_below(40));
        int h = 8 + static_cast<int>(rng.next_below(40));
        LalphabetaImage lab = rgb_to_lalphabeta(testutil::random_image(rng, w, h));
        ChannelStats got = lab_channel_stats(lab);
        ChannelStats want = reference::lab_channel_stats(lab);
        for (int c = 0; c < 3; ++c) {
            CHECK(std::abs(got.mean[c] - want.mean[c]) <= 1e-12);
            CHECK(std::abs(got.stddev[c] - want.stddev[c]) <= 1e-12);
        }
    }
}

TEST_CASE("resize kernels agree bit for bit") {
    SplitMix64 rng(106);
    for (int trial = 0; trial < 15; ++trial) {
        int w = 3 + static_cast<int>(rng.next_below(40));
        int h = 3 + static_cast<int>(rng.next_below(40));
        int ow = 1 + static_cast<int>(rng.next_below(70));
        int oh = 1 + static_cast<int>(rng.next_below(70));
        RgbImage img = testutil::random_image(rng, w, h);
        AlphaMatte m = testutil::random_matte(rng, w, h);
        CHECK(resize_bilinear(img, ow, oh).data == reference::resize_bilinear(img, ow, oh).data);
        CHECK(resize_bilinear(m, ow, oh).data == reference::resize_bilinear(m, ow, oh).data);
    }
}

TEST_CASE("gradient magnitude kernels agree bit for bit") {
    SplitMix64 rng(107);
    for (int trial = 0; trial < 10; ++trial) {
        int w = 8 + static_cast<int>(rng.next_below(40));
        int h = 8 + static_cast<int>(rng.next_below(40));
        AlphaMatte m = testutil::random_matte(rng, w, h);
        CHECK(gaussian_gradient_magnitude(m, kGradSigma) ==
              reference::gaussian_gradient_magnitude(m, kGradSigma));
    }
}

TEST_CASE("dilation kernels agree bit for bit") {
    SplitMix64 rng(108);
    for (int trial = 0; trial < 10; ++trial) {
        int w = 4 + static_cast<int>(rng.next_below(50));
        int h = 4 + static_cast<int>(rng.next_below(50));
        std::vector<std::uint8_t> mask(static_cast<std::size_t>(w) * h);
        for (auto& v : mask) v = rng.next_below(4) == 0 ? 1 : 0;
        for (int radius : {0, 1, 2, 5}) {
            CHECK(dilate_square(mask, w, h, radius) == reference::dilate_square(mask, w, h, radius));
        }
    }
}

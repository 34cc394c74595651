#include <cmath>
#include <cstdlib>

#include "doctest.h"
#include "harmatte/color.hpp"
#include "harmatte/reference.hpp"
#include "helpers.hpp"

using namespace harmatte;

TEST_CASE("white maps near the l-alpha-beta origin") {
    RgbImage white = RgbImage::filled(1, 1, 1.0, 1.0, 1.0);
    LalphabetaImage lab = rgb_to_lalphabeta(white);
    for (double v : lab.data) CHECK(std::abs(v) <= 1e-3);
}

TEST_CASE("l-alpha-beta origin maps near white") {
    LalphabetaImage lab(1, 1);
    RgbImage rgb = lalphabeta_to_rgb(lab);
    for (double v : rgb.data) CHECK(std::abs(v - 1.0) <= 1e-3);
}

TEST_CASE("black stays finite through the log floor") {
    RgbImage black(1, 1);
    LalphabetaImage lab = rgb_to_lalphabeta(black);
    for (double v : lab.data) CHECK(std::isfinite(v));
}

TEST_CASE("round trip is tight for channels at or above 0.05") {
    SplitMix64 rng(31);
    int pixels = 0;
    while (pixels < 12000) {
        RgbImage img(60, 50);
        for (double& v : img.data) v = 0.05 + 0.95 * rng.next_double();
        RgbImage back = lalphabeta_to_rgb(rgb_to_lalphabeta(img));
        for (std::size_t i = 0; i < img.data.size(); ++i) {
            CHECK(std::abs(back.data[i] - img.data[i]) <= 1e-4);
        }
        pixels += 60 * 50;
    }
}

TEST_CASE("mid-gray round trips") {
    RgbImage gray = RgbImage::filled(1, 1, 0.5, 0.5, 0.5);
    RgbImage back = lalphabeta_to_rgb(rgb_to_lalphabeta(gray));
    for (int c = 0; c < 3; ++c) CHECK(std::abs(back.at(0, 0, c) - 0.5) <= 1e-4);
}

TEST_CASE("achromatic pixels have near-zero chroma channels") {
    for (double g = 0.05; g <= 1.0; g += 0.05) {
        RgbImage img = RgbImage::filled(1, 1, g, g, g);
        LalphabetaImage lab = rgb_to_lalphabeta(img);
        CHECK(std::abs(lab.at(0, 0, 1)) <= 1e-3);
        CHECK(std::abs(lab.at(0, 0, 2)) <= 1e-3);
    }
}

TEST_CASE("out-of-gamut inversions clip to [0, 1]") {
    LalphabetaImage lab(2, 1);
    lab.at(0, 0, 0) = 5.0;   // far above white
    lab.at(1, 0, 0) = -9.0;  // far below black
    lab.at(1, 0, 1) = 3.0;
    RgbImage rgb = lalphabeta_to_rgb(lab);
    for (double v : rgb.data) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
    CHECK(rgb.at(0, 0, 0) == 1.0);
}

TEST_CASE("channel stats on a hand-computed fixture") {
    LalphabetaImage lab(2, 1);
    lab.at(0, 0, 0) = 0.0;
    lab.at(1, 0, 0) = 2.0;
    lab.at(0, 0, 1) = -1.0;
    lab.at(1, 0, 1) = -1.0;
    lab.at(0, 0, 2) = 3.0;
    lab.at(1, 0, 2) = 7.0;
    ChannelStats s = lab_channel_stats(lab);
    CHECK(s.mean[0] == 1.0);
    CHECK(s.stddev[0] == 1.0);  // population convention
    CHECK(s.mean[1] == -1.0);
    CHECK(s.stddev[1] == 0.0);
    CHECK(s.mean[2] == 5.0);
    CHECK(s.stddev[2] == 2.0);
}

TEST_CASE("channel stats agree with the serial reference") {
    SplitMix64 rng(77);
    for (int it = 0; it < 5; ++it) {
        RgbImage img = testutil::random_image(rng, 33, 21);
        LalphabetaImage lab = rgb_to_lalphabeta(img);
        ChannelStats a = lab_channel_stats(lab);
        ChannelStats b = reference::lab_channel_stats(lab);
        for (int c = 0; c < 3; ++c) {
            CHECK(std::abs(a.mean[c] - b.mean[c]) <= 1e-12);
            CHECK(std::abs(a.stddev[c] - b.stddev[c]) <= 1e-12);
        }
    }
}

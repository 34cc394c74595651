#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "harmatte/image.hpp"
#include "harmatte/rng.hpp"

namespace testutil {

using harmatte::AlphaMatte;
using harmatte::RgbImage;
using harmatte::SplitMix64;
using harmatte::Trimap;
using harmatte::TrimapLabel;

inline RgbImage random_image(SplitMix64& rng, int w, int h) {
    RgbImage img(w, h);
    for (double& v : img.data) v = rng.next_double();
    return img;
}

inline AlphaMatte random_matte(SplitMix64& rng, int w, int h) {
    AlphaMatte m(w, h);
    for (double& v : m.data) v = rng.next_double();
    return m;
}

/// Matte with solid 0/1 areas plus fractional pixels, the texture portrait
/// mattes actually have.
inline AlphaMatte banded_matte(SplitMix64& rng, int w, int h) {
    AlphaMatte m(w, h);
    for (double& v : m.data) {
        std::uint64_t zone = rng.next_below(4);
        v = zone == 0 ? 0.0 : zone == 1 ? 1.0 : rng.next_double();
    }
    return m;
}

inline Trimap random_trimap(SplitMix64& rng, int w, int h) {
    Trimap t(w, h);
    for (auto& l : t.labels) l = static_cast<TrimapLabel>(rng.next_below(3));
    // guarantee at least one unknown pixel
    t.labels[0] = TrimapLabel::Unknown;
    return t;
}

inline Trimap all_unknown(int w, int h) {
    Trimap t(w, h);
    for (auto& l : t.labels) l = TrimapLabel::Unknown;
    return t;
}

inline std::filesystem::path fresh_dir(const std::string& tag) {
    auto p = std::filesystem::temp_directory_path() / ("harmatte_test_" + tag);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace testutil

#include <benchmark/benchmark.h>

#include <cstdint>

#include "harmatte/adjust.hpp"
#include "harmatte/color.hpp"
#include "harmatte/matting.hpp"
#include "harmatte/metrics.hpp"
#include "harmatte/morphology.hpp"
#include "harmatte/reference.hpp"
#include "harmatte/resize.hpp"
#include "harmatte/rng.hpp"

using namespace harmatte;

namespace {

RgbImage make_image(int n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    RgbImage img(n, n);
    for (double& v : img.data) v = rng.next_double();
    return img;
}

AlphaMatte make_matte(int n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    AlphaMatte m(n, n);
    for (double& v : m.data) v = rng.next_double();
    return m;
}

std::vector<std::uint8_t> make_mask(int n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(n) * n);
    for (auto& v : mask) v = rng.next_below(5) == 0 ? 1 : 0;
    return mask;
}

void bm_composite(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    RgbImage fg = make_image(n, 1), bg = make_image(n, 2);
    AlphaMatte a = make_matte(n, 3);
    for (auto _ : state) benchmark::DoNotOptimize(composite(fg, a, bg).data.data());
}

void bm_composite_reference(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    RgbImage fg = make_image(n, 1), bg = make_image(n, 2);
    AlphaMatte a = make_matte(n, 3);
    for (auto _ : state) benchmark::DoNotOptimize(reference::composite(fg, a, bg).data.data());
}

void bm_color_roundtrip(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    RgbImage img = make_image(n, 4);
    for (auto _ : state) benchmark::DoNotOptimize(lalphabeta_to_rgb(rgb_to_lalphabeta(img)).data.data());
}

void bm_color_roundtrip_reference(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    RgbImage img = make_image(n, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            reference::lalphabeta_to_rgb(reference::rgb_to_lalphabeta(img)).data.data());
    }
}

void bm_resize(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    RgbImage img = make_image(n, 5);
    for (auto _ : state) benchmark::DoNotOptimize(resize_bilinear(img, 256, 256).data.data());
}

void bm_resize_reference(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    RgbImage img = make_image(n, 5);
    for (auto _ : state) benchmark::DoNotOptimize(reference::resize_bilinear(img, 256, 256).data.data());
}

void bm_gradient(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    AlphaMatte m = make_matte(n, 6);
    for (auto _ : state) benchmark::DoNotOptimize(gaussian_gradient_magnitude(m, kGradSigma).data());
}

void bm_gradient_reference(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    AlphaMatte m = make_matte(n, 6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::gaussian_gradient_magnitude(m, kGradSigma).data());
    }
}

void bm_enhance(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    RgbImage img = make_image(n, 7);
    for (auto _ : state) benchmark::DoNotOptimize(color_enhance(img, 1.8).data.data());
}

void bm_enhance_reference(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    RgbImage img = make_image(n, 7);
    for (auto _ : state) benchmark::DoNotOptimize(reference::color_enhance(img, 1.8).data.data());
}

void bm_dilate(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    auto mask = make_mask(n, 8);
    for (auto _ : state) benchmark::DoNotOptimize(dilate_square(mask, n, n, 10).data());
}

void bm_dilate_reference(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    auto mask = make_mask(n, 8);
    for (auto _ : state) benchmark::DoNotOptimize(reference::dilate_square(mask, n, n, 10).data());
}

BENCHMARK(bm_composite)->Arg(256)->Arg(1024);
BENCHMARK(bm_composite_reference)->Arg(256)->Arg(1024);
BENCHMARK(bm_color_roundtrip)->Arg(256)->Arg(1024);
BENCHMARK(bm_color_roundtrip_reference)->Arg(256)->Arg(1024);
BENCHMARK(bm_resize)->Arg(256)->Arg(1024);
BENCHMARK(bm_resize_reference)->Arg(256)->Arg(1024);
BENCHMARK(bm_gradient)->Arg(256)->Arg(1024);
BENCHMARK(bm_gradient_reference)->Arg(256)->Arg(1024);
BENCHMARK(bm_enhance)->Arg(256)->Arg(1024);
BENCHMARK(bm_enhance_reference)->Arg(256)->Arg(1024);
BENCHMARK(bm_dilate)->Arg(256)->Arg(1024);
BENCHMARK(bm_dilate_reference)->Arg(256)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();

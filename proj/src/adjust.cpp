#include "harmatte/adjust.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "harmatte/color.hpp"
#include "harmatte/rng.hpp"

namespace harmatte {

const char* to_string(AdjustmentKind kind) {
    switch (kind) {
        case AdjustmentKind::ColorTransfer: return "color_transfer";
        case AdjustmentKind::Illumination: return "illumination";
        case AdjustmentKind::ColorEnhance: return "color_enhance";
    }
    throw std::invalid_argument("to_string: unknown adjustment kind");
}

std::optional<AdjustmentKind> adjustment_kind_from_string(const std::string& s) {
    if (s == "color_transfer") return AdjustmentKind::ColorTransfer;
    if (s == "illumination") return AdjustmentKind::Illumination;
    if (s == "color_enhance") return AdjustmentKind::ColorEnhance;
    return std::nullopt;
}

void AdjustmentSpec::validate() const {
    if (kind == AdjustmentKind::ColorTransfer) {
        detail::require(target_id.has_value(), "AdjustmentSpec: color_transfer requires a target_id");
        detail::require(!factor.has_value(), "AdjustmentSpec: color_transfer takes no factor");
        detail::require(!target_id->empty(), "AdjustmentSpec: target_id must be nonempty");
    } else {
        detail::require(!target_id.has_value(),
                        "AdjustmentSpec: only color_transfer takes a target_id");
        detail::require(factor.has_value(), "AdjustmentSpec: a factor is required");
        detail::require(std::isfinite(*factor) && *factor > 0.0,
                        "AdjustmentSpec: factor must be finite and positive");
    }
}

LalphabetaImage reinhard_transfer_lab(const LalphabetaImage& source, const ChannelStats& src_stats,
                                      const ChannelStats& tgt_stats) {
    source.validate();
    double scale[3];
    for (int c = 0; c < 3; ++c) {
        scale[c] = src_stats.stddev[c] < kStddevGuard ? 1.0 : tgt_stats.stddev[c] / src_stats.stddev[c];
    }
    LalphabetaImage out(source.width, source.height);
    const int h = source.height;
    const int w = source.width;
#pragma omp parallel for
    for (int y = 0; y < h; ++y) {
        const double* src = source.data.data() + static_cast<std::size_t>(y) * w * 3;
        double* dst = out.data.data() + static_cast<std::size_t>(y) * w * 3;
        for (int x = 0; x < w; ++x) {
            for (int c = 0; c < 3; ++c) {
                dst[x * 3 + c] = (src[x * 3 + c] - src_stats.mean[c]) * scale[c] + tgt_stats.mean[c];
            }
        }
    }
    return out;
}

RgbImage reinhard_transfer(const RgbImage& source, const RgbImage& target) {
    LalphabetaImage src_lab = rgb_to_lalphabeta(source);
    LalphabetaImage tgt_lab = rgb_to_lalphabeta(target);
    ChannelStats src_stats = lab_channel_stats(src_lab);
    ChannelStats tgt_stats = lab_channel_stats(tgt_lab);
    return lalphabeta_to_rgb(reinhard_transfer_lab(src_lab, src_stats, tgt_stats));
}

RgbImage illumination_adjust(const RgbImage& img, double factor) {
    detail::require(std::isfinite(factor) && factor > 0.0,
                    "illumination_adjust: factor must be positive");
    img.validate();
    RgbImage out(img.width, img.height);
    const int h = img.height;
    const int w = img.width;
#pragma omp parallel for
    for (int y = 0; y < h; ++y) {
        const double* src = img.row(y);
        double* dst = out.row(y);
        for (int i = 0; i < w * 3; ++i) dst[i] = std::clamp(factor * src[i], 0.0, 1.0);
    }
    return out;
}

RgbImage color_enhance(const RgbImage& img, double factor) {
    detail::require(std::isfinite(factor) && factor > 0.0, "color_enhance: factor must be positive");
    img.validate();
    RgbImage out(img.width, img.height);
    const int h = img.height;
    const int w = img.width;
#pragma omp parallel for
    for (int y = 0; y < h; ++y) {
        const double* src = img.row(y);
        double* dst = out.row(y);
        for (int x = 0; x < w; ++x) {
            double gray =
                0.299 * src[x * 3 + 0] + 0.587 * src[x * 3 + 1] + 0.114 * src[x * 3 + 2];
            for (int c = 0; c < 3; ++c) {
                dst[x * 3 + c] = std::clamp(gray + factor * (src[x * 3 + c] - gray), 0.0, 1.0);
            }
        }
    }
    return out;
}

AdjustmentSpec sample_adjustment(std::uint64_t seed, const std::string& image_id,
                                 const std::vector<std::string>& target_pool) {
    detail::require(!target_pool.empty(), "sample_adjustment: target pool is empty");
    AdjustmentSpec spec;
    spec.seed = derive_stream_seed(seed, image_id, kStreamAdjustment);
    SplitMix64 rng(spec.seed);
    switch (rng.next_below(3)) {
        case 0: {
            spec.kind = AdjustmentKind::ColorTransfer;
            std::size_t candidates = 0;
            for (const std::string& id : target_pool) {
                if (id != image_id) ++candidates;
            }
            detail::require(candidates > 0,
                            "sample_adjustment: target pool is empty after excluding the image itself");
            std::uint64_t pick = rng.next_below(candidates);
            for (const std::string& id : target_pool) {
                if (id == image_id) continue;
                if (pick == 0) {
                    spec.target_id = id;
                    break;
                }
                --pick;
            }
            break;
        }
        case 1: {
            spec.kind = AdjustmentKind::Illumination;
            // One draw over the combined mass of the two bands.
            double low_w = kIlluminationLow[1] - kIlluminationLow[0];
            double high_w = kIlluminationHigh[1] - kIlluminationHigh[0];
            double u = rng.next_real(0.0, low_w + high_w);
            spec.factor = u < low_w ? kIlluminationLow[0] + u : kIlluminationHigh[0] + (u - low_w);
            break;
        }
        case 2: {
            spec.kind = AdjustmentKind::ColorEnhance;
            spec.factor = rng.next_real(kEnhanceRange[0], kEnhanceRange[1]);
            break;
        }
    }
    spec.validate();
    return spec;
}

}  // namespace harmatte

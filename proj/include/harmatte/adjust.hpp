#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "harmatte/image.hpp"

namespace harmatte {

enum class AdjustmentKind {
    ColorTransfer,
    Illumination,
    ColorEnhance,
};

const char* to_string(AdjustmentKind kind);
std::optional<AdjustmentKind> adjustment_kind_from_string(const std::string& s);

/// Record of which background perturbation was applied and with what
/// parameters; enough to regenerate the perturbed background exactly.
struct AdjustmentSpec {
    AdjustmentKind kind = AdjustmentKind::Illumination;
    std::optional<std::string> target_id;  // ColorTransfer only
    std::optional<double> factor;          // Illumination / ColorEnhance only
    std::uint64_t seed = 0;                // per-image stream seed, reproducibility metadata

    /// Throws std::invalid_argument when the kind/parameter pairing is wrong.
    void validate() const;

    bool operator==(const AdjustmentSpec&) const = default;
};

/// Guard below which a channel's stddev counts as degenerate and the transfer
/// falls back to a pure mean shift for that channel.
inline constexpr double kStddevGuard = 1e-6;

/// Statistics transfer in l-alpha-beta space: per channel,
/// out = (src - mean_src) * (std_tgt / std_src) + mean_tgt. The pre-clip
/// buffer therefore carries the target's channel statistics exactly.
LalphabetaImage reinhard_transfer_lab(const LalphabetaImage& source, const ChannelStats& src_stats,
                                      const ChannelStats& tgt_stats);

/// Full transfer: convert to l-alpha-beta, match the target's per-channel
/// mean and stddev, convert back, clip to [0, 1]. Source and target may have
/// different dimensions; the statistics are global.
RgbImage reinhard_transfer(const RgbImage& source, const RgbImage& target);

/// out = clip(factor * img, 0, 1). Rejects factor <= 0.
RgbImage illumination_adjust(const RgbImage& img, double factor);

/// Saturation scaling about per-pixel luma (0.299, 0.587, 0.114):
/// out = clip(gray + factor * (channel - gray), 0, 1). Rejects factor <= 0.
RgbImage color_enhance(const RgbImage& img, double factor);

/// Factor ranges for the random draws. Illumination excludes the
/// near-identity band so the mismatch stays visible.
inline constexpr double kIlluminationLow[2] = {0.4, 0.75};
inline constexpr double kIlluminationHigh[2] = {1.3, 1.8};
inline constexpr double kEnhanceRange[2] = {1.4, 2.2};

/// Deterministic draw of an adjustment for one image: the kind is uniform
/// over the three, a color-transfer target is uniform over the pool with the
/// image itself excluded, factors are uniform over the documented ranges.
/// Identical (seed, image_id) always yields an identical spec. Rejects a pool
/// that is empty after exclusion.
AdjustmentSpec sample_adjustment(std::uint64_t seed, const std::string& image_id,
                                 const std::vector<std::string>& target_pool);

/// Fill the foreground footprint of an image with plausible background. The
/// fill mask is {alpha > 0} dilated by mask_dilation; pixels outside it are
/// returned bit-identical. Masked pixels are filled marching inward from the
/// mask boundary in distance order, each one a positively-weighted average of
/// already-known neighbors within radius 3 (weights favor near neighbors and
/// ones aligned with the inward direction). Rejects a mask covering the
/// whole image.
RgbImage inpaint_background(const RgbImage& img, const AlphaMatte& alpha, int mask_dilation);

}  // namespace harmatte

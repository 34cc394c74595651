#pragma once

#include <utility>
#include <vector>

#include "harmatte/image.hpp"

namespace harmatte {

/// One batch of discriminator scores: the real image and the three kinds of
/// fake composite, all lists of equal length B >= 1.
struct ScoreBatch {
    std::vector<double> d_real;
    std::vector<double> d_harmonized;
    std::vector<double> d_composite;
    std::vector<double> d_disharmonious;

    std::size_t size() const { return d_real.size(); }

    /// Throws std::invalid_argument on empty, ragged, or non-finite batches.
    void validate() const;
};

/// All loss terms with their weights. The totals satisfy, exactly,
/// total_matting = matting_recon + lambda1 * gen_matting_adv and
/// total_harmony = harmony_recon + lambda2 * gen_harmony_adv.
struct LossBundle {
    double matting_recon = 0.0;
    double harmony_recon = 0.0;
    double disc = 0.0;
    double gen_matting_adv = 0.0;
    double gen_harmony_adv = 0.0;
    double total_matting = 0.0;
    double total_harmony = 0.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
};

/// Mean absolute difference over all pixels (the L1 reconstruction term for
/// the matting generator).
double matting_recon_loss(const AlphaMatte& pred, const AlphaMatte& gt);

/// Mean absolute difference over all pixels and channels (the L1
/// reconstruction term for the harmonization generator).
double harmony_recon_loss(const RgbImage& pred, const RgbImage& gt);

/// Batch mean of (d_harmonized + d_composite + d_disharmonious - d_real).
/// Implemented verbatim, unbounded; any clamping belongs to a training loop.
double discriminator_loss(const ScoreBatch& scores);

/// (mean(d_real - d_composite), mean(d_real - d_harmonized)): the adversarial
/// terms for the matting and harmonization generators respectively.
std::pair<double, double> generator_adv_losses(const ScoreBatch& scores);

/// Assemble the bundle. Rejects negative weights. `disc` is carried through
/// for reporting and does not affect the totals.
LossBundle total_losses(double matting_recon, double harmony_recon, std::pair<double, double> adv,
                        double lambda1, double lambda2, double disc = 0.0);

}  // namespace harmatte

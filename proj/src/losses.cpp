#include "harmatte/losses.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace harmatte {

void ScoreBatch::validate() const {
    detail::require(!d_real.empty(), "ScoreBatch: batch must be nonempty");
    detail::require(d_harmonized.size() == d_real.size() && d_composite.size() == d_real.size() &&
                        d_disharmonious.size() == d_real.size(),
                    "ScoreBatch: all four score lists must have equal length");
    auto all_finite = [](const std::vector<double>& v) {
        for (double x : v) {
            if (!std::isfinite(x)) return false;
        }
        return true;
    };
    detail::require(all_finite(d_real) && all_finite(d_harmonized) && all_finite(d_composite) &&
                        all_finite(d_disharmonious),
                    "ScoreBatch: scores must be finite");
}

double matting_recon_loss(const AlphaMatte& pred, const AlphaMatte& gt) {
    detail::require_same_size(pred.width, pred.height, gt.width, gt.height, "matting_recon_loss");
    double total = 0.0;
    for (std::size_t i = 0; i < pred.data.size(); ++i) total += std::abs(pred.data[i] - gt.data[i]);
    return total / static_cast<double>(pred.data.size());
}

double harmony_recon_loss(const RgbImage& pred, const RgbImage& gt) {
    detail::require_same_size(pred.width, pred.height, gt.width, gt.height, "harmony_recon_loss");
    double total = 0.0;
    for (std::size_t i = 0; i < pred.data.size(); ++i) total += std::abs(pred.data[i] - gt.data[i]);
    return total / static_cast<double>(pred.data.size());
}

double discriminator_loss(const ScoreBatch& scores) {
    scores.validate();
    double total = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        total += scores.d_harmonized[i] + scores.d_composite[i] + scores.d_disharmonious[i] -
                 scores.d_real[i];
    }
    return total / static_cast<double>(scores.size());
}

std::pair<double, double> generator_adv_losses(const ScoreBatch& scores) {
    scores.validate();
    double matting = 0.0;
    double harmony = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        matting += scores.d_real[i] - scores.d_composite[i];
        harmony += scores.d_real[i] - scores.d_harmonized[i];
    }
    double n = static_cast<double>(scores.size());
    return {matting / n, harmony / n};
}

LossBundle total_losses(double matting_recon, double harmony_recon, std::pair<double, double> adv,
                        double lambda1, double lambda2, double disc) {
    detail::require(std::isfinite(lambda1) && lambda1 >= 0.0,
                    "total_losses: lambda1 must be nonnegative");
    detail::require(std::isfinite(lambda2) && lambda2 >= 0.0,
                    "total_losses: lambda2 must be nonnegative");
    LossBundle b;
    b.matting_recon = matting_recon;
    b.harmony_recon = harmony_recon;
    b.disc = disc;
    b.gen_matting_adv = adv.first;
    b.gen_harmony_adv = adv.second;
    b.lambda1 = lambda1;
    b.lambda2 = lambda2;
    b.total_matting = matting_recon + lambda1 * adv.first;
    b.total_harmony = harmony_recon + lambda2 * adv.second;
    return b;
}

}  // namespace harmatte

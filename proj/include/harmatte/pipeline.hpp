#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "harmatte/adjust.hpp"
#include "harmatte/manifest.hpp"
#include "harmatte/metrics.hpp"

namespace harmatte {

/// Knobs shared across the batch stages. Defaults are the documented ones;
/// the CLI layers config-file and flag overrides on top.
struct PipelineConfig {
    std::uint64_t seed = 0;
    int size = 256;
    int band_radius = 10;
    int mask_dilation = 5;
    double train_fraction = 0.9;
    int jobs = 0;  // 0 = runtime default
};

/// Where composite alphas come from: the ground-truth matte, or predicted
/// mattes read from a directory of <image_id>.png files.
struct AlphaSource {
    bool predicted = false;
    std::filesystem::path dir;
};

/// Forces one adjustment for every record instead of the per-image draw.
struct AdjustmentOverride {
    AdjustmentKind kind = AdjustmentKind::Illumination;
    std::optional<double> factor;
    std::optional<std::string> target_id;
};

struct StageStats {
    std::size_t processed = 0;
    std::size_t skipped = 0;  // orphans and filtered records
    std::size_t failed = 0;
    std::vector<std::string> messages;

    bool ok() const { return failed == 0; }
};

/// Scan corpus_dir/image and corpus_dir/alpha for *.png pairs sharing a stem,
/// resize every pair to size x size, extract the premultiplied foreground and
/// recover the background by inpainting, and write the four sub-sets plus
/// manifest.jsonl under out_dir. Orphan files are skipped with a warning;
/// per-record failures are counted and do not abort the run.
StageStats prepare(const std::filesystem::path& corpus_dir, const std::filesystem::path& out_dir,
                   const PipelineConfig& cfg);

/// For every manifest record: draw (or take the override) adjustment, perturb
/// the background, composite the disharmonious image, emit the trimap, and
/// write triplets.jsonl under out_dir. Color-transfer targets are drawn from
/// train-labeled records when split labels exist, otherwise from all records.
StageStats build_triplets(const std::filesystem::path& manifest_path,
                          const std::filesystem::path& out_dir, const PipelineConfig& cfg,
                          const AlphaSource& alpha_source = {},
                          const std::optional<AdjustmentOverride>& adjust_override = {});

/// ceil(n * fraction), with a small guard so fractions that divide n exactly
/// are not rounded up by floating-point noise.
std::size_t split_count(std::size_t n, double train_fraction);

/// Deterministically shuffle the manifest's image ids by seed and label the
/// first ceil(N * fraction) of them train, the rest test. Works on corpus and
/// triplet manifests alike; rewrites in place unless out_path is given.
void split_manifest(const std::filesystem::path& manifest_path, double train_fraction,
                    std::uint64_t seed,
                    const std::optional<std::filesystem::path>& out_path = {});

/// Pick a background from background_dir by seed (undecodable files are
/// skipped and redrawn), center-crop it to a square, resize it to the
/// image's dimensions, and composite. Rejects an empty directory.
RgbImage composite_new_background(const RgbImage& img, const AlphaMatte& alpha,
                                  const std::filesystem::path& background_dir, std::uint64_t seed);

/// composite_new_background over every manifest record whose split matches
/// split_filter ("" = all), with a per-record stream derived from
/// (seed, image_id). Writes out_dir/<image_id>.png.
StageStats composite_batch(const std::filesystem::path& triplet_manifest,
                           const std::filesystem::path& background_dir,
                           const std::filesystem::path& out_dir, const PipelineConfig& cfg,
                           const std::string& split_filter = {},
                           const AlphaSource& alpha_source = {});

struct EvalRow {
    std::string image_id;
    MattingScore score;
};

struct EvalReport {
    std::vector<EvalRow> rows;
    MattingScore mean;
    std::size_t missing = 0;
    std::vector<std::string> messages;
};

/// Score every image id present in all three directories; ids missing a
/// counterpart are reported. The mean row averages per-image scores.
EvalReport eval_matting(const std::filesystem::path& pred_dir, const std::filesystem::path& gt_dir,
                        const std::filesystem::path& trimap_dir, int jobs = 0,
                        double grad_sigma = kGradSigma, double conn_step = kConnStep,
                        double conn_theta = kConnTheta);

/// Re-execute a triplet record's stored adjustment against its stored inputs.
/// The result must match the stored composite byte-for-byte once re-encoded.
RgbImage regenerate_composite(const TripletRecord& rec, const std::filesystem::path& manifest_dir,
                              const std::map<std::string, TripletRecord>& records_by_id);

}  // namespace harmatte

#include "harmatte/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "harmatte/color.hpp"
#include "harmatte/matting.hpp"
#include "harmatte/png_io.hpp"
#include "harmatte/resize.hpp"
#include "harmatte/rng.hpp"
#include "json.hpp"

namespace harmatte {

namespace {

namespace fs = std::filesystem;

int resolve_jobs(int jobs) {
    if (jobs > 0) return jobs;
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

std::vector<fs::path> list_pngs(const fs::path& dir) {
    std::vector<fs::path> out;
    if (!fs::exists(dir) || !fs::is_directory(dir)) return out;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".png") out.push_back(entry.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct RecordOutcome {
    bool ok = false;
    std::string error;
};

// Runs fn over [0, count) with a worker pool. Outcomes land at fixed indices,
// so everything downstream is independent of scheduling.
template <typename Fn>
std::vector<RecordOutcome> run_records(std::size_t count, int jobs, Fn&& fn) {
    std::vector<RecordOutcome> out(count);
    const int n = static_cast<int>(count);
    const int threads = resolve_jobs(jobs);
    (void)threads;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (int i = 0; i < n; ++i) {
        try {
            fn(static_cast<std::size_t>(i));
            out[i].ok = true;
        } catch (const std::exception& e) {
            out[i].error = e.what();
        }
    }
    return out;
}

// Path of `sub` (relative to src_dir) as seen from dst_dir, lexically.
std::string rebase_path(const fs::path& src_dir, const fs::path& dst_dir, const std::string& sub) {
    fs::path a = fs::absolute(src_dir).lexically_normal();
    fs::path b = fs::absolute(dst_dir).lexically_normal();
    fs::path rel = a.lexically_relative(b);
    if (rel.empty()) rel = a;
    return (rel / sub).lexically_normal().generic_string();
}

RgbImage apply_adjustment(const RgbImage& bg, const AdjustmentSpec& spec,
                          const std::function<RgbImage(const std::string&)>& load_target) {
    spec.validate();
    switch (spec.kind) {
        case AdjustmentKind::ColorTransfer: return reinhard_transfer(bg, load_target(*spec.target_id));
        case AdjustmentKind::Illumination: return illumination_adjust(bg, *spec.factor);
        case AdjustmentKind::ColorEnhance: return color_enhance(bg, *spec.factor);
    }
    throw std::invalid_argument("apply_adjustment: unknown adjustment kind");
}

std::vector<std::string> read_manifest_lines(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open manifest: " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

}  // namespace

StageStats prepare(const std::filesystem::path& corpus_dir, const std::filesystem::path& out_dir,
                   const PipelineConfig& cfg) {
    detail::require(cfg.size >= 1, "prepare: size must be positive");
    detail::require(cfg.mask_dilation >= 0, "prepare: mask_dilation must be nonnegative");
    StageStats stats;

    std::map<std::string, fs::path> images, alphas;
    for (const fs::path& p : list_pngs(corpus_dir / "image")) images[p.stem().string()] = p;
    for (const fs::path& p : list_pngs(corpus_dir / "alpha")) alphas[p.stem().string()] = p;

    std::vector<std::string> ids;
    for (const auto& [stem, path] : images) {
        if (alphas.count(stem)) {
            ids.push_back(stem);
        } else {
            ++stats.skipped;
            stats.messages.push_back("orphan image without alpha, skipped: " + path.filename().string());
        }
    }
    for (const auto& [stem, path] : alphas) {
        if (!images.count(stem)) {
            ++stats.skipped;
            stats.messages.push_back("orphan alpha without image, skipped: " + path.filename().string());
        }
    }

    fs::create_directories(out_dir / "image");
    fs::create_directories(out_dir / "alpha");
    fs::create_directories(out_dir / "fg");
    fs::create_directories(out_dir / "bg");

    std::vector<CorpusRecord> recs(ids.size());
    auto outcomes = run_records(ids.size(), cfg.jobs, [&](std::size_t i) {
        const std::string& id = ids[i];
        RgbImage img = load_rgb_png(images.at(id));
        AlphaMatte alpha = load_alpha_png(alphas.at(id));
        detail::require_same_size(img.width, img.height, alpha.width, alpha.height,
                                  "prepare: image vs alpha");
        img = resize_bilinear(img, cfg.size, cfg.size);
        alpha = resize_bilinear(alpha, cfg.size, cfg.size);
        // snap to the 8-bit grid first, so the stored foreground and
        // background derive exactly from the stored image and alpha
        for (double& v : img.data) v = static_cast<double>(encode_u8(v)) / 255.0;
        for (double& v : alpha.data) v = static_cast<double>(encode_u8(v)) / 255.0;
        RgbImage fg = extract_foreground(img, alpha);
        RgbImage bg = inpaint_background(img, alpha, cfg.mask_dilation);
        save_rgb_png(out_dir / "image" / (id + ".png"), img);
        save_alpha_png(out_dir / "alpha" / (id + ".png"), alpha);
        save_rgb_png(out_dir / "fg" / (id + ".png"), fg);
        save_rgb_png(out_dir / "bg" / (id + ".png"), bg);
        recs[i] = CorpusRecord{id,
                               "image/" + id + ".png",
                               "alpha/" + id + ".png",
                               "fg/" + id + ".png",
                               "bg/" + id + ".png",
                               cfg.size,
                               cfg.size,
                               std::nullopt};
    });

    std::vector<CorpusRecord> kept;
    kept.reserve(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (outcomes[i].ok) {
            ++stats.processed;
            kept.push_back(recs[i]);
        } else {
            ++stats.failed;
            stats.messages.push_back(ids[i] + ": " + outcomes[i].error);
        }
    }
    write_corpus_manifest(out_dir / "manifest.jsonl", kept);
    return stats;
}

StageStats build_triplets(const std::filesystem::path& manifest_path,
                          const std::filesystem::path& out_dir, const PipelineConfig& cfg,
                          const AlphaSource& alpha_source,
                          const std::optional<AdjustmentOverride>& adjust_override) {
    detail::require(cfg.band_radius >= 0, "build_triplets: band_radius must be nonnegative");
    if (adjust_override && adjust_override->kind != AdjustmentKind::ColorTransfer) {
        detail::require(adjust_override->factor.has_value() && *adjust_override->factor > 0.0,
                        "build_triplets: adjustment override needs a positive factor");
    }

    std::vector<CorpusRecord> recs = read_corpus_manifest(manifest_path);
    const fs::path manifest_dir = manifest_path.parent_path();
    StageStats stats;

    bool any_split = std::any_of(recs.begin(), recs.end(),
                                 [](const CorpusRecord& r) { return r.split.has_value(); });
    std::vector<std::string> pool;
    std::map<std::string, const CorpusRecord*> by_id;
    for (const CorpusRecord& rec : recs) {
        by_id[rec.image_id] = &rec;
        if (!any_split || (rec.split && *rec.split == "train")) pool.push_back(rec.image_id);
    }

    fs::create_directories(out_dir / "composite");
    fs::create_directories(out_dir / "trimap");

    std::vector<TripletRecord> trecs(recs.size());
    auto outcomes = run_records(recs.size(), cfg.jobs, [&](std::size_t i) {
        const CorpusRecord& rec = recs[i];
        RgbImage img = load_rgb_png(manifest_dir / rec.image);
        AlphaMatte gt_alpha = load_alpha_png(manifest_dir / rec.alpha);
        RgbImage bg = load_rgb_png(manifest_dir / rec.bg);

        AdjustmentSpec spec;
        if (adjust_override) {
            spec.kind = adjust_override->kind;
            spec.seed = derive_stream_seed(cfg.seed, rec.image_id, kStreamAdjustment);
            if (spec.kind == AdjustmentKind::ColorTransfer) {
                if (adjust_override->target_id) {
                    spec.target_id = *adjust_override->target_id;
                } else {
                    SplitMix64 rng(spec.seed);
                    std::size_t candidates = 0;
                    for (const std::string& id : pool) {
                        if (id != rec.image_id) ++candidates;
                    }
                    detail::require(candidates > 0, "no color transfer target available");
                    std::uint64_t pick = rng.next_below(candidates);
                    for (const std::string& id : pool) {
                        if (id == rec.image_id) continue;
                        if (pick == 0) {
                            spec.target_id = id;
                            break;
                        }
                        --pick;
                    }
                }
            } else {
                spec.factor = adjust_override->factor;
            }
            spec.validate();
        } else {
            spec = sample_adjustment(cfg.seed, rec.image_id, pool);
        }

        RgbImage adjusted = apply_adjustment(bg, spec, [&](const std::string& target) {
            auto it = by_id.find(target);
            if (it == by_id.end()) {
                throw std::runtime_error("color transfer target not in manifest: " + target);
            }
            return load_rgb_png(manifest_dir / it->second->image);
        });

        AlphaMatte comp_alpha = gt_alpha;
        std::optional<std::string> comp_alpha_path;
        if (alpha_source.predicted) {
            fs::path pred = alpha_source.dir / (rec.image_id + ".png");
            comp_alpha = load_alpha_png(pred);
            comp_alpha_path = rebase_path(pred.parent_path(), out_dir, pred.filename().string());
        }
        RgbImage comp = composite(img, comp_alpha, adjusted);
        Trimap trimap = generate_trimap(gt_alpha, cfg.band_radius);

        save_rgb_png(out_dir / "composite" / (rec.image_id + ".png"), comp);
        save_trimap_png(out_dir / "trimap" / (rec.image_id + ".png"), trimap);

        trecs[i] = TripletRecord{rec.image_id,
                                 rebase_path(manifest_dir, out_dir, rec.image),
                                 rebase_path(manifest_dir, out_dir, rec.alpha),
                                 rebase_path(manifest_dir, out_dir, rec.bg),
                                 "composite/" + rec.image_id + ".png",
                                 "trimap/" + rec.image_id + ".png",
                                 spec,
                                 comp_alpha_path,
                                 rec.split};
    });

    std::vector<TripletRecord> kept;
    kept.reserve(recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i) {
        if (outcomes[i].ok) {
            ++stats.processed;
            kept.push_back(trecs[i]);
        } else {
            ++stats.failed;
            stats.messages.push_back(recs[i].image_id + ": " + outcomes[i].error);
        }
    }
    write_triplet_manifest(out_dir / "triplets.jsonl", kept);
    return stats;
}

std::size_t split_count(std::size_t n, double train_fraction) {
    if (n == 0) return 0;
    // Guard against fractions that divide n exactly landing a hair above the
    // integer and getting rounded up.
    double c = std::ceil(static_cast<double>(n) * train_fraction - 1e-9);
    if (c < 0.0) c = 0.0;
    auto k = static_cast<std::size_t>(c);
    return std::min(k, n);
}

void split_manifest(const std::filesystem::path& manifest_path, double train_fraction,
                    std::uint64_t seed, const std::optional<std::filesystem::path>& out_path) {
    detail::require(train_fraction > 0.0 && train_fraction < 1.0,
                    "split_manifest: train_fraction must be in (0, 1)");
    std::vector<std::string> lines = read_manifest_lines(manifest_path);
    std::vector<nlohmann::json> records;
    records.reserve(lines.size());
    for (const std::string& line : lines) records.push_back(nlohmann::json::parse(line));
    for (const nlohmann::json& j : records) {
        if (!j.contains("image_id")) {
            throw std::runtime_error("split_manifest: record without image_id");
        }
    }

    const std::size_t n = records.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    SplitMix64 rng(derive_stream_seed(seed, "", kStreamSplit));
    for (std::size_t i = n; i-- > 1;) {
        std::size_t j = static_cast<std::size_t>(rng.next_below(i + 1));
        std::swap(order[i], order[j]);
    }
    const std::size_t train_n = split_count(n, train_fraction);
    for (std::size_t k = 0; k < n; ++k) {
        records[order[k]]["split"] = k < train_n ? "train" : "test";
    }

    const fs::path dest = out_path ? *out_path : manifest_path;
    std::ofstream out(dest, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open manifest for writing: " + dest.string());
    for (const nlohmann::json& j : records) out << j.dump() << '\n';
    if (!out) throw std::runtime_error("failed writing manifest: " + dest.string());
}

RgbImage composite_new_background(const RgbImage& img, const AlphaMatte& alpha,
                                  const std::filesystem::path& background_dir, std::uint64_t seed) {
    detail::require_same_size(img.width, img.height, alpha.width, alpha.height,
                              "composite_new_background: img vs alpha");
    std::vector<fs::path> files = list_pngs(background_dir);
    detail::require(!files.empty(), "composite_new_background: no PNG files in background directory");

    SplitMix64 rng(seed);
    RgbImage bg;
    std::string last_error = "none";
    bool loaded = false;
    while (!files.empty()) {
        std::size_t k = static_cast<std::size_t>(rng.next_below(files.size()));
        try {
            bg = load_rgb_png(files[k]);
            loaded = true;
            break;
        } catch (const std::exception& e) {
            last_error = e.what();
            files.erase(files.begin() + static_cast<std::ptrdiff_t>(k));
        }
    }
    if (!loaded) {
        throw std::runtime_error("composite_new_background: no decodable background, last error: " +
                                 last_error);
    }

    int side = std::min(bg.width, bg.height);
    int x0 = (bg.width - side) / 2;
    int y0 = (bg.height - side) / 2;
    RgbImage crop(side, side);
    for (int y = 0; y < side; ++y) {
        for (int x = 0; x < side; ++x) {
            for (int c = 0; c < 3; ++c) crop.at(x, y, c) = bg.at(x0 + x, y0 + y, c);
        }
    }
    return composite(img, alpha, resize_bilinear(crop, img.width, img.height));
}

StageStats composite_batch(const std::filesystem::path& triplet_manifest,
                           const std::filesystem::path& background_dir,
                           const std::filesystem::path& out_dir, const PipelineConfig& cfg,
                           const std::string& split_filter, const AlphaSource& alpha_source) {
    std::vector<TripletRecord> recs = read_triplet_manifest(triplet_manifest);
    const fs::path manifest_dir = triplet_manifest.parent_path();
    StageStats stats;

    std::vector<const TripletRecord*> selected;
    for (const TripletRecord& rec : recs) {
        if (split_filter.empty() || (rec.split && *rec.split == split_filter)) {
            selected.push_back(&rec);
        } else {
            ++stats.skipped;
        }
    }

    fs::create_directories(out_dir);
    auto outcomes = run_records(selected.size(), cfg.jobs, [&](std::size_t i) {
        const TripletRecord& rec = *selected[i];
        RgbImage img = load_rgb_png(manifest_dir / rec.image);
        AlphaMatte alpha = alpha_source.predicted
                               ? load_alpha_png(alpha_source.dir / (rec.image_id + ".png"))
                               : load_alpha_png(manifest_dir / rec.alpha);
        std::uint64_t rec_seed = derive_stream_seed(cfg.seed, rec.image_id, kStreamBackground);
        RgbImage out = composite_new_background(img, alpha, background_dir, rec_seed);
        save_rgb_png(out_dir / (rec.image_id + ".png"), out);
    });

    for (std::size_t i = 0; i < selected.size(); ++i) {
        if (outcomes[i].ok) {
            ++stats.processed;
        } else {
            ++stats.failed;
            stats.messages.push_back(selected[i]->image_id + ": " + outcomes[i].error);
        }
    }
    return stats;
}

EvalReport eval_matting(const std::filesystem::path& pred_dir, const std::filesystem::path& gt_dir,
                        const std::filesystem::path& trimap_dir, int jobs, double grad_sigma,
                        double conn_step, double conn_theta) {
    EvalReport report;
    auto stems = [](const fs::path& dir) {
        std::set<std::string> out;
        for (const fs::path& p : list_pngs(dir)) out.insert(p.stem().string());
        return out;
    };
    std::set<std::string> in_pred = stems(pred_dir);
    std::set<std::string> in_gt = stems(gt_dir);
    std::set<std::string> in_trimap = stems(trimap_dir);

    std::set<std::string> all = in_pred;
    all.insert(in_gt.begin(), in_gt.end());
    all.insert(in_trimap.begin(), in_trimap.end());

    std::vector<std::string> ids;
    for (const std::string& id : all) {
        std::string missing_in;
        if (!in_pred.count(id)) missing_in = "prediction";
        if (!in_gt.count(id)) missing_in = missing_in.empty() ? "ground truth" : missing_in + ", ground truth";
        if (!in_trimap.count(id)) missing_in = missing_in.empty() ? "trimap" : missing_in + ", trimap";
        if (missing_in.empty()) {
            ids.push_back(id);
        } else {
            ++report.missing;
            report.messages.push_back(id + ": missing " + missing_in);
        }
    }

    std::vector<EvalRow> rows(ids.size());
    auto outcomes = run_records(ids.size(), jobs, [&](std::size_t i) {
        AlphaMatte pred = load_alpha_png(pred_dir / (ids[i] + ".png"));
        AlphaMatte gt = load_alpha_png(gt_dir / (ids[i] + ".png"));
        Trimap trimap = load_trimap_png(trimap_dir / (ids[i] + ".png"));
        rows[i] = EvalRow{ids[i], score_matting(pred, gt, trimap, grad_sigma, conn_step, conn_theta)};
    });

    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (outcomes[i].ok) {
            report.rows.push_back(rows[i]);
        } else {
            ++report.missing;
            report.messages.push_back(ids[i] + ": " + outcomes[i].error);
        }
    }

    if (!report.rows.empty()) {
        double n = static_cast<double>(report.rows.size());
        for (const EvalRow& row : report.rows) {
            report.mean.mse += row.score.mse;
            report.mean.sad += row.score.sad;
            report.mean.grad += row.score.grad;
            report.mean.conn += row.score.conn;
            report.mean.unknown_pixel_count += row.score.unknown_pixel_count;
        }
        report.mean.mse /= n;
        report.mean.sad /= n;
        report.mean.grad /= n;
        report.mean.conn /= n;
    }
    return report;
}

RgbImage regenerate_composite(const TripletRecord& rec, const std::filesystem::path& manifest_dir,
                              const std::map<std::string, TripletRecord>& records_by_id) {
    RgbImage img = load_rgb_png(manifest_dir / rec.image);
    AlphaMatte alpha = rec.composite_alpha ? load_alpha_png(manifest_dir / *rec.composite_alpha)
                                           : load_alpha_png(manifest_dir / rec.alpha);
    RgbImage bg = load_rgb_png(manifest_dir / rec.bg);
    RgbImage adjusted = apply_adjustment(bg, rec.adjustment, [&](const std::string& target) {
        auto it = records_by_id.find(target);
        if (it == records_by_id.end()) {
            throw std::runtime_error("regenerate_composite: color transfer target not in manifest: " +
                                     target);
        }
        return load_rgb_png(manifest_dir / it->second.image);
    });
    return composite(img, alpha, adjusted);
}

}  // namespace harmatte

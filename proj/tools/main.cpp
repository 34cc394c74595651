#include <cstddef>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "harmatte/losses.hpp"
#include "harmatte/metrics.hpp"
#include "harmatte/pipeline.hpp"
#include "harmatte/png_io.hpp"

namespace {

namespace fs = std::filesystem;
using namespace harmatte;

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error(what + ": not a number: '" + s + "'");
    }
}

long long parse_int(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error(what + ": not an integer: '" + s + "'");
    }
}

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        unsigned long long v = std::stoull(s, &used);
        if (used != s.size() || s[0] == '-') throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error(what + ": not an unsigned integer: '" + s + "'");
    }
}

std::map<std::string, std::string> load_config(const fs::path& path) {
    static const std::set<std::string> known = {"seed",          "size", "band_radius",
                                                "mask_dilation", "train_fraction", "jobs"};
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path.string());
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                     ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (!known.count(key)) {
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                     ": unknown config key '" + key + "'");
        }
        kv[key] = value;
    }
    return kv;
}

// Config values apply only where the flag was not passed on the command line.
void apply_config(const std::string& config_path, const CLI::App* cmd, PipelineConfig& cfg) {
    if (config_path.empty()) return;
    auto kv = load_config(config_path);
    auto flag_passed = [cmd](const std::string& name) {
        const CLI::Option* opt = cmd->get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
    };
    if (kv.count("seed") && !flag_passed("--seed")) cfg.seed = parse_u64(kv.at("seed"), "config seed");
    if (kv.count("size") && !flag_passed("--size"))
        cfg.size = static_cast<int>(parse_int(kv.at("size"), "config size"));
    if (kv.count("band_radius") && !flag_passed("--band-radius"))
        cfg.band_radius = static_cast<int>(parse_int(kv.at("band_radius"), "config band_radius"));
    if (kv.count("mask_dilation") && !flag_passed("--mask-dilation"))
        cfg.mask_dilation = static_cast<int>(parse_int(kv.at("mask_dilation"), "config mask_dilation"));
    if (kv.count("train_fraction") && !flag_passed("--train-fraction"))
        cfg.train_fraction = parse_double(kv.at("train_fraction"), "config train_fraction");
    if (kv.count("jobs") && !flag_passed("--jobs"))
        cfg.jobs = static_cast<int>(parse_int(kv.at("jobs"), "config jobs"));
}

AlphaSource parse_alpha_source(const std::string& s) {
    if (s.empty() || s == "groundtruth") return {};
    const std::string prefix = "predicted:";
    if (s.rfind(prefix, 0) == 0 && s.size() > prefix.size()) {
        return AlphaSource{true, fs::path(s.substr(prefix.size()))};
    }
    throw std::runtime_error("--alpha-source: expected 'groundtruth' or 'predicted:<dir>', got '" +
                             s + "'");
}

std::optional<AdjustmentOverride> parse_adjust_override(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::string kind_str = s;
    std::string param;
    std::size_t colon = s.find(':');
    if (colon != std::string::npos) {
        kind_str = s.substr(0, colon);
        param = s.substr(colon + 1);
    }
    std::optional<AdjustmentKind> kind = adjustment_kind_from_string(kind_str);
    if (!kind) throw std::runtime_error("--adjust-override: unknown adjustment '" + kind_str + "'");
    AdjustmentOverride ov;
    ov.kind = *kind;
    if (*kind == AdjustmentKind::ColorTransfer) {
        if (!param.empty()) ov.target_id = param;
    } else {
        if (param.empty()) {
            throw std::runtime_error("--adjust-override: '" + kind_str +
                                     "' needs a factor, e.g. '" + kind_str + ":0.5'");
        }
        ov.factor = parse_double(param, "--adjust-override factor");
    }
    return ov;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(trim(line.substr(start)));
            break;
        }
        out.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return out;
}

std::vector<std::string> read_csv_lines(const fs::path& path, const std::string& expected_header) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!trim(line).empty()) lines.push_back(line);
    }
    if (lines.empty()) throw std::runtime_error(path.string() + ": empty file");
    if (trim(lines.front()) != expected_header) {
        throw std::runtime_error(path.string() + ": expected header '" + expected_header + "'");
    }
    lines.erase(lines.begin());
    return lines;
}

std::vector<RaterScore> read_rater_csv(const fs::path& path) {
    std::vector<RaterScore> out;
    for (const std::string& line : read_csv_lines(path, "image_id,rater_id,method,score")) {
        std::vector<std::string> f = split_fields(line);
        if (f.size() != 4) throw std::runtime_error(path.string() + ": expected 4 fields: " + line);
        out.push_back(RaterScore{f[0], f[1], f[2],
                                 static_cast<int>(parse_int(f[3], path.string() + " score"))});
    }
    return out;
}

ScoreBatch read_score_csv(const fs::path& path) {
    ScoreBatch batch;
    for (const std::string& line :
         read_csv_lines(path, "d_real,d_harmonized,d_composite,d_disharmonious")) {
        std::vector<std::string> f = split_fields(line);
        if (f.size() != 4) throw std::runtime_error(path.string() + ": expected 4 fields: " + line);
        batch.d_real.push_back(parse_double(f[0], "d_real"));
        batch.d_harmonized.push_back(parse_double(f[1], "d_harmonized"));
        batch.d_composite.push_back(parse_double(f[2], "d_composite"));
        batch.d_disharmonious.push_back(parse_double(f[3], "d_disharmonious"));
    }
    return batch;
}

std::string g17(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

std::size_t count_manifest_lines(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::size_t n = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!trim(line).empty()) ++n;
    }
    return n;
}

int report_stats(const std::string& stage, const StageStats& stats) {
    std::cout << stage << ": processed " << stats.processed << ", skipped " << stats.skipped
              << ", failed " << stats.failed << "\n";
    for (const std::string& msg : stats.messages) std::cerr << stage << ": " << msg << "\n";
    return stats.ok() ? 0 : 1;
}

int run_eval_matting(const fs::path& pred_dir, const fs::path& gt_dir, const fs::path& trimap_dir,
                     int jobs, const std::string& out_csv) {
    EvalReport report = eval_matting(pred_dir, gt_dir, trimap_dir, jobs);
    for (const std::string& msg : report.messages) std::cerr << "eval-matting: " << msg << "\n";

    std::size_t id_width = 8;
    for (const EvalRow& row : report.rows) id_width = std::max(id_width, row.image_id.size());
    auto print_row = [&](const std::string& id, const MattingScore& s) {
        std::cout << std::left << std::setw(static_cast<int>(id_width) + 2) << id << std::right
                  << std::fixed << std::setprecision(6) << std::setw(12) << s.mse << std::setw(12)
                  << s.sad << std::setw(12) << s.grad << std::setw(12) << s.conn << std::setw(10)
                  << s.unknown_pixel_count << "\n";
    };
    std::cout << std::left << std::setw(static_cast<int>(id_width) + 2) << "image_id" << std::right
              << std::setw(12) << "mse" << std::setw(12) << "sad" << std::setw(12) << "grad"
              << std::setw(12) << "conn" << std::setw(10) << "unknown" << "\n";
    for (const EvalRow& row : report.rows) print_row(row.image_id, row.score);
    if (!report.rows.empty()) print_row("mean", report.mean);

    if (!out_csv.empty()) {
        std::ofstream out(out_csv, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + out_csv);
        out << "image_id,mse,sad,grad,conn,unknown_pixels\n";
        for (const EvalRow& row : report.rows) {
            out << row.image_id << ',' << g17(row.score.mse) << ',' << g17(row.score.sad) << ','
                << g17(row.score.grad) << ',' << g17(row.score.conn) << ','
                << row.score.unknown_pixel_count << "\n";
        }
        if (!report.rows.empty()) {
            out << "mean," << g17(report.mean.mse) << ',' << g17(report.mean.sad) << ','
                << g17(report.mean.grad) << ',' << g17(report.mean.conn) << ','
                << report.mean.unknown_pixel_count << "\n";
        }
    }
    return (report.rows.empty() || report.missing > 0) ? 1 : 0;
}

int run_eval_mos(const fs::path& scores_csv, const std::string& out_csv) {
    std::map<std::string, MosSummary> table = mos_aggregate(read_rater_csv(scores_csv));
    std::size_t width = 8;
    for (const auto& [method, summary] : table) width = std::max(width, method.size());
    std::cout << std::left << std::setw(static_cast<int>(width) + 2) << "method" << std::right
              << std::setw(10) << "mos" << std::setw(10) << "std" << std::setw(8) << "raters"
              << "\n";
    for (const auto& [method, summary] : table) {
        std::cout << std::left << std::setw(static_cast<int>(width) + 2) << method << std::right
                  << std::fixed << std::setprecision(4) << std::setw(10) << summary.mean
                  << std::setw(10) << summary.stddev << std::setw(8) << summary.rater_count << "\n";
    }
    if (!out_csv.empty()) {
        std::ofstream out(out_csv, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + out_csv);
        out << "method,mos,std,raters\n";
        for (const auto& [method, summary] : table) {
            out << method << ',' << g17(summary.mean) << ',' << g17(summary.stddev) << ','
                << summary.rater_count << "\n";
        }
    }
    return 0;
}

int run_losses(const fs::path& scores_csv, const std::string& pred_alpha,
               const std::string& gt_alpha, const std::string& pred_image,
               const std::string& gt_image, double lambda1, double lambda2) {
    ScoreBatch batch = read_score_csv(scores_csv);
    double matting_recon = 0.0;
    double harmony_recon = 0.0;
    if (!pred_alpha.empty()) {
        matting_recon = matting_recon_loss(load_alpha_png(pred_alpha), load_alpha_png(gt_alpha));
    }
    if (!pred_image.empty()) {
        harmony_recon = harmony_recon_loss(load_rgb_png(pred_image), load_rgb_png(gt_image));
    }
    LossBundle bundle = total_losses(matting_recon, harmony_recon, generator_adv_losses(batch),
                                     lambda1, lambda2, discriminator_loss(batch));
    std::cout << "matting_recon = " << g17(bundle.matting_recon) << "\n"
              << "harmony_recon = " << g17(bundle.harmony_recon) << "\n"
              << "disc = " << g17(bundle.disc) << "\n"
              << "gen_matting_adv = " << g17(bundle.gen_matting_adv) << "\n"
              << "gen_harmony_adv = " << g17(bundle.gen_harmony_adv) << "\n"
              << "total_matting = " << g17(bundle.total_matting) << "\n"
              << "total_harmony = " << g17(bundle.total_harmony) << "\n"
              << "lambda1 = " << g17(bundle.lambda1) << "\n"
              << "lambda2 = " << g17(bundle.lambda2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Portrait matting dataset construction and evaluation toolkit"};
    app.require_subcommand(1);

    PipelineConfig cfg;
    std::string config_path;
    std::string alpha_source_str;
    std::string adjust_override_str;
    std::string split_filter;
    std::string out_file;
    std::string pred_alpha, gt_alpha, pred_image, gt_image;
    double lambda1 = 0.02, lambda2 = 0.01;
    fs::path arg_a, arg_b, arg_c;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", cfg.seed, "RNG seed for every derived stream");
        cmd->add_option("--jobs", cfg.jobs, "worker threads, 0 = hardware default");
        cmd->add_option("--config", config_path, "key = value config file, flags take precedence");
    };

    CLI::App* prep = app.add_subcommand("prepare", "Build the resized image/alpha/fg/bg corpus");
    prep->add_option("corpus_dir", arg_a, "directory with image/ and alpha/ PNG sets")->required();
    prep->add_option("out_dir", arg_b, "output corpus directory")->required();
    prep->add_option("--size", cfg.size, "output side length in pixels");
    prep->add_option("--mask-dilation", cfg.mask_dilation, "inpainting mask dilation radius");
    add_common(prep);

    CLI::App* trip = app.add_subcommand("triplets", "Synthesize disharmonious composites");
    trip->add_option("manifest", arg_a, "prepared corpus manifest.jsonl")->required();
    trip->add_option("out_dir", arg_b, "output triplet directory")->required();
    trip->add_option("--band-radius", cfg.band_radius, "trimap unknown band radius");
    trip->add_option("--alpha-source", alpha_source_str,
                     "composite alpha: 'groundtruth' or 'predicted:<dir>'");
    trip->add_option("--adjust-override", adjust_override_str,
                     "force one adjustment, e.g. 'illumination:0.5', 'color_enhance:1.8', "
                     "'color_transfer[:<image_id>]'");
    add_common(trip);

    CLI::App* spl = app.add_subcommand("split", "Label manifest records train/test");
    spl->add_option("manifest", arg_a, "manifest to label")->required();
    spl->add_option("--train-fraction", cfg.train_fraction, "fraction labeled train");
    spl->add_option("--out", out_file, "write here instead of rewriting in place");
    add_common(spl);

    CLI::App* comp = app.add_subcommand("composite", "Recomposite records onto new backgrounds");
    comp->add_option("manifest", arg_a, "triplets.jsonl manifest")->required();
    comp->add_option("background_dir", arg_b, "directory of background PNGs")->required();
    comp->add_option("out_dir", arg_c, "output directory")->required();
    comp->add_option("--split", split_filter, "only records with this split label")
        ->check(CLI::IsMember({"train", "test"}));
    comp->add_option("--alpha-source", alpha_source_str,
                     "composite alpha: 'groundtruth' or 'predicted:<dir>'");
    add_common(comp);

    CLI::App* evalm = app.add_subcommand("eval-matting", "Score predicted mattes");
    evalm->add_option("pred_dir", arg_a, "predicted matte PNGs")->required();
    evalm->add_option("gt_dir", arg_b, "ground-truth matte PNGs")->required();
    evalm->add_option("trimap_dir", arg_c, "trimap PNGs")->required();
    evalm->add_option("--out", out_file, "also write the table as CSV");
    add_common(evalm);

    CLI::App* evmos = app.add_subcommand("eval-mos", "Aggregate rater scores per method");
    evmos->add_option("scores_csv", arg_a, "CSV with header image_id,rater_id,method,score")
        ->required();
    evmos->add_option("--out", out_file, "also write the table as CSV");

    CLI::App* loss = app.add_subcommand("losses", "Compute every loss term for one batch");
    loss->add_option("--scores", arg_a, "CSV with header d_real,d_harmonized,d_composite,d_disharmonious")
        ->required();
    loss->add_option("--pred-alpha", pred_alpha, "predicted matte PNG")->needs(
        loss->add_option("--gt-alpha", gt_alpha, "ground-truth matte PNG"));
    loss->add_option("--pred-image", pred_image, "harmonized image PNG")->needs(
        loss->add_option("--gt-image", gt_image, "real image PNG"));
    loss->add_option("--lambda1", lambda1, "matting adversarial weight");
    loss->add_option("--lambda2", lambda2, "harmony adversarial weight");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (prep->parsed()) {
            apply_config(config_path, prep, cfg);
            return report_stats("prepare", prepare(arg_a, arg_b, cfg));
        }
        if (trip->parsed()) {
            apply_config(config_path, trip, cfg);
            return report_stats("triplets",
                                build_triplets(arg_a, arg_b, cfg, parse_alpha_source(alpha_source_str),
                                               parse_adjust_override(adjust_override_str)));
        }
        if (spl->parsed()) {
            apply_config(config_path, spl, cfg);
            std::optional<fs::path> out_path;
            if (!out_file.empty()) out_path = fs::path(out_file);
            split_manifest(arg_a, cfg.train_fraction, cfg.seed, out_path);
            std::size_t n = count_manifest_lines(out_path ? *out_path : arg_a);
            std::size_t train_n = split_count(n, cfg.train_fraction);
            std::cout << "split: " << n << " records, " << train_n << " train, " << (n - train_n)
                      << " test\n";
            return 0;
        }
        if (comp->parsed()) {
            apply_config(config_path, comp, cfg);
            return report_stats("composite",
                                composite_batch(arg_a, arg_b, arg_c, cfg, split_filter,
                                                parse_alpha_source(alpha_source_str)));
        }
        if (evalm->parsed()) {
            apply_config(config_path, evalm, cfg);
            return run_eval_matting(arg_a, arg_b, arg_c, cfg.jobs, out_file);
        }
        if (evmos->parsed()) return run_eval_mos(arg_a, out_file);
        if (loss->parsed())
            return run_losses(arg_a, pred_alpha, gt_alpha, pred_image, gt_image, lambda1, lambda2);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

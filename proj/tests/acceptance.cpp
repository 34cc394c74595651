// Acceptance gate: one self-checking scenario per release criterion, each
// verified against an oracle implemented independently of the library code.
// Usage: acceptance <path-to-cli-binary>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "harmatte/adjust.hpp"
#include "harmatte/color.hpp"
#include "harmatte/losses.hpp"
#include "harmatte/manifest.hpp"
#include "harmatte/matting.hpp"
#include "harmatte/metrics.hpp"
#include "harmatte/pipeline.hpp"
#include "harmatte/png_io.hpp"
#include "harmatte/rng.hpp"
#include "helpers.hpp"

using namespace harmatte;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int g_checks_failed = 0;

void expect(bool cond, const char* what) {
    if (!cond) {
        std::fprintf(stderr, "  check failed: %s\n", what);
        ++g_checks_failed;
    }
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// ---------------------------------------------------------------------------
// criterion 1: compositing endpoint identities at batch scale

bool criterion_1() {
    SplitMix64 rng(0xC1);
    auto start = Clock::now();
    for (int trial = 0; trial < 1000; ++trial) {
        int w = 8 + static_cast<int>(rng.next_below(25));
        int h = 8 + static_cast<int>(rng.next_below(25));
        RgbImage img = testutil::random_image(rng, w, h);
        RgbImage bg = testutil::random_image(rng, w, h);
        expect(composite(img, AlphaMatte::filled(w, h, 1.0), bg).data == img.data,
               "opaque composite must return the foreground source bit-exactly");
        expect(composite(img, AlphaMatte::filled(w, h, 0.0), bg).data == bg.data,
               "transparent composite must return the background bit-exactly");
    }
    expect(seconds_since(start) < 5.0, "1000 composite round trips must finish inside 5 s");
    return g_checks_failed == 0;
}

// ---------------------------------------------------------------------------
// criterion 2: statistics transfer hits the target moments

struct PlainStats {
    double mean[3];
    double stddev[3];
};

// Two-pass accumulation, written without reference to the library's version.
PlainStats plain_lab_stats(const LalphabetaImage& img) {
    PlainStats s{};
    std::size_t n = img.pixel_count();
    for (int c = 0; c < 3; ++c) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) sum += img.data[i * 3 + c];
        s.mean[c] = sum / static_cast<double>(n);
        double var = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double d = img.data[i * 3 + c] - s.mean[c];
            var += d * d;
        }
        s.stddev[c] = std::sqrt(var / static_cast<double>(n));
    }
    return s;
}

RgbImage bright_random_image(SplitMix64& rng, int w, int h) {
    RgbImage img(w, h);
    for (double& v : img.data) v = 0.05 + 0.95 * rng.next_double();
    return img;
}

bool criterion_2() {
    SplitMix64 rng(0xC2);
    for (int trial = 0; trial < 100; ++trial) {
        int sw = 8 + static_cast<int>(rng.next_below(30));
        int sh = 8 + static_cast<int>(rng.next_below(30));
        int tw = 8 + static_cast<int>(rng.next_below(30));
        int th = 8 + static_cast<int>(rng.next_below(30));
        RgbImage src = bright_random_image(rng, sw, sh);
        RgbImage tgt = bright_random_image(rng, tw, th);
        LalphabetaImage src_lab = rgb_to_lalphabeta(src);
        LalphabetaImage tgt_lab = rgb_to_lalphabeta(tgt);
        LalphabetaImage out =
            reinhard_transfer_lab(src_lab, lab_channel_stats(src_lab), lab_channel_stats(tgt_lab));
        PlainStats got = plain_lab_stats(out);
        PlainStats want = plain_lab_stats(tgt_lab);
        for (int c = 0; c < 3; ++c) {
            expect(std::abs(got.mean[c] - want.mean[c]) <= 1e-6,
                   "transferred mean must match the target within 1e-6");
            expect(std::abs(got.stddev[c] - want.stddev[c]) <= 1e-6,
                   "transferred stddev must match the target within 1e-6");
        }
    }
    // self-transfer is the identity, up to round-trip error
    for (int trial = 0; trial < 20; ++trial) {
        RgbImage src = bright_random_image(rng, 24, 18);
        RgbImage out = reinhard_transfer(src, src);
        double worst = 0.0;
        for (std::size_t i = 0; i < src.data.size(); ++i) {
            worst = std::max(worst, std::abs(out.data[i] - src.data[i]));
        }
        expect(worst <= 1e-4, "self-transfer must reproduce the source within 1e-4");
    }
    return g_checks_failed == 0;
}

// ---------------------------------------------------------------------------
// criterion 3: matting metrics versus independent oracles

double oracle_mse(const AlphaMatte& p, const AlphaMatte& g, const Trimap& t) {
    double total = 0.0;
    double count = 0.0;
    for (int y = 0; y < p.height; ++y) {
        for (int x = 0; x < p.width; ++x) {
            if (t.at(x, y) != TrimapLabel::Unknown) continue;
            total += (p.at(x, y) - g.at(x, y)) * (p.at(x, y) - g.at(x, y));
            count += 1.0;
        }
    }
    return total / count;
}

double oracle_sad(const AlphaMatte& p, const AlphaMatte& g, const Trimap& t) {
    double total = 0.0;
    for (int y = 0; y < p.height; ++y) {
        for (int x = 0; x < p.width; ++x) {
            if (t.at(x, y) == TrimapLabel::Unknown) total += std::abs(p.at(x, y) - g.at(x, y));
        }
    }
    return total / 1000.0;
}

int oracle_reflect(int i, int n) {
    while (i < 0 || i >= n) {
        if (i < 0) i = -i - 1;
        if (i >= n) i = 2 * n - 1 - i;
    }
    return i;
}

// Direct (non-separable) 2-D convolution with first-order Gaussian
// derivative kernels, built from the formulas.
std::vector<double> oracle_gradient_magnitude(const AlphaMatte& m, double sigma) {
    int r = std::max(1, static_cast<int>(std::floor(4.0 * sigma)));
    std::vector<double> smooth(2 * r + 1), deriv(2 * r + 1);
    double norm = 0.0;
    for (int i = -r; i <= r; ++i) {
        smooth[i + r] = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
        norm += smooth[i + r];
    }
    for (int i = -r; i <= r; ++i) {
        smooth[i + r] /= norm;
        deriv[i + r] = (-static_cast<double>(i) / (sigma * sigma)) * smooth[i + r];
    }
    std::vector<double> mag(m.data.size());
    for (int y = 0; y < m.height; ++y) {
        for (int x = 0; x < m.width; ++x) {
            double gx = 0.0, gy = 0.0;
            for (int j = -r; j <= r; ++j) {
                for (int i = -r; i <= r; ++i) {
                    double v = m.at(oracle_reflect(x + i, m.width), oracle_reflect(y + j, m.height));
                    gx += deriv[i + r] * smooth[j + r] * v;
                    gy += smooth[i + r] * deriv[j + r] * v;
                }
            }
            mag[static_cast<std::size_t>(y) * m.width + x] = std::sqrt(gx * gx + gy * gy);
        }
    }
    return mag;
}

double oracle_grad(const AlphaMatte& p, const AlphaMatte& g, const Trimap& t, double sigma) {
    std::vector<double> mp = oracle_gradient_magnitude(p, sigma);
    std::vector<double> mg = oracle_gradient_magnitude(g, sigma);
    double total = 0.0;
    for (std::size_t i = 0; i < p.pixel_count(); ++i) {
        if (t.labels[i] != TrimapLabel::Unknown) continue;
        total += (mp[i] - mg[i]) * (mp[i] - mg[i]);
    }
    return total / 1000.0;
}

// Union-find largest component, as an independent take on the connectivity
// metric. Roots are kept minimal so ties resolve to the component containing
// the smallest pixel index, the same rule scan-order discovery produces.
struct Dsu {
    std::vector<std::int32_t> parent;
    explicit Dsu(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<std::int32_t>(i);
    }
    std::int32_t find(std::int32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::int32_t a, std::int32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        parent[b] = a;
    }
};

double oracle_conn(const AlphaMatte& p, const AlphaMatte& g, const Trimap& t, double step,
                   double theta) {
    const int w = p.width, h = p.height;
    const std::size_t n = p.pixel_count();
    std::vector<double> level(n, 1.0);
    std::vector<std::uint8_t> done(n, 0);
    double prev = 0.0;
    for (int k = 1;; ++k) {
        double thr = k * step;
        if (thr > 1.0 + 1e-12) break;
        std::vector<std::uint8_t> bin(n);
        for (std::size_t i = 0; i < n; ++i) bin[i] = (p.data[i] >= thr && g.data[i] >= thr) ? 1 : 0;
        Dsu dsu(n);
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                std::size_t i = static_cast<std::size_t>(y) * w + x;
                if (!bin[i]) continue;
                if (x + 1 < w && bin[i + 1]) dsu.unite(static_cast<std::int32_t>(i), static_cast<std::int32_t>(i + 1));
                if (y + 1 < h && bin[i + w]) dsu.unite(static_cast<std::int32_t>(i), static_cast<std::int32_t>(i + w));
            }
        }
        std::map<std::int32_t, std::size_t> sizes;
        for (std::size_t i = 0; i < n; ++i) {
            if (bin[i]) ++sizes[dsu.find(static_cast<std::int32_t>(i))];
        }
        std::int32_t best = -1;
        std::size_t best_size = 0;
        for (const auto& [root, size] : sizes) {
            if (size > best_size) {  // map iterates roots ascending, ties keep the smaller root
                best = root;
                best_size = size;
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            bool inside = bin[i] && dsu.find(static_cast<std::int32_t>(i)) == best;
            if (!done[i] && !inside) {
                done[i] = 1;
                level[i] = prev;
            }
        }
        prev = thr;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (t.labels[i] != TrimapLabel::Unknown) continue;
        double dp = p.data[i] - level[i];
        double dg = g.data[i] - level[i];
        double phi_p = 1.0 - (dp >= theta ? dp : 0.0);
        double phi_g = 1.0 - (dg >= theta ? dg : 0.0);
        total += std::abs(phi_p - phi_g);
    }
    return total / 1000.0;
}

bool criterion_3() {
    SplitMix64 rng(0xC3);
    for (int trial = 0; trial < 60; ++trial) {
        AlphaMatte pred = trial % 2 == 0 ? testutil::random_matte(rng, 16, 16)
                                         : testutil::banded_matte(rng, 16, 16);
        AlphaMatte gt = testutil::banded_matte(rng, 16, 16);
        Trimap tm = testutil::random_trimap(rng, 16, 16);
        expect(std::abs(mse_alpha(pred, gt, tm) - oracle_mse(pred, gt, tm)) <= 1e-9,
               "mse must match the double-loop oracle within 1e-9");
        expect(std::abs(sad_alpha(pred, gt, tm) - oracle_sad(pred, gt, tm)) <= 1e-9,
               "sad must match the double-loop oracle within 1e-9");
        expect(std::abs(grad_error(pred, gt, tm) - oracle_grad(pred, gt, tm, kGradSigma)) <= 1e-6,
               "grad must match the direct-convolution oracle within 1e-6");
        expect(std::abs(conn_error(pred, gt, tm) -
                        oracle_conn(pred, gt, tm, kConnStep, kConnTheta)) <= 1e-6,
               "conn must match the union-find oracle within 1e-6");
    }
    for (int trial = 0; trial < 10; ++trial) {
        AlphaMatte m = testutil::banded_matte(rng, 16, 16);
        Trimap tm = testutil::all_unknown(16, 16);
        MattingScore s = score_matting(m, m, tm);
        expect(s.mse == 0.0 && s.sad == 0.0 && s.grad == 0.0 && s.conn == 0.0,
               "identical prediction must score exactly zero on all four metrics");
    }
    return g_checks_failed == 0;
}

// ---------------------------------------------------------------------------
// criterion 4: adversarial loss algebra

ScoreBatch random_batch(SplitMix64& rng, std::size_t size) {
    ScoreBatch b;
    for (std::size_t i = 0; i < size; ++i) {
        b.d_real.push_back(rng.next_real(-3.0, 3.0));
        b.d_harmonized.push_back(rng.next_real(-3.0, 3.0));
        b.d_composite.push_back(rng.next_real(-3.0, 3.0));
        b.d_disharmonious.push_back(rng.next_real(-3.0, 3.0));
    }
    return b;
}

bool criterion_4() {
    // hand-computed fixtures
    ScoreBatch twos;
    twos.d_real = {2.0, 2.0, 2.0};
    twos.d_harmonized = {2.0, 2.0, 2.0};
    twos.d_composite = {2.0, 2.0, 2.0};
    twos.d_disharmonious = {2.0, 2.0, 2.0};
    expect(discriminator_loss(twos) == 4.0, "all-2 batch must give discriminator loss 4");
    auto [gm2, gh2] = generator_adv_losses(twos);
    expect(gm2 == 0.0 && gh2 == 0.0, "all-2 batch must give zero generator terms");

    ScoreBatch lone;
    lone.d_real = {1.0};
    lone.d_harmonized = {0.0};
    lone.d_composite = {0.0};
    lone.d_disharmonious = {0.0};
    expect(discriminator_loss(lone) == -1.0, "(1,0,0,0) batch must give discriminator loss -1");
    auto [gm1, gh1] = generator_adv_losses(lone);
    expect(gm1 == 1.0 && gh1 == 1.0, "(1,0,0,0) batch must give generator terms (1, 1)");

    // sum identity over random batches
    SplitMix64 rng(0xC4);
    for (int trial = 0; trial < 1000; ++trial) {
        ScoreBatch b = random_batch(rng, 1 + rng.next_below(16));
        double ld = discriminator_loss(b);
        auto [gm, gh] = generator_adv_losses(b);
        double rhs = 0.0;
        for (std::size_t i = 0; i < b.size(); ++i) rhs += b.d_disharmonious[i] + b.d_real[i];
        rhs /= static_cast<double>(b.size());
        expect(std::abs(ld + gm + gh - rhs) <= 1e-12,
               "loss terms must satisfy the disharmonious-plus-real sum identity");
    }

    // totals are affine in the weights: exactly recon + lambda * adv
    for (int trial = 0; trial < 1000; ++trial) {
        double mr = rng.next_real(0.0, 2.0);
        double hr = rng.next_real(0.0, 2.0);
        double am = rng.next_real(-1.0, 1.0);
        double ah = rng.next_real(-1.0, 1.0);
        double l1 = rng.next_real(0.0, 0.1);
        double l2 = rng.next_real(0.0, 0.1);
        LossBundle out = total_losses(mr, hr, {am, ah}, l1, l2);
        expect(out.total_matting == mr + l1 * am, "matting total must be exactly recon + l1*adv");
        expect(out.total_harmony == hr + l2 * ah, "harmony total must be exactly recon + l2*adv");
    }
    // dyadic spot check: equal second differences along lambda1
    double t0 = total_losses(0.5, 0.0, {0.25, 0.0}, 0.0, 0.0).total_matting;
    double t1 = total_losses(0.5, 0.0, {0.25, 0.0}, 0.25, 0.0).total_matting;
    double t2 = total_losses(0.5, 0.0, {0.25, 0.0}, 0.5, 0.0).total_matting;
    expect(t1 - t0 == 0.0625 && t2 - t1 == 0.0625,
           "dyadic lambda steps must change the total by exactly lambda*adv");
    return g_checks_failed == 0;
}

// ---------------------------------------------------------------------------
// criterion 5: trimap and fusion contracts

bool criterion_5() {
    SplitMix64 rng(0xC5);
    for (int trial = 0; trial < 500; ++trial) {
        int w = 6 + static_cast<int>(rng.next_below(18));
        int h = 6 + static_cast<int>(rng.next_below(18));
        AlphaMatte a = trial % 2 == 0 ? testutil::banded_matte(rng, w, h)
                                      : testutil::random_matte(rng, w, h);
        for (int radius : {0, 1, 2, 5}) {
            Trimap t = generate_trimap(a, radius);
            for (std::size_t i = 0; i < a.pixel_count(); ++i) {
                if (a.data[i] > 0.0 && a.data[i] < 1.0) {
                    expect(t.labels[i] == TrimapLabel::Unknown,
                           "fractional alpha must always be labeled unknown");
                }
            }
            if (t.count(TrimapLabel::Unknown) == 0) continue;
            AlphaMatte pred = testutil::random_matte(rng, w, h);
            AlphaMatte fused = fuse_prediction(pred, t);
            expect(fuse_prediction(fused, t).data == fused.data, "fusion must be idempotent");
            for (std::size_t i = 0; i < fused.data.size(); ++i) {
                if (t.labels[i] == TrimapLabel::Foreground) {
                    expect(fused.data[i] == 1.0, "fused foreground must be exactly 1");
                } else if (t.labels[i] == TrimapLabel::Background) {
                    expect(fused.data[i] == 0.0, "fused background must be exactly 0");
                }
            }
        }
    }
    return g_checks_failed == 0;
}

// ---------------------------------------------------------------------------
// criterion 6: inpainting locality and constant-boundary exactness

std::vector<std::uint8_t> oracle_dilate(const std::vector<std::uint8_t>& mask, int w, int h, int r) {
    std::vector<std::uint8_t> out(mask.size(), 0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            for (int dy = -r; dy <= r && !out[static_cast<std::size_t>(y) * w + x]; ++dy) {
                for (int dx = -r; dx <= r; ++dx) {
                    int ny = y + dy, nx = x + dx;
                    if (ny < 0 || ny >= h || nx < 0 || nx >= w) continue;
                    if (mask[static_cast<std::size_t>(ny) * w + nx]) {
                        out[static_cast<std::size_t>(y) * w + x] = 1;
                        break;
                    }
                }
            }
        }
    }
    return out;
}

AlphaMatte scattered_blobs(SplitMix64& rng, int w, int h) {
    AlphaMatte a(w, h);
    int blobs = 1 + static_cast<int>(rng.next_below(3));
    for (int b = 0; b < blobs; ++b) {
        // keep a clear margin so the fill mask can never swallow the image
        int cx = 5 + static_cast<int>(rng.next_below(std::max(1, w - 10)));
        int cy = 5 + static_cast<int>(rng.next_below(std::max(1, h - 10)));
        int r = 1 + static_cast<int>(rng.next_below(2));
        for (int y = std::max(0, cy - r); y <= std::min(h - 1, cy + r); ++y) {
            for (int x = std::max(0, cx - r); x <= std::min(w - 1, cx + r); ++x) {
                a.at(x, y) = 0.25 + 0.75 * rng.next_double();
            }
        }
    }
    return a;
}

bool criterion_6() {
    SplitMix64 rng(0xC6);
    for (int trial = 0; trial < 100; ++trial) {
        int w = 16 + static_cast<int>(rng.next_below(20));
        int h = 16 + static_cast<int>(rng.next_below(20));
        RgbImage img = testutil::random_image(rng, w, h);
        AlphaMatte a = scattered_blobs(rng, w, h);
        int dilation = static_cast<int>(trial % 4);
        RgbImage out = inpaint_background(img, a, dilation);
        std::vector<std::uint8_t> seed_mask(a.pixel_count());
        for (std::size_t i = 0; i < a.data.size(); ++i) seed_mask[i] = a.data[i] > 0.0 ? 1 : 0;
        std::vector<std::uint8_t> fill = oracle_dilate(seed_mask, w, h, dilation);
        for (std::size_t i = 0; i < a.pixel_count(); ++i) {
            if (!fill[i]) {
                for (int c = 0; c < 3; ++c) {
                    expect(out.data[i * 3 + c] == img.data[i * 3 + c],
                           "pixels outside the fill mask must be bit-identical");
                }
            }
        }
        out.validate();
    }
    // constant surroundings must be reproduced exactly in the filled region
    for (double v : {0.25, 0.5, 0.75}) {
        RgbImage img = RgbImage::filled(20, 20, v, v, v);
        AlphaMatte a(20, 20);
        for (int y = 8; y < 12; ++y)
            for (int x = 8; x < 12; ++x) a.at(x, y) = 1.0;
        RgbImage out = inpaint_background(img, a, 2);
        expect(out.data == img.data, "constant boundaries must fill with the constant exactly");
    }
    RgbImage tinted = RgbImage::filled(20, 20, 0.2, 0.6, 0.9);
    AlphaMatte hole(20, 20);
    hole.at(10, 10) = 0.5;
    expect(inpaint_background(tinted, hole, 3).data == tinted.data,
           "per-channel constants must survive filling exactly");
    return g_checks_failed == 0;
}

// ---------------------------------------------------------------------------
// criterion 7: end-to-end determinism across worker counts

bool run_cmd(const std::string& cmd) {
    int rc = std::system(cmd.c_str());
    if (rc != 0) std::fprintf(stderr, "  command failed (%d): %s\n", rc, cmd.c_str());
    return rc == 0;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

bool run_fixture_pipeline(const std::string& cli, const fs::path& corpus, const fs::path& run_dir,
                          int jobs) {
    fs::create_directories(run_dir);
    std::string j = " --jobs " + std::to_string(jobs);
    std::string quiet = " > /dev/null 2>&1";
    return run_cmd(cli + " prepare " + q(corpus) + " " + q(run_dir / "prep") +
                   " --size 64 --seed 5" + j + quiet) &&
           run_cmd(cli + " split " + q(run_dir / "prep" / "manifest.jsonl") +
                   " --train-fraction 0.9 --seed 5" + quiet) &&
           run_cmd(cli + " triplets " + q(run_dir / "prep" / "manifest.jsonl") + " " +
                   q(run_dir / "trip") + " --seed 5" + j + quiet);
}

std::string slurp_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

// Order-independent digest: hash every regular file as (relative path, bytes),
// sorted by path.
std::uint64_t dir_digest(const fs::path& root) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::vector<std::string> keys;
    for (const fs::path& p : files) keys.push_back(p.lexically_relative(root).generic_string());
    std::vector<std::size_t> order(files.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    auto mix = [&hash](const std::string& bytes) {
        for (unsigned char ch : bytes) {
            hash ^= ch;
            hash *= 0x100000001b3ULL;
        }
        hash ^= 0xff;
        hash *= 0x100000001b3ULL;
    };
    for (std::size_t i : order) {
        mix(keys[i]);
        mix(slurp_file(files[i]));
    }
    return hash;
}

fs::path g_fixture_run;  // criterion 8 replays the triplets this run produced

bool criterion_7(const std::string& cli) {
    auto start = Clock::now();
    fs::path root = testutil::fresh_dir("acceptance_fixture");
    fs::path corpus = root / "corpus";
    fs::create_directories(corpus / "image");
    fs::create_directories(corpus / "alpha");
    SplitMix64 rng(0xC7);
    for (int i = 0; i < 50; ++i) {
        int w = 90 + static_cast<int>(rng.next_below(12));
        int h = 74 + static_cast<int>(rng.next_below(12));
        RgbImage img = testutil::random_image(rng, w, h);
        AlphaMatte a(w, h);
        double cx = w / 2.0, cy = h / 2.0, r = std::min(w, h) / 3.5;
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                a.at(x, y) = std::clamp(1.5 - std::hypot(x - cx, y - cy) / r, 0.0, 1.0);
            }
        }
        char id[8];
        std::snprintf(id, sizeof id, "im%03d", i);
        save_rgb_png(corpus / "image" / (std::string(id) + ".png"), img);
        save_alpha_png(corpus / "alpha" / (std::string(id) + ".png"), a);
    }

    // same inner layout in both runs so manifest-relative paths are identical
    expect(run_fixture_pipeline(cli, corpus, root / "runA", 1), "single-worker pipeline must succeed");
    expect(run_fixture_pipeline(cli, corpus, root / "runB", 8), "eight-worker pipeline must succeed");
    if (g_checks_failed != 0) return false;

    expect(read_triplet_manifest(root / "runA" / "trip" / "triplets.jsonl").size() == 50,
           "the fixture run must produce all 50 triplets");
    expect(dir_digest(root / "runA") == dir_digest(root / "runB"),
           "outputs must be byte-identical regardless of worker count");
    expect(seconds_since(start) < 60.0, "the 50-image pipeline must finish inside 60 s");
    g_fixture_run = root / "runA";
    return g_checks_failed == 0;
}

// ---------------------------------------------------------------------------
// criterion 8: every stored triplet is regenerable byte-exactly

bool criterion_8() {
    if (g_fixture_run.empty()) {
        std::fprintf(stderr, "  no fixture output to replay\n");
        return false;
    }
    fs::path trip = g_fixture_run / "trip";
    auto recs = read_triplet_manifest(trip / "triplets.jsonl");
    expect(!recs.empty(), "the fixture manifest must have records");
    std::map<std::string, TripletRecord> by_id;
    for (const auto& rec : recs) by_id[rec.image_id] = rec;
    fs::path scratch = testutil::fresh_dir("acceptance_regen");
    for (const TripletRecord& rec : recs) {
        RgbImage regen = regenerate_composite(rec, trip, by_id);
        fs::path out = scratch / (rec.image_id + ".png");
        save_rgb_png(out, regen);
        expect(slurp_file(out) == slurp_file(trip / rec.composite),
               "re-executing the stored adjustment must reproduce the composite byte-exactly");
    }
    return g_checks_failed == 0;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <cli-binary>\n", argv[0]);
        return 2;
    }
    const std::string cli = q(fs::path(argv[1]));

    bool all = true;
    auto run = [&all](int number, auto&& body) {
        bool passed = false;
        try {
            passed = body();
        } catch (const std::exception& e) {
            std::fprintf(stderr, "  unexpected exception: %s\n", e.what());
        }
        all = all && passed;
        std::printf("criterion %d: %s\n", number, passed ? "PASS" : "FAIL");
        std::fflush(stdout);
        g_checks_failed = 0;
    };

    run(1, [] { return criterion_1(); });
    run(2, [] { return criterion_2(); });
    run(3, [] { return criterion_3(); });
    run(4, [] { return criterion_4(); });
    run(5, [] { return criterion_5(); });
    run(6, [] { return criterion_6(); });
    run(7, [&cli] { return criterion_7(cli); });
    run(8, [] { return criterion_8(); });

    return all ? 0 : 1;
}

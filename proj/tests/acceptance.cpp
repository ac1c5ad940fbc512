// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Thresholds are frozen; do not relax them to make a run green.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "srug/metrics.hpp"
#include "srug/pipeline.hpp"
#include "srug/png_io.hpp"
#include "srug/smooth.hpp"

using namespace srug;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("criterion %d: %s — %s\n", criterion, pass ? "PASS" : "FAIL",
                detail.c_str());
    if (!pass) ++g_failures;
}

RugImage reference_rug() {
    BoidsParams p;  // defaults: 151 movers, 1000 frames
    p.rng_seed = 42;
    Dataset d = generate_boids(p);
    LinearOrder lo = linearize_dataset(d, HilbertCurve{});
    return render_spatial_rug(d, lo, fit_to_extent(FourCorner{}, d.extent));
}

int linf(Rgb8 a, Rgb8 b) {
    return std::max({std::abs(int(a.r) - int(b.r)),
                     std::abs(int(a.g) - int(b.g)),
                     std::abs(int(a.b) - int(b.b))});
}

// Criterion 1: on the seeded flocking rug, every pooling configuration beats
// every Gaussian configuration on both RMSE and SSIM, within a time budget.
void criterion_1(const RugImage& rug) {
    const auto start = std::chrono::steady_clock::now();
    const PoolingMatrix tacs_grid[3] = {{3, 1, 0}, {5, 3, 1}, {7, 3, 1}};
    const GaussianParams gauss_grid[3] = {{0.8, 3}, {1.0, 5}, {2.0, 9}};

    double worst_rmse_gap = 1e9, worst_ssim_gap = 1e9;
    bool ordered = true;
    for (const auto& m : tacs_grid) {
        const RugImage t = tacs_smooth(rug, m);
        const double t_rmse = rmse(t, rug), t_ssim = ssim(t, rug);
        for (const auto& g : gauss_grid) {
            const RugImage b = gaussian_blur(rug, g);
            const double b_rmse = rmse(b, rug), b_ssim = ssim(b, rug);
            ordered = ordered && t_rmse < b_rmse && t_ssim > b_ssim;
            worst_rmse_gap = std::min(worst_rmse_gap, b_rmse - t_rmse);
            worst_ssim_gap = std::min(worst_ssim_gap, t_ssim - b_ssim);
        }
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    const bool pass = ordered && seconds < 60.0;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "9 pairings, min rmse gap %.3f, min ssim gap %.4f, %.1fs",
                  worst_rmse_gap, worst_ssim_gap, seconds);
    report(1, pass, buf);
}

// Criterion 2: a single-pixel-wide outlier streak is restored by pooling and
// smeared by blurring.
void criterion_2() {
    const Rgb8 green{0, 255, 0}, blue{0, 0, 255};
    const Eigen::Index W = 100, H = 50, row = 25, seg0 = 40, seg_len = 20;
    RugImage rug(W, H, green);
    for (Eigen::Index t = seg0; t < seg0 + seg_len; ++t) rug.set(t, row, blue);

    const RugImage pooled = tacs_smooth(rug, {5, 2, 0});
    int restored = 0;
    for (Eigen::Index t = seg0; t < seg0 + seg_len; ++t)
        restored += pooled.at(t, row) == green;

    // Background at least 2 rows away from the streak.
    int bg_changed = 0, bg_total = 0;
    for (Eigen::Index t = 0; t < W; ++t)
        for (Eigen::Index k = 0; k < H; ++k) {
            if (std::abs(k - row) <= 2) continue;
            ++bg_total;
            bg_changed += pooled.at(t, k) != rug.at(t, k);
        }

    const RugImage blurred = gaussian_blur(rug, {1.0, 5});
    int near_changed = 0, near_total = 0, blended = 0;
    for (Eigen::Index t = seg0; t < seg0 + seg_len; ++t)
        for (Eigen::Index k = row - 2; k <= row + 2; ++k) {
            ++near_total;
            near_changed += blurred.at(t, k) != rug.at(t, k);
        }
    for (Eigen::Index t = 0; t < W; ++t)
        for (Eigen::Index k = 0; k < H; ++k)
            blended += blurred.at(t, k) != green && blurred.at(t, k) != blue;

    const bool pass = restored >= 19 &&                        // >= 95%
                      bg_changed * 50 <= bg_total &&           // <= 2%
                      near_changed * 2 > near_total &&         // > 50%
                      blended >= 1;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "restored %d/20, background changed %d/%d, blur changed "
                  "%d/%d nearby, %d blended",
                  restored, bg_changed, bg_total, near_changed, near_total,
                  blended);
    report(2, pass, buf);
}

// Criterion 3: visible pooling changes are local to color transitions.
// A pixel counts as changed when some channel moves by more than 3 levels
// (below that is sub-JND quantization dither); a transition is a 4-neighbor
// per-channel difference above 30.
void criterion_3(const RugImage& rug) {
    const Eigen::Index W = rug.width(), H = rug.height();
    Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic> grad(H, W);
    for (Eigen::Index t = 0; t < W; ++t)
        for (Eigen::Index k = 0; k < H; ++k) {
            int g = 0;
            const Rgb8 c = rug.at(t, k);
            if (t > 0) g = std::max(g, linf(c, rug.at(t - 1, k)));
            if (t + 1 < W) g = std::max(g, linf(c, rug.at(t + 1, k)));
            if (k > 0) g = std::max(g, linf(c, rug.at(t, k - 1)));
            if (k + 1 < H) g = std::max(g, linf(c, rug.at(t, k + 1)));
            grad(k, t) = g;
        }
    auto near_transition = [&](Eigen::Index t, Eigen::Index k) {
        for (Eigen::Index dt = -2; dt <= 2; ++dt)
            for (Eigen::Index dk = -2; dk <= 2; ++dk) {
                const Eigen::Index tt = t + dt, kk = k + dk;
                if (tt >= 0 && tt < W && kk >= 0 && kk < H &&
                    grad(kk, tt) > 30)
                    return true;
            }
        return false;
    };

    bool pass = true;
    std::string detail;
    for (const PoolingMatrix m : {PoolingMatrix{3, 1, 0}, PoolingMatrix{5, 3, 1},
                                  PoolingMatrix{7, 3, 1}}) {
        const auto mask = difference_mask(rug, tacs_smooth(rug, m), 3);
        long changed = 0, local = 0;
        for (Eigen::Index t = 0; t < W; ++t)
            for (Eigen::Index k = 0; k < H; ++k)
                if (mask.mask(k, t)) {
                    ++changed;
                    local += near_transition(t, k);
                }
        const double fraction = changed ? double(local) / double(changed) : 1.0;
        pass = pass && fraction >= 0.80;
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%s%.3f (n=%ld)",
                      detail.empty() ? "" : ", ", fraction, changed);
        detail += buf;
    }
    report(3, pass, "near-transition fractions " + detail + ", need >= 0.80");
}

// Criterion 4: pooling only selects existing colors; blurring invents some.
void criterion_4(const RugImage& rug) {
    const PoolingMatrix m{5, 3, 1};
    const RugImage pooled = tacs_smooth(rug, m);
    const RugImage blurred = gaussian_blur(rug, {1.0, 5});
    long pool_hits = 0, total = 0, invented = 0;
    for (Eigen::Index t = 0; t < rug.width(); ++t)
        for (Eigen::Index k = 0; k < rug.height(); ++k) {
            const auto pool = collect_pool(rug, t, k, m);
            ++total;
            pool_hits += std::find(pool.begin(), pool.end(),
                                   pooled.at(t, k)) != pool.end();
            invented += std::find(pool.begin(), pool.end(),
                                  blurred.at(t, k)) == pool.end();
        }
    const bool pass = pool_hits == total && invented >= 1;
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "pooled in-pool %ld/%ld, blur out-of-pool pixels %ld",
                  pool_hits, total, invented);
    report(4, pass, buf);
}

// Criterion 5: metric sanity against identities and a brute-force oracle.
void criterion_5() {
    std::mt19937_64 rng(99);
    auto random_image = [&rng](Eigen::Index w, Eigen::Index h) {
        RugImage img(w, h);
        for (Eigen::Index t = 0; t < w; ++t)
            for (Eigen::Index k = 0; k < h; ++k)
                img.set(t, k, {std::uint8_t(rng()), std::uint8_t(rng()),
                               std::uint8_t(rng())});
        return img;
    };
    bool pass = true;
    for (int i = 0; i < 20; ++i) {
        const RugImage a = random_image(32, 32);
        const RugImage b = random_image(32, 32);
        pass = pass && mse(a, a) == 0.0;
        pass = pass && std::abs(ssim(a, a) - 1.0) <= 1e-12;
        const double r = rmse(a, b), m = mse(a, b);
        pass = pass && std::abs(r * r - m) <= 1e-12 * m;
        pass = pass && mse(a, b) == mse(b, a);
        pass = pass && std::abs(ssim(a, b) - ssim(b, a)) <= 1e-12;

        // Brute-force double-loop MSE oracle.
        double total = 0.0;
        for (Eigen::Index t = 0; t < 32; ++t)
            for (Eigen::Index k = 0; k < 32; ++k) {
                const Rgb8 pa = a.at(t, k), pb = b.at(t, k);
                total += double((pa.r - pb.r) * (pa.r - pb.r)) +
                         double((pa.g - pb.g) * (pa.g - pb.g)) +
                         double((pa.b - pb.b) * (pa.b - pb.b));
            }
        pass = pass && std::abs(m - total / (3.0 * 32 * 32)) <= 1e-9;
    }
    report(5, pass, "identities, symmetry, and oracle agreement on 20 pairs");
}

// Criterion 6: Hilbert bijection/adjacency to order 6, and a locality win
// over plain x-sorting on clustered data.
void criterion_6() {
    bool bijective = true, adjacent = true;
    for (int order = 1; order <= 6 && bijective && adjacent; ++order) {
        const std::uint32_t side = 1u << order;
        std::vector<std::int64_t> cell_of(std::size_t(side) * side, -1);
        for (std::uint32_t r = 0; r < side; ++r)
            for (std::uint32_t c = 0; c < side; ++c) {
                const std::uint64_t idx = hilbert_cell_index(c, r, order);
                if (idx >= cell_of.size() || cell_of[idx] != -1)
                    bijective = false;
                else
                    cell_of[idx] = std::int64_t(r) * side + c;
            }
        for (std::size_t i = 1; i + 0 < cell_of.size() && bijective; ++i) {
            const auto a = cell_of[i - 1], b = cell_of[i];
            const int dr = int(a / side) - int(b / side);
            const int dc = int(a % side) - int(b % side);
            if (std::abs(dr) + std::abs(dc) != 1) adjacent = false;
        }
    }

    double hilbert_total = 0.0, xsort_total = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        std::mt19937_64 rng(seed);
        auto canonical = [&rng]() {
            return double(rng() >> 11) * (1.0 / 9007199254740992.0);
        };
        Dataset d;
        d.frames.resize(1);
        const double cx[4] = {25, 75, 25, 75};
        const double cy[4] = {25, 25, 75, 75};
        for (int i = 0; i < 200; ++i) {
            const int blob = i % 4;
            const double u1 = std::max(canonical(), 1e-12);
            const double u2 = canonical();
            const double mag = 6.0 * std::sqrt(-2.0 * std::log(u1));
            d.frames[0].x.push_back(cx[blob] + mag * std::cos(2 * M_PI * u2));
            d.frames[0].y.push_back(cy[blob] + mag * std::sin(2 * M_PI * u2));
            d.mover_ids.push_back("m" + std::to_string(i));
        }
        d.extent = compute_extent(d);
        hilbert_total +=
            locality_score(d, linearize_dataset(d, HilbertCurve{}));
        xsort_total += locality_score(d, linearize_dataset(d, XSort{}));
    }
    const bool locality = hilbert_total < 0.6 * xsort_total;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "bijection %s, adjacency %s, mean locality %.2f vs 0.6*%.2f",
                  bijective ? "ok" : "broken", adjacent ? "ok" : "broken",
                  hilbert_total / 20.0, xsort_total / 20.0);
    report(6, bijective && adjacent && locality, buf);
}

// Criterion 7: colormap anchor and distinguishability contracts.
void criterion_7() {
    bool pass = true;
    const Colormap2D fc = FourCorner{};
    pass = pass && lookup(fc, 0, 0) == Rgb8{255, 255, 0};
    pass = pass && lookup(fc, 1, 0) == Rgb8{0, 255, 0};
    pass = pass && lookup(fc, 1, 1) == Rgb8{0, 0, 255};
    pass = pass && lookup(fc, 0, 1) == Rgb8{255, 0, 0};
    pass = pass && lookup(fc, 0.5, 0.5) == Rgb8{128, 128, 64};

    const Colormap2D radial = RadialWhiteCenter{};
    pass = pass && lookup(radial, 0.5, 0.5) == Rgb8{255, 255, 255};

    const Colormap2D cube = CubeDiagonalCut{};
    pass = pass && lookup(cube, 0, 0) == Rgb8{0, 0, 255};
    pass = pass && lookup(cube, 1, 0) == Rgb8{0, 255, 255};
    pass = pass && lookup(cube, 1, 1) == Rgb8{255, 255, 0};
    pass = pass && lookup(cube, 0, 1) == Rgb8{255, 0, 0};

    const Colormap2D dark_blend = FourCorner{
        {0, 0, 0}, {40, 40, 40}, {0, 0, 0}, {40, 40, 40}};
    const int jnd_fc = jnd_estimate(fc, 32);
    const int jnd_dark = jnd_estimate(dark_blend, 32);
    pass = pass && jnd_fc > jnd_dark;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "anchors ok, jnd %d > %d", jnd_fc,
                  jnd_dark);
    report(7, pass, buf);
}

// Criterion 8: byte-identical artifacts across two identical runs.
void criterion_8() {
    const fs::path base =
        fs::temp_directory_path() / "srug_acceptance_determinism";
    fs::remove_all(base);
    auto run_once = [&base](const std::string& tag) {
        PipelineConfig c;
        c.boids.mover_count = 60;
        c.boids.frame_count = 150;
        c.boids.rng_seed = 42;
        c.tacs = PoolingMatrix{5, 3, 1};
        c.gauss = GaussianParams{1.0, 5};
        c.feature = "speed";
        c.swatch = true;
        c.output_dir = (base / tag).string();
        return run(c);
    };
    const PipelineResult r1 = run_once("a");
    const PipelineResult r2 = run_once("b");
    bool pass = r1.written.size() == r2.written.size();
    int files = 0;
    for (std::size_t i = 0; pass && i < r1.written.size(); ++i) {
        std::ifstream f1(r1.written[i], std::ios::binary);
        std::ifstream f2(r2.written[i], std::ios::binary);
        const std::string b1((std::istreambuf_iterator<char>(f1)),
                             std::istreambuf_iterator<char>());
        const std::string b2((std::istreambuf_iterator<char>(f2)),
                             std::istreambuf_iterator<char>());
        pass = pass && !b1.empty() && b1 == b2;
        ++files;
    }
    fs::remove_all(base);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%d artifacts byte-identical", files);
    report(8, pass, buf);
}

}  // namespace

int main() {
    const RugImage rug = reference_rug();
    criterion_1(rug);
    criterion_2();
    criterion_3(rug);
    criterion_4(rug);
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    return g_failures;
}

// spatialrugs: dense-pixel rug rendering and smoothing pipeline CLI.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "srug/pipeline.hpp"
#include "srug/png_io.hpp"

namespace {

std::string default_output_dir() {
    const char* env = std::getenv("SRUG_OUTPUT_DIR");
    return env ? env : ".";
}

struct CommonFlags {
    std::string config_file;
    std::map<std::string, std::string> overrides;
};

// Config file first, CLI flags on top: flags win.
void apply_common(srug::PipelineConfig& config, const CommonFlags& flags) {
    if (!flags.config_file.empty())
        srug::apply_config_entries(config,
                                   srug::load_config_file(flags.config_file));
    srug::apply_config_entries(config, flags.overrides);
}

void add_pipeline_options(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_file,
                    "key=value config file; CLI flags override it");
    auto kv = [&flags](const std::string& key) {
        return [&flags, key](const std::string& value) {
            flags.overrides[key] = value;
        };
    };
    cmd->add_option_function<std::string>("--input", kv("input"),
                                          "input CSV (omit to generate boids)");
    cmd->add_option_function<std::string>("--seed", kv("seed"), "boids RNG seed");
    cmd->add_option_function<std::string>("--movers", kv("movers"),
                                          "boids mover count");
    cmd->add_option_function<std::string>("--frames", kv("frames"),
                                          "boids frame count");
    cmd->add_option_function<std::string>("--world-width", kv("world_width"));
    cmd->add_option_function<std::string>("--world-height", kv("world_height"));
    cmd->add_option_function<std::string>(
        "--strategy", kv("strategy"),
        "hilbert[:order] | zorder[:order] | str[:leaf] | xsort");
    cmd->add_option_function<std::string>(
        "--colormap", kv("colormap"),
        "four-corner[:tl:tr:br:bl] | radial-white[:exp] | cube-diagonal");
    cmd->add_option_function<std::string>("--feature", kv("feature"),
                                          "motion-rug feature (e.g. speed)");
    cmd->add_option_function<std::string>("--spatial", kv("spatial"),
                                          "render the spatial rug (true/false)");
    cmd->add_option_function<std::string>("--tacs", kv("tacs"),
                                          "pooling matrix n,f,s");
    cmd->add_option_function<std::string>("--gauss", kv("gauss"),
                                          "gaussian sigma,window");
    cmd->add_option_function<std::string>("--diff-threshold",
                                          kv("diff_threshold"));
    cmd->add_option_function<std::string>("--out-dir", kv("output_dir"),
                                          "output directory");
    cmd->add_option_function<std::string>("--scale", kv("scale"),
                                          "integer pixel upscale");
    cmd->add_option_function<std::string>("--swatch", kv("swatch"),
                                          "also write a colormap swatch");
    cmd->add_option_function<std::string>("--fill", kv("fill"),
                                          "missing-mover policy: none | linear");
    cmd->add_option_function<std::string>("--flip-y", kv("flip_y"),
                                          "negate y for math-convention input");
    cmd->add_option_function<std::string>("--frame-rate", kv("frame_rate"),
                                          "frames per second (speed derivation)");
}

srug::PipelineConfig make_config(const CommonFlags& flags) {
    srug::PipelineConfig config;
    config.output_dir = default_output_dir();
    apply_common(config, flags);
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SpatialRugs / MotionRugs dense-pixel pipeline"};
    app.require_subcommand(1);

    // generate: synthesize a boids dataset as CSV.
    auto* gen = app.add_subcommand("generate", "write a synthetic boids CSV");
    srug::BoidsParams boids;
    std::string gen_out = "boids.csv";
    bool gen_speed = false;
    gen->add_option("--seed", boids.rng_seed);
    gen->add_option("--movers", boids.mover_count);
    gen->add_option("--frames", boids.frame_count);
    gen->add_option("--world-width", boids.world_width);
    gen->add_option("--world-height", boids.world_height);
    gen->add_option("--max-speed", boids.max_speed);
    gen->add_option("--perception-radius", boids.perception_radius);
    gen->add_flag("--with-speed", gen_speed, "include the speed feature");
    gen->add_option("-o,--out", gen_out, "output CSV path");

    // render: the full pipeline (rugs, smoothing, masks, report).
    auto* render = app.add_subcommand(
        "render", "render rugs and requested smoothed variants");
    CommonFlags render_flags;
    add_pipeline_options(render, render_flags);

    // smooth: filter an existing PNG.
    auto* smooth = app.add_subcommand("smooth", "smooth an existing rug PNG");
    std::string smooth_in, smooth_out_dir = default_output_dir();
    std::string smooth_tacs, smooth_gauss;
    int smooth_diff_threshold = 0;
    smooth->add_option("--input", smooth_in, "input PNG")->required();
    smooth->add_option("--tacs", smooth_tacs, "pooling matrix n,f,s");
    smooth->add_option("--gauss", smooth_gauss, "gaussian sigma,window");
    smooth->add_option("--diff-threshold", smooth_diff_threshold);
    smooth->add_option("--out-dir", smooth_out_dir);

    // metrics: compare two PNGs.
    auto* metrics = app.add_subcommand("metrics", "MSE/RMSE/SSIM of two PNGs");
    std::string metrics_a, metrics_b, metrics_out;
    metrics->add_option("reference", metrics_a)->required();
    metrics->add_option("test", metrics_b)->required();
    metrics->add_option("-o,--out", metrics_out, "write report JSON here");

    // compare: TACS vs Gaussian against the same original.
    auto* compare = app.add_subcommand(
        "compare", "TACS vs Gaussian quality table against the original rug");
    CommonFlags compare_flags;
    add_pipeline_options(compare, compare_flags);

    // swatch: colormap legend.
    auto* swatch = app.add_subcommand("swatch", "render a 2D colormap swatch");
    std::string swatch_map = "four-corner", swatch_out = "swatch.png";
    int swatch_size = 256;
    swatch->add_option("--colormap", swatch_map);
    swatch->add_option("--size", swatch_size);
    swatch->add_option("-o,--out", swatch_out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            auto d = srug::generate_boids(boids);
            if (gen_speed) d = srug::derive_speed(d);
            std::ofstream out(gen_out, std::ios::binary);
            if (!out) throw srug::IoError("cannot open '" + gen_out + "'");
            srug::serialize_csv(d, out);
            std::printf("wrote %s (%zu movers x %zu frames)\n",
                        gen_out.c_str(), d.mover_count(), d.frame_count());
        } else if (render->parsed()) {
            const auto result = srug::run(make_config(render_flags));
            for (const auto& path : result.written)
                std::printf("wrote %s\n", path.c_str());
        } else if (smooth->parsed()) {
            if (smooth_tacs.empty() && smooth_gauss.empty())
                throw srug::ConfigError("need --tacs and/or --gauss");
            const auto img = srug::read_png_file(smooth_in);
            std::map<std::string, std::string> kv;
            if (!smooth_tacs.empty()) kv["tacs"] = smooth_tacs;
            if (!smooth_gauss.empty()) kv["gauss"] = smooth_gauss;
            srug::PipelineConfig params;
            srug::apply_config_entries(params, kv);
            namespace fs = std::filesystem;
            fs::create_directories(smooth_out_dir);
            if (params.tacs) {
                const auto out = srug::tacs_smooth(img, *params.tacs);
                const auto path = (fs::path(smooth_out_dir) / "smoothed_tacs.png").string();
                srug::write_png_file(path, out);
                std::printf("wrote %s\n", path.c_str());
                const auto mask =
                    srug::difference_mask(img, out, smooth_diff_threshold);
                const auto mask_path =
                    (fs::path(smooth_out_dir) / "diff_mask.png").string();
                srug::write_png_file(mask_path, mask.to_image());
                std::printf("wrote %s (changed fraction %.6f)\n",
                            mask_path.c_str(), mask.changed_fraction);
            }
            if (params.gauss) {
                const auto out = srug::gaussian_blur(img, *params.gauss);
                const auto path =
                    (fs::path(smooth_out_dir) / "smoothed_gauss.png").string();
                srug::write_png_file(path, out);
                std::printf("wrote %s\n", path.c_str());
            }
        } else if (metrics->parsed()) {
            const auto a = srug::read_png_file(metrics_a);
            const auto b = srug::read_png_file(metrics_b);
            const auto q = srug::evaluate_quality(a, b);
            std::printf("mse=%.9g rmse=%.9g ssim=%.9g%s\n", q.mse, q.rmse,
                        q.ssim,
                        q.global_window_fallback ? " (global ssim window)"
                                                 : "");
            if (!metrics_out.empty()) {
                std::ofstream out(metrics_out);
                out << "{\n  \"mse\": " << q.mse << ",\n  \"rmse\": " << q.rmse
                    << ",\n  \"ssim\": " << q.ssim << "\n}\n";
            }
        } else if (compare->parsed()) {
            auto config = make_config(compare_flags);
            const bool window_explicit =
                compare_flags.overrides.count("gauss") > 0;
            if (!config.gauss) config.gauss = srug::GaussianParams{1.0, 5};
            const auto report = srug::compare(config, window_explicit);
            std::printf("method,mse,rmse,ssim\n");
            std::printf("TACS,%.9g,%.9g,%.9g\n", report.tacs.mse,
                        report.tacs.rmse, report.tacs.ssim);
            std::printf("Gauss,%.9g,%.9g,%.9g\n", report.gauss.mse,
                        report.gauss.rmse, report.gauss.ssim);
        } else if (swatch->parsed()) {
            srug::write_png_file(
                swatch_out,
                srug::render_swatch(srug::parse_colormap_spec(swatch_map),
                                    swatch_size));
            std::printf("wrote %s\n", swatch_out.c_str());
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

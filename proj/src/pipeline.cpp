#include "srug/pipeline.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "srug/png_io.hpp"

namespace srug {

namespace fs = std::filesystem;
using nlohmann::json;

void PipelineConfig::validate() const {
    if (!spatial_rug && !feature)
        throw ConfigError("nothing to do: request a spatial or a motion rug");
    if (scale < 1) throw ConfigError("scale must be >= 1");
    if (diff_threshold < 0) throw ConfigError("diff_threshold must be >= 0");
    if (tacs) tacs->validate();
    if (gauss) gauss->validate();
    if (input_csv.empty()) boids.validate();
    if ((tacs || gauss) && !spatial_rug)
        throw ConfigError("smoothing requires the spatial rug");
}

std::map<std::string, std::string> load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::map<std::string, std::string> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(line_no) +
                              ": expected key=value");
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string()
                                          : s.substr(a, b - a + 1);
        };
        entries[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return entries;
}

namespace {

LinearizationStrategy parse_strategy_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const std::string arg =
        colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (name == "hilbert")
        return HilbertCurve{arg.empty() ? 9 : std::stoi(arg)};
    if (name == "zorder") return ZOrder{arg.empty() ? 9 : std::stoi(arg)};
    if (name == "str")
        return SpatialIndexTraversal{
            arg.empty() ? std::size_t(8) : std::size_t(std::stoul(arg))};
    if (name == "xsort") return XSort{};
    throw ConfigError("unknown strategy '" + spec + "'");
}

std::string strategy_spec_name(const LinearizationStrategy& s) {
    if (const auto* h = std::get_if<HilbertCurve>(&s))
        return "hilbert:" + std::to_string(h->order);
    if (const auto* z = std::get_if<ZOrder>(&s))
        return "zorder:" + std::to_string(z->order);
    if (const auto* t = std::get_if<SpatialIndexTraversal>(&s))
        return "str:" + std::to_string(t->leaf_capacity);
    return "xsort";
}

std::vector<double> parse_number_list(const std::string& s, std::size_t n,
                                      const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(std::stod(cell));
    if (out.size() != n)
        throw ConfigError(what + " expects " + std::to_string(n) +
                          " comma-separated values, got '" + s + "'");
    return out;
}

bool parse_bool(const std::string& s) {
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw ConfigError("expected boolean, got '" + s + "'");
}

}  // namespace

void apply_config_entries(PipelineConfig& config,
                          const std::map<std::string, std::string>& entries) {
    for (const auto& [key, value] : entries) {
        if (key == "input") config.input_csv = value;
        else if (key == "seed") config.boids.rng_seed = std::stoull(value);
        else if (key == "movers") config.boids.mover_count = std::stoul(value);
        else if (key == "frames") config.boids.frame_count = std::stoul(value);
        else if (key == "world_width") config.boids.world_width = std::stod(value);
        else if (key == "world_height") config.boids.world_height = std::stod(value);
        else if (key == "strategy") config.strategy = parse_strategy_spec(value);
        else if (key == "colormap") config.colormap = parse_colormap_spec(value);
        else if (key == "spatial") config.spatial_rug = parse_bool(value);
        else if (key == "feature") config.feature = value;
        else if (key == "tacs") {
            const auto v = parse_number_list(value, 3, "tacs");
            config.tacs = PoolingMatrix{int(v[0]), int(v[1]), int(v[2])};
        } else if (key == "gauss") {
            const auto v = parse_number_list(value, 2, "gauss");
            config.gauss = GaussianParams{v[0], int(v[1])};
        } else if (key == "diff_threshold") {
            config.diff_threshold = std::stoi(value);
        } else if (key == "output_dir") config.output_dir = value;
        else if (key == "scale") config.scale = std::stoi(value);
        else if (key == "swatch") config.swatch = parse_bool(value);
        else if (key == "swatch_size") config.swatch_size = std::stoi(value);
        else if (key == "fill") {
            if (value == "linear") config.csv.fill = FillPolicy::Linear;
            else if (value == "none") config.csv.fill = FillPolicy::None;
            else throw ConfigError("unknown fill policy '" + value + "'");
        } else if (key == "flip_y") config.csv.flip_y = parse_bool(value);
        else if (key == "frame_rate") config.csv.frame_rate_hz = std::stod(value);
        else throw ConfigError("unknown config key '" + key + "'");
    }
}

std::string fnv1a_hex(const void* data, std::size_t size) {
    const auto* p = static_cast<const std::uint8_t*>(data);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", (unsigned long long)h);
    return buf;
}

std::string fnv1a_hex(const std::string& s) {
    return fnv1a_hex(s.data(), s.size());
}

namespace {

struct RenderedPipeline {
    Dataset dataset;
    LinearOrder order;
    RugImage spatial;  // valid when config.spatial_rug
    std::string input_hash;
};

RenderedPipeline build_spatial(const PipelineConfig& config) {
    RenderedPipeline rp;
    if (!config.input_csv.empty()) {
        rp.dataset = parse_csv_file(config.input_csv, config.csv);
    } else {
        rp.dataset = generate_boids(config.boids);
        rp.dataset.frame_rate_hz = config.csv.frame_rate_hz;
    }
    if (config.feature && !rp.dataset.has_feature(*config.feature)) {
        if (*config.feature == "speed")
            rp.dataset = derive_speed(rp.dataset);
        else
            throw UnknownFeature("feature '" + *config.feature +
                                 "' not present in the input");
    }
    rp.input_hash = fnv1a_hex(serialize_csv_string(rp.dataset));
    rp.order = linearize_dataset(rp.dataset, config.strategy);
    if (config.spatial_rug)
        rp.spatial = render_spatial_rug(
            rp.dataset, rp.order,
            fit_to_extent(config.colormap, rp.dataset.extent));
    return rp;
}

json config_to_json(const PipelineConfig& config) {
    json j;
    j["input"] = config.input_csv.empty() ? "boids" : config.input_csv;
    if (config.input_csv.empty()) {
        j["boids"] = {{"movers", config.boids.mover_count},
                      {"frames", config.boids.frame_count},
                      {"world_width", config.boids.world_width},
                      {"world_height", config.boids.world_height},
                      {"seed", config.boids.rng_seed}};
    }
    j["strategy"] = strategy_spec_name(config.strategy);
    j["colormap"] = colormap_spec_name(config.colormap);
    j["spatial"] = config.spatial_rug;
    if (config.feature) {
        j["feature"] = *config.feature;
        j["feature_inverted"] = config.feature_inverted;
    }
    if (config.tacs)
        j["tacs"] = {{"neighborhood_size", config.tacs->neighborhood_size},
                     {"time_ahead", config.tacs->time_ahead},
                     {"step_size", config.tacs->step_size},
                     {"border", "clip"}};
    if (config.gauss)
        j["gauss"] = {{"sigma", config.gauss->sigma},
                      {"window", config.gauss->window},
                      {"border", "replicate"}};
    j["diff_threshold"] = config.diff_threshold;
    j["scale"] = config.scale;
    return j;
}

class ArtifactWriter {
public:
    explicit ArtifactWriter(const std::string& dir) : dir_(dir) {
        fs::create_directories(dir_);
    }

    std::string write_image(const std::string& name, const RugImage& img,
                            int scale) {
        const auto bytes = encode_png(img, scale);
        return write_bytes(name, bytes.data(), bytes.size());
    }

    std::string write_text(const std::string& name, const std::string& text) {
        return write_bytes(name, text.data(), text.size());
    }

    const std::vector<std::string>& written() const { return written_; }
    const std::map<std::string, std::string>& hashes() const {
        return hashes_;
    }

    void remove_all() {
        for (const auto& path : written_) {
            std::error_code ec;
            fs::remove(path, ec);
        }
    }

private:
    std::string write_bytes(const std::string& name, const void* data,
                            std::size_t size) {
        const std::string path = (fs::path(dir_) / name).string();
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot open '" + path + "' for writing");
        out.write(static_cast<const char*>(data), std::streamsize(size));
        if (!out) throw IoError("write failed for '" + path + "'");
        written_.push_back(path);
        hashes_[name] = fnv1a_hex(data, size);
        return path;
    }

    std::string dir_;
    std::vector<std::string> written_;
    std::map<std::string, std::string> hashes_;
};

}  // namespace

PipelineResult run(const PipelineConfig& config) {
    config.validate();
    ArtifactWriter writer(config.output_dir);
    try {
        const RenderedPipeline rp = build_spatial(config);

        if (config.spatial_rug)
            writer.write_image("spatial_rug.png", rp.spatial, config.scale);

        RugImage tacs_img;
        if (config.tacs) {
            tacs_img = tacs_smooth(rp.spatial, *config.tacs);
            writer.write_image("spatial_rug_tacs.png", tacs_img, config.scale);
        }
        if (config.gauss)
            writer.write_image("spatial_rug_gauss.png",
                               gaussian_blur(rp.spatial, *config.gauss),
                               config.scale);
        if (config.tacs) {
            const auto mask =
                difference_mask(rp.spatial, tacs_img, config.diff_threshold);
            writer.write_image("diff_mask.png", mask.to_image(), config.scale);
        }

        if (config.feature) {
            Colormap1D cm = config.feature_inverted
                                ? config.feature_map.reversed()
                                : config.feature_map;
            const auto motion =
                render_motion_rug(rp.dataset, rp.order, *config.feature, cm);
            if (motion.degenerate_range)
                std::fprintf(stderr,
                             "warning: feature '%s' is constant; rendering "
                             "with the midpoint color\n",
                             config.feature->c_str());
            writer.write_image("motion_rug.png", motion.image, config.scale);
        }

        if (config.swatch)
            writer.write_image("swatch.png",
                               render_swatch(config.colormap,
                                             config.swatch_size),
                               1);

        json report = config_to_json(config);
        report["input_hash"] = rp.input_hash;
        report["frame_count"] = rp.dataset.frame_count();
        report["mover_count"] = rp.dataset.mover_count();
        report["extent"] = {{"min_x", rp.dataset.extent.min_x},
                            {"min_y", rp.dataset.extent.min_y},
                            {"max_x", rp.dataset.extent.max_x},
                            {"max_y", rp.dataset.extent.max_y}};
        report["artifacts"] = writer.hashes();
        writer.write_text("report.json", report.dump(2) + "\n");

        PipelineResult result;
        result.written = writer.written();
        return result;
    } catch (...) {
        writer.remove_all();
        throw;
    }
}

ComparisonReport compare(PipelineConfig config, bool gauss_window_explicit,
                         bool write_files) {
    if (!config.tacs || !config.gauss)
        throw ConfigError("compare needs both --tacs and --gauss parameters");
    config.spatial_rug = true;
    config.validate();
    if (!gauss_window_explicit) {
        // Similar reference area: match the Gaussian window to the pool
        // footprint.
        int w = std::max(config.tacs->neighborhood_size,
                         2 * config.tacs->time_ahead + 1);
        if (w % 2 == 0) ++w;
        config.gauss->window = std::max(w, 3);
    }

    const RenderedPipeline rp = build_spatial(config);
    const RugImage tacs_img = tacs_smooth(rp.spatial, *config.tacs);
    const RugImage gauss_img = gaussian_blur(rp.spatial, *config.gauss);

    ComparisonReport report;
    report.tacs = evaluate_quality(rp.spatial, tacs_img);
    report.gauss = evaluate_quality(rp.spatial, gauss_img);
    report.tacs_params = *config.tacs;
    report.gauss_params = *config.gauss;

    if (write_files) {
        ArtifactWriter writer(config.output_dir);
        char csv[512];
        std::snprintf(csv, sizeof(csv),
                      "method,mse,rmse,ssim\nTACS,%.9g,%.9g,%.9g\n"
                      "Gauss,%.9g,%.9g,%.9g\n",
                      report.tacs.mse, report.tacs.rmse, report.tacs.ssim,
                      report.gauss.mse, report.gauss.rmse, report.gauss.ssim);
        writer.write_text("compare.csv", csv);

        auto metrics_json = [](const QualityReport& q) {
            return json{{"mse", q.mse},
                        {"rmse", q.rmse},
                        {"ssim", q.ssim},
                        {"ssim_window", q.params.window},
                        {"ssim_sigma", q.params.sigma},
                        {"global_window_fallback", q.global_window_fallback}};
        };
        json j = config_to_json(config);
        j["input_hash"] = rp.input_hash;
        j["tacs_metrics"] = metrics_json(report.tacs);
        j["gauss_metrics"] = metrics_json(report.gauss);
        writer.write_text("compare.json", j.dump(2) + "\n");
    }
    return report;
}

}  // namespace srug

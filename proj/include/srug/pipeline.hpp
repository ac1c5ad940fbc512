// End-to-end orchestration: generate/ingest -> linearize -> render ->
// smooth -> measure -> report.

#ifndef SRUG_PIPELINE_HPP
#define SRUG_PIPELINE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "srug/colormap2d.hpp"
#include "srug/dataset.hpp"
#include "srug/linearize.hpp"
#include "srug/metrics.hpp"
#include "srug/rug.hpp"
#include "srug/smooth.hpp"

namespace srug {

struct PipelineConfig {
    // Input: a CSV path, or boids parameters when empty.
    std::string input_csv;
    BoidsParams boids;
    CsvOptions csv;

    LinearizationStrategy strategy = HilbertCurve{};
    Colormap2D colormap = FourCorner{};

    bool spatial_rug = true;
    // Motion rug: feature name, 1D map, inverted value mapping. The default
    // speed map is blue->white->red with inversion, so fast reads blue.
    std::optional<std::string> feature;
    Colormap1D feature_map = Colormap1D::blue_white_red();
    bool feature_inverted = true;

    std::optional<PoolingMatrix> tacs;
    std::optional<GaussianParams> gauss;
    int diff_threshold = 0;

    std::string output_dir = ".";
    int scale = 1;
    bool swatch = false;
    int swatch_size = 256;

    void validate() const;
};

/// Parses a flat key=value config file ('#' comments, blank lines ignored).
std::map<std::string, std::string> load_config_file(const std::string& path);

/// Applies key=value settings onto a config. Unknown keys are errors.
void apply_config_entries(PipelineConfig& config,
                          const std::map<std::string, std::string>& entries);

struct PipelineResult {
    std::vector<std::string> written;  // paths, in write order
};

/// Runs the full pipeline and writes the requested artifacts plus a
/// report.json sidecar. Partial outputs are removed on failure.
PipelineResult run(const PipelineConfig& config);

struct ComparisonReport {
    QualityReport tacs;
    QualityReport gauss;
    PoolingMatrix tacs_params;
    GaussianParams gauss_params;
};

/// Smooths the same spatial rug with TACS and Gaussian blur, measures both
/// against the original, and writes compare.csv / compare.json. Unless the
/// Gaussian window was set explicitly, it is matched to the TACS reference
/// area: window = max(neighborhood_size, 2*time_ahead+1).
ComparisonReport compare(PipelineConfig config, bool gauss_window_explicit,
                         bool write_files = true);

/// FNV-1a 64 over bytes, as fixed-width hex. Used for provenance hashes.
std::string fnv1a_hex(const void* data, std::size_t size);
std::string fnv1a_hex(const std::string& s);

}  // namespace srug

#endif  // SRUG_PIPELINE_HPP

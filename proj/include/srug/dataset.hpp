// Collective-movement dataset: ingestion, synthesis, derived features.

#ifndef SRUG_DATASET_HPP
#define SRUG_DATASET_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "srug/types.hpp"

namespace srug {

/// One mover in one frame.
struct MoverRecord {
    std::int64_t frame = 0;
    std::string mover_id;
    double x = 0.0;
    double y = 0.0;
    std::map<std::string, double> features;
};

/// Dense panel of frames: every frame holds every mover, indices 0..N-1.
/// Positions and features are stored per frame in canonical mover order.
struct Dataset {
    struct Frame {
        std::vector<double> x;  // indexed by canonical mover index
        std::vector<double> y;
        std::map<std::string, std::vector<double>> features;

        friend bool operator==(const Frame&, const Frame&) = default;
    };

    std::vector<std::string> mover_ids;  // canonical order
    std::vector<Frame> frames;
    BoundingBox extent;
    double frame_rate_hz = 30.0;

    std::size_t mover_count() const { return mover_ids.size(); }
    std::size_t frame_count() const { return frames.size(); }
    bool has_feature(const std::string& name) const;

    friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// Column-name mapping for CSV ingestion. Feature columns are optional.
struct CsvSchema {
    std::string frame = "frame";
    std::string id = "id";
    std::string x = "x";
    std::string y = "y";
    std::vector<std::string> feature_columns;  // empty = all remaining columns
};

enum class FillPolicy {
    None,    // a mover missing from any frame is a RaggedPanel error
    Linear,  // interior gaps interpolated linearly, ends held constant
};

struct CsvOptions {
    CsvSchema schema;
    FillPolicy fill = FillPolicy::None;
    bool flip_y = false;  // negate y for math-convention inputs
    double frame_rate_hz = 30.0;
};

/// Parses CSV text into a dense-panel dataset. Rows may arrive in any order;
/// distinct frame values are compacted to consecutive indices starting at 0.
Dataset parse_csv(std::istream& in, const CsvOptions& opts = {});
Dataset parse_csv_string(const std::string& text, const CsvOptions& opts = {});
Dataset parse_csv_file(const std::string& path, const CsvOptions& opts = {});

/// Emits `frame,id,x,y[,feature...]` with frames in order, movers in
/// canonical order, floats at 9 significant digits.
void serialize_csv(const Dataset& d, std::ostream& out);
std::string serialize_csv_string(const Dataset& d);

/// Tight bounding box over all positions; a degenerate axis is inflated by
/// 0.5 world units on each side.
BoundingBox compute_extent(const Dataset& d);

/// Parameters for the synthetic flocking generator.
struct BoidsParams {
    std::size_t mover_count = 151;
    std::size_t frame_count = 1000;
    double world_width = 100.0;
    double world_height = 100.0;
    // Defaults produce a handful of tight schools roaming the world, the
    // regime the reference footage shows.
    double cohesion_weight = 0.4;
    double separation_weight = 0.002;
    double alignment_weight = 0.8;
    double perception_radius = 8.0;
    double max_speed = 1.5;
    std::uint64_t rng_seed = 0;

    void validate() const;
};

/// Classic three-rule flocking model with reflective walls. Deterministic:
/// a fixed seed yields bit-identical positions on every run and platform.
Dataset generate_boids(const BoidsParams& p);

/// Adds feature "speed" = displacement to the previous frame times the frame
/// rate. Frame 0 copies frame 1 so the feature is total.
Dataset derive_speed(const Dataset& d);

}  // namespace srug

#endif  // SRUG_DATASET_HPP

// Dense-pixel rug images: SpatialRugs (position color) and MotionRugs
// (feature color).

#ifndef SRUG_RUG_HPP
#define SRUG_RUG_HPP

#include <Eigen/Core>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "srug/colormap2d.hpp"
#include "srug/dataset.hpp"
#include "srug/linearize.hpp"
#include "srug/types.hpp"

namespace srug {

using ChannelPlane =
    Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

/// W x H RGB raster stored as three channel planes, (row k, column t).
/// Columns are time frames, rows are rank positions, row 0 on top.
struct RugImage {
    ChannelPlane r, g, b;

    RugImage() = default;
    RugImage(Eigen::Index width, Eigen::Index height, Rgb8 fill = {});

    Eigen::Index width() const { return r.cols(); }
    Eigen::Index height() const { return r.rows(); }

    Rgb8 at(Eigen::Index t, Eigen::Index k) const {
        return Rgb8{r(k, t), g(k, t), b(k, t)};
    }
    void set(Eigen::Index t, Eigen::Index k, Rgb8 c) {
        r(k, t) = c.r;
        g(k, t) = c.g;
        b(k, t) = c.b;
    }

    /// Columns [t0, t1) as a new image.
    RugImage slice_columns(Eigen::Index t0, Eigen::Index t1) const;

    friend bool operator==(const RugImage&, const RugImage&) = default;
};

/// Piecewise-linear 1D colormap; stop positions strictly increase from 0
/// to 1.
struct Colormap1D {
    std::vector<std::pair<double, Rgb8>> stops;

    void validate() const;
    Rgb8 sample(double t) const;  // t clamped to [0,1]

    /// Same stops traversed backwards: sample(t) of the result equals
    /// sample(1-t) of the original.
    Colormap1D reversed() const;

    /// blue(0) -> white(0.5) -> red(1).
    static Colormap1D blue_white_red();
};

/// Pixel (t,k) takes the color of the mover ranked k at frame t.
RugImage render_spatial_rug(const Dataset& d, const LinearOrder& lo,
                            const PositionColorizer& pc);

struct MotionRugResult {
    RugImage image;
    bool degenerate_range = false;  // all feature values equal under auto
};

/// Feature values are normalized to [0,1] over `range` (or the global
/// min/max when absent) and mapped through the 1D colormap.
MotionRugResult render_motion_rug(
    const Dataset& d, const LinearOrder& lo, const std::string& feature,
    const Colormap1D& cm,
    std::optional<std::pair<double, double>> range = std::nullopt);

/// N x N swatch of a 2D colormap (legend image).
RugImage render_swatch(const Colormap2D& cm, Eigen::Index size);

}  // namespace srug

#endif  // SRUG_RUG_HPP

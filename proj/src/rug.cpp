#include "srug/rug.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace srug {

RugImage::RugImage(Eigen::Index width, Eigen::Index height, Rgb8 fill) {
    if (width < 1 || height < 1)
        throw ShapeMismatch("RugImage dimensions must be >= 1");
    r = ChannelPlane::Constant(height, width, fill.r);
    g = ChannelPlane::Constant(height, width, fill.g);
    b = ChannelPlane::Constant(height, width, fill.b);
}

RugImage RugImage::slice_columns(Eigen::Index t0, Eigen::Index t1) const {
    if (t0 < 0 || t1 > width() || t0 >= t1)
        throw ShapeMismatch("bad column slice");
    RugImage out;
    out.r = r.middleCols(t0, t1 - t0);
    out.g = g.middleCols(t0, t1 - t0);
    out.b = b.middleCols(t0, t1 - t0);
    return out;
}

void Colormap1D::validate() const {
    if (stops.size() < 2) throw ConfigError("Colormap1D needs >= 2 stops");
    if (stops.front().first != 0.0 || stops.back().first != 1.0)
        throw ConfigError("Colormap1D stops must span [0,1]");
    for (std::size_t i = 1; i < stops.size(); ++i)
        if (!(stops[i].first > stops[i - 1].first))
            throw ConfigError("Colormap1D stop positions must increase");
}

Rgb8 Colormap1D::sample(double t) const {
    t = std::clamp(t, 0.0, 1.0);
    std::size_t i = 1;
    while (i + 1 < stops.size() && t > stops[i].first) ++i;
    const auto& [p0, c0] = stops[i - 1];
    const auto& [p1, c1] = stops[i];
    const double w = (t - p0) / (p1 - p0);
    return Rgb8{to_channel(c0.r + w * (double(c1.r) - c0.r)),
                to_channel(c0.g + w * (double(c1.g) - c0.g)),
                to_channel(c0.b + w * (double(c1.b) - c0.b))};
}

Colormap1D Colormap1D::reversed() const {
    Colormap1D out;
    out.stops.reserve(stops.size());
    for (auto it = stops.rbegin(); it != stops.rend(); ++it)
        out.stops.emplace_back(1.0 - it->first, it->second);
    return out;
}

Colormap1D Colormap1D::blue_white_red() {
    return Colormap1D{{{0.0, Rgb8{0, 0, 255}},
                       {0.5, Rgb8{255, 255, 255}},
                       {1.0, Rgb8{255, 0, 0}}}};
}

RugImage render_spatial_rug(const Dataset& d, const LinearOrder& lo,
                            const PositionColorizer& pc) {
    const auto w = Eigen::Index(d.frame_count());
    const auto h = Eigen::Index(d.mover_count());
    if (Eigen::Index(lo.ranks.size()) != w)
        throw ShapeMismatch("linear order does not match dataset frames");
    if (pc.extent != d.extent)
        throw ShapeMismatch("colorizer extent does not match dataset extent");
    RugImage img(w, h);
    for (Eigen::Index t = 0; t < w; ++t) {
        const auto& perm = lo.ranks[t];
        if (Eigen::Index(perm.size()) != h)
            throw ShapeMismatch("permutation size mismatch at frame " +
                                std::to_string(t));
        const auto& fr = d.frames[t];
        for (Eigen::Index k = 0; k < h; ++k) {
            const std::size_t m = perm[k];
            img.set(t, k, pc.colorize(fr.x[m], fr.y[m]));
        }
    }
    return img;
}

MotionRugResult render_motion_rug(
    const Dataset& d, const LinearOrder& lo, const std::string& feature,
    const Colormap1D& cm, std::optional<std::pair<double, double>> range) {
    cm.validate();
    if (!d.has_feature(feature))
        throw UnknownFeature("feature '" + feature + "' not present");
    const auto w = Eigen::Index(d.frame_count());
    const auto h = Eigen::Index(d.mover_count());
    if (Eigen::Index(lo.ranks.size()) != w)
        throw ShapeMismatch("linear order does not match dataset frames");

    double lo_val, hi_val;
    MotionRugResult out;
    if (range) {
        lo_val = range->first;
        hi_val = range->second;
        if (!(hi_val > lo_val))
            throw ConfigError("explicit feature range must have hi > lo");
    } else {
        lo_val = std::numeric_limits<double>::infinity();
        hi_val = -lo_val;
        for (const auto& fr : d.frames) {
            const auto& vals = fr.features.at(feature);
            for (double v : vals) {
                lo_val = std::min(lo_val, v);
                hi_val = std::max(hi_val, v);
            }
        }
        if (lo_val == hi_val) out.degenerate_range = true;
    }

    out.image = RugImage(w, h);
    for (Eigen::Index t = 0; t < w; ++t) {
        const auto& perm = lo.ranks[t];
        const auto& vals = d.frames[t].features.at(feature);
        for (Eigen::Index k = 0; k < h; ++k) {
            double s = out.degenerate_range
                           ? 0.5
                           : (vals[perm[k]] - lo_val) / (hi_val - lo_val);
            out.image.set(t, k, cm.sample(s));
        }
    }
    return out;
}

RugImage render_swatch(const Colormap2D& cm, Eigen::Index size) {
    if (size < 2) throw ConfigError("swatch size must be >= 2");
    RugImage img(size, size);
    for (Eigen::Index row = 0; row < size; ++row)
        for (Eigen::Index col = 0; col < size; ++col)
            img.set(col, row,
                    lookup(cm, double(col) / double(size - 1),
                           double(row) / double(size - 1)));
    return img;
}

}  // namespace srug

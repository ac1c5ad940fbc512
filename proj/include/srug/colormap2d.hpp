// Bivariate colormaps: construction, extent fitting, quality measures.

#ifndef SRUG_COLORMAP2D_HPP
#define SRUG_COLORMAP2D_HPP

#include <string>
#include <utility>
#include <variant>

#include "srug/types.hpp"

namespace srug {

// Corner conventions: u is horizontal (0 = left), v vertical (0 = top).

/// Bilinear blend of four corner colors. Defaults follow the R-B-G-Y
/// four-corner layout: green top-right, blue bottom-right, red bottom-left,
/// yellow top-left.
struct FourCorner {
    Rgb8 tl{255, 255, 0};
    Rgb8 tr{0, 255, 0};
    Rgb8 br{0, 0, 255};
    Rgb8 bl{255, 0, 0};
};

/// Hue varies with the angle around the center, saturation with the distance
/// from it; the center itself is white.
struct RadialWhiteCenter {
    double saturation_exponent = 1.0;
};

/// Planar cut through the RGB cube along the B-C-Y-R cycle, realized as a
/// bilinear blend of the four cycle anchors. An approximation: the cited
/// construction has no published closed form.
struct CubeDiagonalCut {
    Rgb8 tl{0, 0, 255};
    Rgb8 tr{0, 255, 255};
    Rgb8 br{255, 255, 0};
    Rgb8 bl{255, 0, 0};
};

using Colormap2D = std::variant<FourCorner, RadialWhiteCenter, CubeDiagonalCut>;

/// Color at normalized coordinates; u and v are clamped to [0,1].
Rgb8 lookup(const Colormap2D& cm, double u, double v);

/// Colormap fitted to a world-space extent; an anisotropic stretch, aspect
/// ratio is deliberately not preserved.
struct PositionColorizer {
    Colormap2D colormap;
    BoundingBox extent;

    /// Maps a world position through the extent to the colormap. Positions
    /// outside the extent by more than 1e-9 (relative to the extent size)
    /// are rejected; smaller violations are clamped.
    Rgb8 colorize(double x, double y) const;
};

PositionColorizer fit_to_extent(const Colormap2D& cm, const BoundingBox& extent);

/// CIELAB coordinates (D65, standard sRGB transfer).
struct Lab {
    double L = 0, a = 0, b = 0;
};

Lab srgb_to_lab(Rgb8 c);
double delta_e_ab(const Lab& p, const Lab& q);

/// Greedy count of mutually just-noticeably-different colors over a
/// grid_resolution^2 sample of the map. Approximates the survey JND measure.
int jnd_estimate(const Colormap2D& cm, int grid_resolution = 32,
                 double delta_e_threshold = 2.3);

/// Minimum CIELAB distance from any grid sample to pure black and pure white.
std::pair<double, double> black_white_distance(const Colormap2D& cm,
                                               int grid_resolution = 32);

/// Parses a colormap spec string: "four-corner", "radial-white",
/// "cube-diagonal", optionally with ":" parameters (corner colors as
/// rrggbb hex, or the radial exponent).
Colormap2D parse_colormap_spec(const std::string& spec);
std::string colormap_spec_name(const Colormap2D& cm);

}  // namespace srug

#endif  // SRUG_COLORMAP2D_HPP

#include "srug/colormap2d.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace srug {

namespace {

double clamp01(double t) { return std::clamp(t, 0.0, 1.0); }

Rgb8 bilinear(Rgb8 tl, Rgb8 tr, Rgb8 br, Rgb8 bl, double u, double v) {
    auto blend = [&](int ctl, int ctr, int cbr, int cbl) {
        const double top = (1.0 - u) * ctl + u * ctr;
        const double bot = (1.0 - u) * cbl + u * cbr;
        return to_channel((1.0 - v) * top + v * bot);
    };
    return Rgb8{blend(tl.r, tr.r, br.r, bl.r), blend(tl.g, tr.g, br.g, bl.g),
                blend(tl.b, tr.b, br.b, bl.b)};
}

Rgb8 hsv_to_rgb(double hue_deg, double sat, double val) {
    const double c = val * sat;
    const double hp = hue_deg / 60.0;
    const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
    double r = 0, g = 0, b = 0;
    if (hp < 1)      { r = c; g = x; }
    else if (hp < 2) { r = x; g = c; }
    else if (hp < 3) { g = c; b = x; }
    else if (hp < 4) { g = x; b = c; }
    else if (hp < 5) { r = x; b = c; }
    else             { r = c; b = x; }
    const double m = val - c;
    return Rgb8{to_channel(255.0 * (r + m)), to_channel(255.0 * (g + m)),
                to_channel(255.0 * (b + m))};
}

}  // namespace

Rgb8 lookup(const Colormap2D& cm, double u, double v) {
    u = clamp01(u);
    v = clamp01(v);
    if (const auto* fc = std::get_if<FourCorner>(&cm))
        return bilinear(fc->tl, fc->tr, fc->br, fc->bl, u, v);
    if (const auto* cd = std::get_if<CubeDiagonalCut>(&cm))
        return bilinear(cd->tl, cd->tr, cd->br, cd->bl, u, v);
    const auto& rw = std::get<RadialWhiteCenter>(cm);
    const double dx = u - 0.5;
    const double dy = v - 0.5;
    const double dist = std::hypot(dx, dy);
    if (dist == 0.0) return Rgb8{255, 255, 255};
    double hue = std::atan2(-dy, dx) * 180.0 / M_PI;
    if (hue < 0) hue += 360.0;
    if (hue >= 360.0) hue = 0.0;
    const double sat =
        std::min(1.0, std::pow(dist / 0.5, rw.saturation_exponent));
    return hsv_to_rgb(hue, sat, 1.0);
}

Rgb8 PositionColorizer::colorize(double x, double y) const {
    const double tol_x = 1e-9 * extent.width();
    const double tol_y = 1e-9 * extent.height();
    if (x < extent.min_x - tol_x || x > extent.max_x + tol_x ||
        y < extent.min_y - tol_y || y > extent.max_y + tol_y)
        throw PositionOutsideExtent("position (" + std::to_string(x) + "," +
                                    std::to_string(y) + ") outside extent");
    const double u = clamp01((x - extent.min_x) / extent.width());
    const double v = clamp01((y - extent.min_y) / extent.height());
    return lookup(colormap, u, v);
}

PositionColorizer fit_to_extent(const Colormap2D& cm,
                                const BoundingBox& extent) {
    if (!extent.valid()) throw ConfigError("invalid extent");
    return PositionColorizer{cm, extent};
}

namespace {

double srgb_to_linear(double c) {
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double lab_f(double t) {
    constexpr double delta = 6.0 / 29.0;
    return t > delta * delta * delta
               ? std::cbrt(t)
               : t / (3.0 * delta * delta) + 4.0 / 29.0;
}

}  // namespace

Lab srgb_to_lab(Rgb8 c) {
    const double r = srgb_to_linear(c.r / 255.0);
    const double g = srgb_to_linear(c.g / 255.0);
    const double b = srgb_to_linear(c.b / 255.0);
    // sRGB -> XYZ, D65.
    const double x = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b;
    const double y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
    const double z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b;
    constexpr double xn = 0.95047, yn = 1.0, zn = 1.08883;
    const double fx = lab_f(x / xn);
    const double fy = lab_f(y / yn);
    const double fz = lab_f(z / zn);
    return Lab{116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

double delta_e_ab(const Lab& p, const Lab& q) {
    const double dl = p.L - q.L;
    const double da = p.a - q.a;
    const double db = p.b - q.b;
    return std::sqrt(dl * dl + da * da + db * db);
}

namespace {

std::vector<Lab> grid_samples(const Colormap2D& cm, int res) {
    if (res < 2) throw ConfigError("grid_resolution must be >= 2");
    std::vector<Lab> out;
    out.reserve(std::size_t(res) * res);
    for (int row = 0; row < res; ++row)
        for (int col = 0; col < res; ++col)
            out.push_back(srgb_to_lab(lookup(cm, double(col) / (res - 1),
                                             double(row) / (res - 1))));
    return out;
}

}  // namespace

int jnd_estimate(const Colormap2D& cm, int grid_resolution,
                 double delta_e_threshold) {
    if (!(delta_e_threshold > 0))
        throw ConfigError("delta_e_threshold must be positive");
    const auto samples = grid_samples(cm, grid_resolution);
    std::vector<Lab> kept;
    for (const auto& s : samples) {
        bool distinct = true;
        for (const auto& k : kept) {
            if (delta_e_ab(s, k) < delta_e_threshold) {
                distinct = false;
                break;
            }
        }
        if (distinct) kept.push_back(s);
    }
    return int(kept.size());
}

std::pair<double, double> black_white_distance(const Colormap2D& cm,
                                               int grid_resolution) {
    const auto samples = grid_samples(cm, grid_resolution);
    const Lab black = srgb_to_lab(Rgb8{0, 0, 0});
    const Lab white = srgb_to_lab(Rgb8{255, 255, 255});
    double d_black = std::numeric_limits<double>::infinity();
    double d_white = std::numeric_limits<double>::infinity();
    for (const auto& s : samples) {
        d_black = std::min(d_black, delta_e_ab(s, black));
        d_white = std::min(d_white, delta_e_ab(s, white));
    }
    return {d_black, d_white};
}

namespace {

Rgb8 parse_hex_color(const std::string& s) {
    if (s.size() != 6 ||
        s.find_first_not_of("0123456789abcdefABCDEF") != std::string::npos)
        throw ConfigError("bad hex color '" + s + "'");
    const auto v = std::stoul(s, nullptr, 16);
    return Rgb8{std::uint8_t(v >> 16), std::uint8_t((v >> 8) & 0xff),
                std::uint8_t(v & 0xff)};
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

Colormap2D parse_colormap_spec(const std::string& spec) {
    const auto parts = split(spec, ':');
    const std::string& name = parts[0];
    if (name == "four-corner") {
        FourCorner fc;
        if (parts.size() == 5) {
            fc.tl = parse_hex_color(parts[1]);
            fc.tr = parse_hex_color(parts[2]);
            fc.br = parse_hex_color(parts[3]);
            fc.bl = parse_hex_color(parts[4]);
        } else if (parts.size() != 1) {
            throw ConfigError("four-corner takes 0 or 4 corner colors");
        }
        return fc;
    }
    if (name == "radial-white") {
        RadialWhiteCenter rw;
        if (parts.size() == 2) rw.saturation_exponent = std::stod(parts[1]);
        else if (parts.size() != 1)
            throw ConfigError("radial-white takes 0 or 1 parameter");
        if (!(rw.saturation_exponent > 0))
            throw ConfigError("saturation exponent must be positive");
        return rw;
    }
    if (name == "cube-diagonal") {
        CubeDiagonalCut cd;
        if (parts.size() == 5) {
            cd.tl = parse_hex_color(parts[1]);
            cd.tr = parse_hex_color(parts[2]);
            cd.br = parse_hex_color(parts[3]);
            cd.bl = parse_hex_color(parts[4]);
        } else if (parts.size() != 1) {
            throw ConfigError("cube-diagonal takes 0 or 4 corner colors");
        }
        return cd;
    }
    throw ConfigError("unknown colormap '" + name + "'");
}

std::string colormap_spec_name(const Colormap2D& cm) {
    if (std::holds_alternative<FourCorner>(cm)) return "four-corner";
    if (std::holds_alternative<RadialWhiteCenter>(cm)) return "radial-white";
    return "cube-diagonal";
}

}  // namespace srug

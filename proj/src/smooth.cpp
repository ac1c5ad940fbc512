#include "srug/smooth.hpp"

#include <algorithm>
#include <cmath>

namespace srug {

void PoolingMatrix::validate() const {
    if (neighborhood_size < 1 || neighborhood_size % 2 == 0)
        throw ConfigError("neighborhood_size must be an odd integer >= 1");
    if (time_ahead < 0) throw ConfigError("time_ahead must be >= 0");
    if (step_size < 0) throw ConfigError("step_size must be >= 0");
}

int PoolingMatrix::width_at(int offset) const {
    return std::max(1, neighborhood_size - 2 * step_size * offset);
}

void GaussianParams::validate() const {
    if (!(sigma > 0)) throw ConfigError("sigma must be positive");
    if (window < 3 || window % 2 == 0)
        throw ConfigError("window must be an odd integer >= 3");
}

std::vector<Rgb8> collect_pool(const RugImage& img, Eigen::Index t,
                               Eigen::Index k, const PoolingMatrix& m) {
    m.validate();
    if (t < 0 || t >= img.width() || k < 0 || k >= img.height())
        throw ShapeMismatch("pool anchor outside image");
    std::vector<Rgb8> pool;
    pool.reserve(std::size_t(m.neighborhood_size) * (m.time_ahead + 1));
    for (int d = 0; d <= m.time_ahead; ++d) {
        const Eigen::Index col = t + d;
        if (col >= img.width()) break;  // clip, no padding
        const int half = m.width_at(d) / 2;
        const Eigen::Index row0 = std::max<Eigen::Index>(0, k - half);
        const Eigen::Index row1 = std::min<Eigen::Index>(img.height() - 1,
                                                         k + half);
        for (Eigen::Index row = row0; row <= row1; ++row)
            pool.push_back(img.at(col, row));
    }
    return pool;
}

Rgb8 pool_median(const std::vector<Rgb8>& colors) {
    if (colors.empty()) throw ShapeMismatch("empty pool");
    std::vector<Rgb8> sorted = colors;
    // norm2 orders identically to the Euclidean norm and stays exact.
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Rgb8& a, const Rgb8& b) {
                         return a.norm2() < b.norm2();
                     });
    return sorted[(sorted.size() - 1) / 2];
}

RugImage tacs_smooth(const RugImage& img, const PoolingMatrix& m) {
    m.validate();
    RugImage out(img.width(), img.height());
    for (Eigen::Index t = 0; t < img.width(); ++t)
        for (Eigen::Index k = 0; k < img.height(); ++k)
            out.set(t, k, pool_median(collect_pool(img, t, k, m)));
    return out;
}

namespace {

std::vector<double> gaussian_kernel(const GaussianParams& p) {
    const int radius = (p.window - 1) / 2;
    std::vector<double> kernel(p.window);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        const double w = std::exp(-0.5 * (double(i) * i) / (p.sigma * p.sigma));
        kernel[i + radius] = w;
        sum += w;
    }
    for (double& w : kernel) w /= sum;
    return kernel;
}

using PlaneD = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic>;

PlaneD blur_plane(const PlaneD& in, const std::vector<double>& kernel) {
    const auto radius = Eigen::Index(kernel.size() / 2);
    const Eigen::Index h = in.rows(), w = in.cols();
    PlaneD tmp(h, w), out(h, w);
    // Horizontal pass, replicated borders.
    for (Eigen::Index row = 0; row < h; ++row)
        for (Eigen::Index col = 0; col < w; ++col) {
            double acc = 0.0;
            for (Eigen::Index i = -radius; i <= radius; ++i) {
                const Eigen::Index c = std::clamp<Eigen::Index>(col + i, 0,
                                                                w - 1);
                acc += kernel[i + radius] * in(row, c);
            }
            tmp(row, col) = acc;
        }
    // Vertical pass.
    for (Eigen::Index row = 0; row < h; ++row)
        for (Eigen::Index col = 0; col < w; ++col) {
            double acc = 0.0;
            for (Eigen::Index i = -radius; i <= radius; ++i) {
                const Eigen::Index r = std::clamp<Eigen::Index>(row + i, 0,
                                                                h - 1);
                acc += kernel[i + radius] * tmp(r, col);
            }
            out(row, col) = acc;
        }
    return out;
}

}  // namespace

RugImage gaussian_blur(const RugImage& img, const GaussianParams& p) {
    p.validate();
    const auto kernel = gaussian_kernel(p);
    RugImage out(img.width(), img.height());
    const ChannelPlane* src[3] = {&img.r, &img.g, &img.b};
    ChannelPlane* dst[3] = {&out.r, &out.g, &out.b};
    for (int c = 0; c < 3; ++c) {
        const PlaneD blurred = blur_plane(src[c]->cast<double>(), kernel);
        *dst[c] = blurred.unaryExpr(
            [](double v) { return to_channel(v); });
    }
    return out;
}

RugImage DifferenceMask::to_image() const {
    RugImage img(mask.cols(), mask.rows());
    for (Eigen::Index t = 0; t < mask.cols(); ++t)
        for (Eigen::Index k = 0; k < mask.rows(); ++k) {
            const std::uint8_t v = mask(k, t) ? 255 : 0;
            img.set(t, k, Rgb8{v, v, v});
        }
    return img;
}

DifferenceMask difference_mask(const RugImage& a, const RugImage& b,
                               int threshold) {
    if (a.width() != b.width() || a.height() != b.height())
        throw ShapeMismatch("difference_mask: image dimensions differ");
    if (threshold < 0) throw ConfigError("threshold must be >= 0");
    DifferenceMask out;
    out.mask.setZero(a.height(), a.width());
    std::size_t changed = 0;
    for (Eigen::Index t = 0; t < a.width(); ++t)
        for (Eigen::Index k = 0; k < a.height(); ++k) {
            const Rgb8 pa = a.at(t, k), pb = b.at(t, k);
            const int diff = std::max(
                {std::abs(int(pa.r) - int(pb.r)),
                 std::abs(int(pa.g) - int(pb.g)),
                 std::abs(int(pa.b) - int(pb.b))});
            if (diff > threshold) {
                out.mask(k, t) = 1;
                ++changed;
            }
        }
    out.changed_fraction =
        double(changed) / (double(a.width()) * double(a.height()));
    return out;
}

}  // namespace srug

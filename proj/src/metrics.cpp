#include "srug/metrics.hpp"

#include <cmath>
#include <vector>

namespace srug {

namespace {

using PlaneD = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic>;

void check_shapes(const RugImage& a, const RugImage& b) {
    if (a.width() != b.width() || a.height() != b.height())
        throw ShapeMismatch("image dimensions differ");
}

// Separable weighted filter with replicated borders.
PlaneD filter_plane(const PlaneD& in, const std::vector<double>& kernel) {
    const auto radius = Eigen::Index(kernel.size() / 2);
    const Eigen::Index h = in.rows(), w = in.cols();
    PlaneD tmp(h, w), out(h, w);
    for (Eigen::Index row = 0; row < h; ++row)
        for (Eigen::Index col = 0; col < w; ++col) {
            double acc = 0.0;
            for (Eigen::Index i = -radius; i <= radius; ++i)
                acc += kernel[i + radius] *
                       in(row, std::clamp<Eigen::Index>(col + i, 0, w - 1));
            tmp(row, col) = acc;
        }
    for (Eigen::Index row = 0; row < h; ++row)
        for (Eigen::Index col = 0; col < w; ++col) {
            double acc = 0.0;
            for (Eigen::Index i = -radius; i <= radius; ++i)
                acc += kernel[i + radius] *
                       tmp(std::clamp<Eigen::Index>(row + i, 0, h - 1), col);
            out(row, col) = acc;
        }
    return out;
}

std::vector<double> ssim_kernel(const SsimParams& p) {
    const int radius = (p.window - 1) / 2;
    std::vector<double> kernel(p.window);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        const double w = std::exp(-0.5 * double(i) * i / (p.sigma * p.sigma));
        kernel[i + radius] = w;
        sum += w;
    }
    for (double& w : kernel) w /= sum;
    return kernel;
}

double ssim_channel_windowed(const PlaneD& a, const PlaneD& b,
                             const SsimParams& p,
                             const std::vector<double>& kernel) {
    const double c1 = (p.k1 * p.dynamic_range) * (p.k1 * p.dynamic_range);
    const double c2 = (p.k2 * p.dynamic_range) * (p.k2 * p.dynamic_range);
    const PlaneD mu_a = filter_plane(a, kernel);
    const PlaneD mu_b = filter_plane(b, kernel);
    const PlaneD var_a =
        filter_plane(a.cwiseProduct(a), kernel) - mu_a.cwiseProduct(mu_a);
    const PlaneD var_b =
        filter_plane(b.cwiseProduct(b), kernel) - mu_b.cwiseProduct(mu_b);
    const PlaneD cov =
        filter_plane(a.cwiseProduct(b), kernel) - mu_a.cwiseProduct(mu_b);

    double total = 0.0;
    for (Eigen::Index row = 0; row < a.rows(); ++row)
        for (Eigen::Index col = 0; col < a.cols(); ++col) {
            const double num =
                (2.0 * mu_a(row, col) * mu_b(row, col) + c1) *
                (2.0 * cov(row, col) + c2);
            const double den =
                (mu_a(row, col) * mu_a(row, col) +
                 mu_b(row, col) * mu_b(row, col) + c1) *
                (var_a(row, col) + var_b(row, col) + c2);
            total += num / den;
        }
    return total / double(a.size());
}

double ssim_channel_global(const PlaneD& a, const PlaneD& b,
                           const SsimParams& p) {
    const double c1 = (p.k1 * p.dynamic_range) * (p.k1 * p.dynamic_range);
    const double c2 = (p.k2 * p.dynamic_range) * (p.k2 * p.dynamic_range);
    const double n = double(a.size());
    const double mu_a = a.sum() / n;
    const double mu_b = b.sum() / n;
    const double var_a = a.cwiseProduct(a).sum() / n - mu_a * mu_a;
    const double var_b = b.cwiseProduct(b).sum() / n - mu_b * mu_b;
    const double cov = a.cwiseProduct(b).sum() / n - mu_a * mu_b;
    return ((2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2)) /
           ((mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2));
}

}  // namespace

double mse(const RugImage& a, const RugImage& b) {
    check_shapes(a, b);
    const PlaneD dr = a.r.cast<double>() - b.r.cast<double>();
    const PlaneD dg = a.g.cast<double>() - b.g.cast<double>();
    const PlaneD db = a.b.cast<double>() - b.b.cast<double>();
    const double total = dr.cwiseProduct(dr).sum() +
                         dg.cwiseProduct(dg).sum() +
                         db.cwiseProduct(db).sum();
    return total / (3.0 * double(a.r.size()));
}

double rmse(const RugImage& a, const RugImage& b) {
    return std::sqrt(mse(a, b));
}

double ssim(const RugImage& a, const RugImage& b, const SsimParams& p,
            bool* used_global_window) {
    check_shapes(a, b);
    if (p.window < 1 || p.window % 2 == 0)
        throw ConfigError("ssim window must be an odd integer >= 1");

    const bool global =
        p.window > a.width() || p.window > a.height();
    if (used_global_window) *used_global_window = global;

    const PlaneD pa[3] = {a.r.cast<double>(), a.g.cast<double>(),
                          a.b.cast<double>()};
    const PlaneD pb[3] = {b.r.cast<double>(), b.g.cast<double>(),
                          b.b.cast<double>()};
    double total = 0.0;
    if (global) {
        for (int c = 0; c < 3; ++c)
            total += ssim_channel_global(pa[c], pb[c], p);
    } else {
        const auto kernel = ssim_kernel(p);
        for (int c = 0; c < 3; ++c)
            total += ssim_channel_windowed(pa[c], pb[c], p, kernel);
    }
    return total / 3.0;
}

QualityReport evaluate_quality(const RugImage& reference, const RugImage& test,
                               const SsimParams& p) {
    QualityReport report;
    report.params = p;
    report.mse = mse(reference, test);
    report.rmse = std::sqrt(report.mse);
    report.ssim = ssim(reference, test, p, &report.global_window_fallback);
    return report;
}

}  // namespace srug

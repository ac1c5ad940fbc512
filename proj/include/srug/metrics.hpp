// Image-distance measures: MSE, RMSE, SSIM.

#ifndef SRUG_METRICS_HPP
#define SRUG_METRICS_HPP

#include "srug/rug.hpp"

namespace srug {

struct SsimParams {
    int window = 11;      // odd; Gaussian-weighted
    double sigma = 1.5;   // window weight spread
    double k1 = 0.01;
    double k2 = 0.03;
    double dynamic_range = 255.0;
};

struct QualityReport {
    double mse = 0.0;
    double rmse = 0.0;
    double ssim = 0.0;
    SsimParams params;
    bool global_window_fallback = false;  // window exceeded image size
};

/// Mean over all pixels and the three channels of squared 8-bit differences.
double mse(const RugImage& a, const RugImage& b);
double rmse(const RugImage& a, const RugImage& b);

/// Standard windowed SSIM, computed per channel on Gaussian-weighted sliding
/// windows with replicated borders, then averaged over windows and channels.
/// Falls back to one global uniform window when the window does not fit.
double ssim(const RugImage& a, const RugImage& b, const SsimParams& p = {},
            bool* used_global_window = nullptr);

QualityReport evaluate_quality(const RugImage& reference, const RugImage& test,
                               const SsimParams& p = {});

}  // namespace srug

#endif  // SRUG_METRICS_HPP

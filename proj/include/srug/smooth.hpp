// Pooling-based time-aware color smoothing (TACS) and the Gaussian-blur
// baseline.

#ifndef SRUG_SMOOTH_HPP
#define SRUG_SMOOTH_HPP

#include <vector>

#include "srug/rug.hpp"

namespace srug {

/// TACS pooling window. At time offset d the window spans
/// w(d) = max(1, neighborhood_size - 2*step_size*d) rows centered on the
/// target row.
struct PoolingMatrix {
    int neighborhood_size = 3;  // odd, >= 1
    int time_ahead = 1;         // future columns included, >= 0
    int step_size = 0;          // vertical shrink per future column, >= 0

    void validate() const;
    int width_at(int offset) const;
};

struct GaussianParams {
    double sigma = 1.0;
    int window = 5;  // odd, >= 3

    void validate() const;
};

/// Colors of the pooling window anchored at (t,k), clipped to the image;
/// order: increasing time offset, then increasing row.
std::vector<Rgb8> collect_pool(const RugImage& img, Eigen::Index t,
                               Eigen::Index k, const PoolingMatrix& m);

/// Lower median under a stable sort by distance from the RGB origin.
/// Always returns one of the input colors.
Rgb8 pool_median(const std::vector<Rgb8>& colors);

/// Replaces every pixel with the median of its pool. All reads come from
/// the input image, so the result does not depend on traversal order.
RugImage tacs_smooth(const RugImage& img, const PoolingMatrix& m);

/// Separable Gaussian with replicated borders; channels accumulate in
/// float and round half-up once at the end.
RugImage gaussian_blur(const RugImage& img, const GaussianParams& p);

struct DifferenceMask {
    Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> mask;
    double changed_fraction = 0.0;

    /// Mask as a black/white image for export.
    RugImage to_image() const;
};

/// mask(t,k) = 1 iff the max per-channel |a-b| exceeds the threshold.
DifferenceMask difference_mask(const RugImage& a, const RugImage& b,
                               int threshold = 0);

}  // namespace srug

#endif  // SRUG_SMOOTH_HPP

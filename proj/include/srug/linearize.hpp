// Spatial linearization: per-frame reduction of 2D positions to a 1D order.

#ifndef SRUG_LINEARIZE_HPP
#define SRUG_LINEARIZE_HPP

#include <cstdint>
#include <variant>
#include <vector>

#include "srug/dataset.hpp"
#include "srug/types.hpp"

namespace srug {

/// Per-frame permutations. ranks[t][k] is the canonical mover index occupying
/// row k at frame t.
struct LinearOrder {
    std::vector<std::vector<std::size_t>> ranks;
};

struct HilbertCurve {
    int order = 9;
};
struct ZOrder {
    int order = 9;
};
struct SpatialIndexTraversal {
    std::size_t leaf_capacity = 8;
};
struct XSort {};

using LinearizationStrategy =
    std::variant<HilbertCurve, ZOrder, SpatialIndexTraversal, XSort>;

/// Visit index of the cell containing (u,v) on the order-k Hilbert curve.
/// The curve starts at the top-left cell and ends at the top-right cell
/// (u = column, v = row, v grows downward). Inputs are clamped to [0,1].
std::uint64_t hilbert_index(double u, double v, int order);

/// Same grid convention, Morton (bit-interleaved) visit index.
std::uint64_t z_index(double u, double v, int order);

/// Cell-level variants for integer grid coordinates in [0, 2^order).
std::uint64_t hilbert_cell_index(std::uint32_t col, std::uint32_t row,
                                 int order);
std::uint64_t z_cell_index(std::uint32_t col, std::uint32_t row, int order);

/// Orders one frame's positions. Positions are normalized to [0,1]^2 via the
/// extent; ties are broken by original index (stable).
std::vector<std::size_t> linearize_frame(const std::vector<double>& x,
                                         const std::vector<double>& y,
                                         const BoundingBox& extent,
                                         const LinearizationStrategy& strategy);

/// Applies linearize_frame to every frame with the dataset-global extent.
LinearOrder linearize_dataset(const Dataset& d,
                              const LinearizationStrategy& strategy);

/// Mean over frames and movers of |rank(m) - rank(nearest neighbor of m)|.
/// Lower is better; 0 is unattainable, 1.0 means neighbors are always in
/// adjacent rows.
double locality_score(const Dataset& d, const LinearOrder& lo);

}  // namespace srug

#endif  // SRUG_LINEARIZE_HPP

#include "srug/linearize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace srug {

namespace {

std::uint32_t grid_cell(double t, int order) {
    const std::uint32_t n = 1u << order;
    if (t <= 0.0) return 0;
    if (t >= 1.0) return n - 1;
    auto c = std::uint32_t(t * double(n));
    return std::min(c, n - 1);
}

void check_order(int order) {
    if (order < 1 || order > 16)
        throw ConfigError("curve order must be in [1,16]");
}

}  // namespace

std::uint64_t hilbert_cell_index(std::uint32_t col, std::uint32_t row,
                                 int order) {
    check_order(order);
    std::uint64_t d = 0;
    std::uint32_t x = col, y = row;
    for (std::uint32_t s = 1u << (order - 1); s > 0; s >>= 1) {
        const std::uint32_t rx = (x & s) ? 1 : 0;
        const std::uint32_t ry = (y & s) ? 1 : 0;
        d += std::uint64_t(s) * s * ((3 * rx) ^ ry);
        if (ry == 0) {
            if (rx == 1) {
                x = s - 1 - x;
                y = s - 1 - y;
            }
            std::swap(x, y);
        }
    }
    return d;
}

std::uint64_t z_cell_index(std::uint32_t col, std::uint32_t row, int order) {
    check_order(order);
    std::uint64_t d = 0;
    for (int bit = 0; bit < order; ++bit) {
        d |= std::uint64_t((col >> bit) & 1u) << (2 * bit);
        d |= std::uint64_t((row >> bit) & 1u) << (2 * bit + 1);
    }
    return d;
}

std::uint64_t hilbert_index(double u, double v, int order) {
    return hilbert_cell_index(grid_cell(u, order), grid_cell(v, order), order);
}

std::uint64_t z_index(double u, double v, int order) {
    return z_cell_index(grid_cell(u, order), grid_cell(v, order), order);
}

std::vector<std::size_t> linearize_frame(
    const std::vector<double>& x, const std::vector<double>& y,
    const BoundingBox& extent, const LinearizationStrategy& strategy) {
    const std::size_t n = x.size();
    if (n == 0 || y.size() != n)
        throw ShapeMismatch("linearize_frame: empty or mismatched positions");

    std::vector<double> u(n), v(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!extent.contains(x[i], y[i]))
            throw PositionOutsideExtent("position outside extent");
        u[i] = (x[i] - extent.min_x) / extent.width();
        v[i] = (y[i] - extent.min_y) / extent.height();
    }

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);

    if (const auto* h = std::get_if<HilbertCurve>(&strategy)) {
        std::vector<std::uint64_t> key(n);
        for (std::size_t i = 0; i < n; ++i)
            key[i] = hilbert_index(u[i], v[i], h->order);
        std::stable_sort(perm.begin(), perm.end(),
                         [&](std::size_t a, std::size_t b) {
                             return key[a] < key[b];
                         });
    } else if (const auto* z = std::get_if<ZOrder>(&strategy)) {
        std::vector<std::uint64_t> key(n);
        for (std::size_t i = 0; i < n; ++i)
            key[i] = z_index(u[i], v[i], z->order);
        std::stable_sort(perm.begin(), perm.end(),
                         [&](std::size_t a, std::size_t b) {
                             return key[a] < key[b];
                         });
    } else if (const auto* str = std::get_if<SpatialIndexTraversal>(&strategy)) {
        if (str->leaf_capacity == 0)
            throw ConfigError("leaf_capacity must be positive");
        // Sort-tile-recursive bulk load: vertical slices by x, leaves by y
        // within a slice, leaf contents by Hilbert key.
        std::stable_sort(perm.begin(), perm.end(),
                         [&](std::size_t a, std::size_t b) {
                             if (u[a] != u[b]) return u[a] < u[b];
                             return v[a] < v[b];
                         });
        const std::size_t leaf = str->leaf_capacity;
        const auto n_leaves = std::size_t(std::ceil(double(n) / double(leaf)));
        const auto n_slices =
            std::size_t(std::ceil(std::sqrt(double(n_leaves))));
        const std::size_t slice_size = n_slices * leaf;
        std::vector<std::size_t> out;
        out.reserve(n);
        for (std::size_t s0 = 0; s0 < n; s0 += slice_size) {
            const std::size_t s1 = std::min(s0 + slice_size, n);
            std::stable_sort(perm.begin() + s0, perm.begin() + s1,
                             [&](std::size_t a, std::size_t b) {
                                 if (v[a] != v[b]) return v[a] < v[b];
                                 return u[a] < u[b];
                             });
            for (std::size_t l0 = s0; l0 < s1; l0 += leaf) {
                const std::size_t l1 = std::min(l0 + leaf, s1);
                std::vector<std::size_t> members(perm.begin() + l0,
                                                 perm.begin() + l1);
                std::stable_sort(members.begin(), members.end(),
                                 [&](std::size_t a, std::size_t b) {
                                     return hilbert_index(u[a], v[a], 9) <
                                            hilbert_index(u[b], v[b], 9);
                                 });
                out.insert(out.end(), members.begin(), members.end());
            }
        }
        perm = std::move(out);
    } else {
        std::stable_sort(perm.begin(), perm.end(),
                         [&](std::size_t a, std::size_t b) {
                             if (u[a] != u[b]) return u[a] < u[b];
                             return v[a] < v[b];
                         });
    }
    return perm;
}

LinearOrder linearize_dataset(const Dataset& d,
                              const LinearizationStrategy& strategy) {
    LinearOrder lo;
    lo.ranks.reserve(d.frame_count());
    for (const auto& fr : d.frames)
        lo.ranks.push_back(linearize_frame(fr.x, fr.y, d.extent, strategy));
    return lo;
}

double locality_score(const Dataset& d, const LinearOrder& lo) {
    if (lo.ranks.size() != d.frame_count())
        throw ShapeMismatch("locality_score: frame count mismatch");
    const std::size_t n = d.mover_count();
    if (n < 2) return 0.0;

    double total = 0.0;
    std::vector<std::size_t> rank_of(n);
    for (std::size_t t = 0; t < d.frame_count(); ++t) {
        const auto& perm = lo.ranks[t];
        if (perm.size() != n)
            throw ShapeMismatch("locality_score: permutation size mismatch");
        for (std::size_t row = 0; row < n; ++row) rank_of[perm[row]] = row;
        const auto& fr = d.frames[t];
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            std::size_t nn = i;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                const double dx = fr.x[j] - fr.x[i];
                const double dy = fr.y[j] - fr.y[i];
                const double dist2 = dx * dx + dy * dy;
                if (dist2 < best) {
                    best = dist2;
                    nn = j;
                }
            }
            total += std::abs(double(rank_of[i]) - double(rank_of[nn]));
        }
    }
    return total / (double(d.frame_count()) * double(n));
}

}  // namespace srug

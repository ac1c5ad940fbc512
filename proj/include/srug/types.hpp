// Core value types shared across the library.

#ifndef SRUG_TYPES_HPP
#define SRUG_TYPES_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace srug {

/// 8-bit RGB color, no alpha.
struct Rgb8 {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const Rgb8&, const Rgb8&) = default;

    /// Squared Euclidean norm of the (r,g,b) vector. Monotone in the norm,
    /// so it is a valid stable-sort key for median pooling.
    int norm2() const {
        return int(r) * int(r) + int(g) * int(g) + int(b) * int(b);
    }
};

/// Axis-aligned bounding box in world units. y grows downward.
struct BoundingBox {
    double min_x = 0.0;
    double min_y = 0.0;
    double max_x = 1.0;
    double max_y = 1.0;

    bool valid() const { return max_x > min_x && max_y > min_y; }
    double width() const { return max_x - min_x; }
    double height() const { return max_y - min_y; }

    bool contains(double x, double y) const {
        return x >= min_x && x <= max_x && y >= min_y && y <= max_y;
    }

    friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

/// Rounds to nearest integer, halves away from zero is NOT used; the fixed
/// convention everywhere in this library is half-up: round(x) = floor(x+0.5).
inline int round_half_up(double x) { return int(std::floor(x + 0.5)); }

inline std::uint8_t to_channel(double x) {
    int v = round_half_up(x);
    if (v < 0) v = 0;
    if (v > 255) v = 255;
    return std::uint8_t(v);
}

// Error hierarchy. Each named failure mode gets its own type so callers and
// tests can catch precisely.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MissingColumn : Error { using Error::Error; };
struct RaggedPanel : Error { using Error::Error; };
struct NonFiniteCoordinate : Error { using Error::Error; };
struct EmptyInput : Error { using Error::Error; };
struct SingleFrame : Error { using Error::Error; };
struct PositionOutsideExtent : Error { using Error::Error; };
struct ShapeMismatch : Error { using Error::Error; };
struct UnknownFeature : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace srug

#endif  // SRUG_TYPES_HPP

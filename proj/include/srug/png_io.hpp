// Minimal deterministic PNG I/O for 8-bit RGB images (zlib-backed).

#ifndef SRUG_PNG_IO_HPP
#define SRUG_PNG_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "srug/rug.hpp"

namespace srug {

/// Encodes an 8-bit RGB PNG, upscaled by an integer factor (each pixel
/// becomes a scale x scale block). Output bytes are deterministic for a
/// fixed input and scale.
std::vector<std::uint8_t> encode_png(const RugImage& img, int scale = 1);

/// Decodes an 8-bit RGB (or RGBA, alpha dropped) non-interlaced PNG.
RugImage decode_png(const std::vector<std::uint8_t>& bytes);

void write_png_file(const std::string& path, const RugImage& img,
                    int scale = 1);
RugImage read_png_file(const std::string& path);

}  // namespace srug

#endif  // SRUG_PNG_IO_HPP

#include "srug/png_io.hpp"

#include <zlib.h>

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iterator>

namespace srug {

namespace {

constexpr std::uint8_t kPngSignature[8] = {0x89, 'P', 'N', 'G',
                                           '\r', '\n', 0x1a, '\n'};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(std::uint8_t(v >> 24));
    out.push_back(std::uint8_t(v >> 16));
    out.push_back(std::uint8_t(v >> 8));
    out.push_back(std::uint8_t(v));
}

std::uint32_t get_u32(const std::uint8_t* p) {
    return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) |
           (std::uint32_t(p[2]) << 8) | std::uint32_t(p[3]);
}

void append_chunk(std::vector<std::uint8_t>& out, const char type[4],
                  const std::vector<std::uint8_t>& data) {
    put_u32(out, std::uint32_t(data.size()));
    const std::size_t crc_start = out.size();
    out.insert(out.end(), type, type + 4);
    out.insert(out.end(), data.begin(), data.end());
    const auto crc = std::uint32_t(
        crc32(0, out.data() + crc_start, uInt(out.size() - crc_start)));
    put_u32(out, crc);
}

std::vector<std::uint8_t> zlib_compress(const std::vector<std::uint8_t>& in) {
    uLongf bound = compressBound(uLong(in.size()));
    std::vector<std::uint8_t> out(bound);
    if (compress2(out.data(), &bound, in.data(), uLong(in.size()),
                  Z_DEFAULT_COMPRESSION) != Z_OK)
        throw IoError("zlib compression failed");
    out.resize(bound);
    return out;
}

std::vector<std::uint8_t> zlib_decompress(const std::uint8_t* data,
                                          std::size_t size,
                                          std::size_t expected) {
    std::vector<std::uint8_t> out(expected);
    uLongf out_len = uLongf(expected);
    if (uncompress(out.data(), &out_len, data, uLong(size)) != Z_OK ||
        out_len != expected)
        throw IoError("zlib decompression failed");
    return out;
}

std::uint8_t paeth(int a, int b, int c) {
    const int p = a + b - c;
    const int pa = std::abs(p - a);
    const int pb = std::abs(p - b);
    const int pc = std::abs(p - c);
    if (pa <= pb && pa <= pc) return std::uint8_t(a);
    if (pb <= pc) return std::uint8_t(b);
    return std::uint8_t(c);
}

}  // namespace

std::vector<std::uint8_t> encode_png(const RugImage& img, int scale) {
    if (scale < 1) throw ConfigError("png scale must be >= 1");
    const auto w = std::size_t(img.width()) * std::size_t(scale);
    const auto h = std::size_t(img.height()) * std::size_t(scale);

    // Filter type 0 on every scanline; determinism over compression ratio.
    std::vector<std::uint8_t> raw;
    raw.reserve(h * (1 + 3 * w));
    for (std::size_t row = 0; row < h; ++row) {
        raw.push_back(0);
        const auto k = Eigen::Index(row / std::size_t(scale));
        for (std::size_t col = 0; col < w; ++col) {
            const auto t = Eigen::Index(col / std::size_t(scale));
            const Rgb8 c = img.at(t, k);
            raw.push_back(c.r);
            raw.push_back(c.g);
            raw.push_back(c.b);
        }
    }

    std::vector<std::uint8_t> out(kPngSignature, kPngSignature + 8);
    std::vector<std::uint8_t> ihdr;
    put_u32(ihdr, std::uint32_t(w));
    put_u32(ihdr, std::uint32_t(h));
    ihdr.push_back(8);   // bit depth
    ihdr.push_back(2);   // color type: truecolor
    ihdr.push_back(0);   // compression
    ihdr.push_back(0);   // filter method
    ihdr.push_back(0);   // no interlace
    append_chunk(out, "IHDR", ihdr);
    append_chunk(out, "IDAT", zlib_compress(raw));
    append_chunk(out, "IEND", {});
    return out;
}

RugImage decode_png(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 8 || std::memcmp(bytes.data(), kPngSignature, 8) != 0)
        throw IoError("not a PNG file");

    std::uint32_t w = 0, h = 0;
    int channels = 0;
    std::vector<std::uint8_t> idat;
    std::size_t pos = 8;
    while (pos + 12 <= bytes.size()) {
        const std::uint32_t len = get_u32(&bytes[pos]);
        const char* type = reinterpret_cast<const char*>(&bytes[pos + 4]);
        const std::uint8_t* data = &bytes[pos + 8];
        if (pos + 12 + len > bytes.size()) throw IoError("truncated PNG");
        if (std::memcmp(type, "IHDR", 4) == 0) {
            w = get_u32(data);
            h = get_u32(data + 4);
            if (data[8] != 8 || data[12] != 0)
                throw IoError("unsupported PNG (need 8-bit non-interlaced)");
            if (data[9] == 2) channels = 3;
            else if (data[9] == 6) channels = 4;
            else throw IoError("unsupported PNG color type");
        } else if (std::memcmp(type, "IDAT", 4) == 0) {
            idat.insert(idat.end(), data, data + len);
        } else if (std::memcmp(type, "IEND", 4) == 0) {
            break;
        }
        pos += 12 + len;
    }
    if (w == 0 || h == 0 || idat.empty()) throw IoError("malformed PNG");

    const std::size_t stride = std::size_t(w) * std::size_t(channels);
    auto raw = zlib_decompress(idat.data(), idat.size(), h * (stride + 1));

    // Undo scanline filters in place (prev = fully reconstructed row above).
    std::vector<std::uint8_t> pixels(h * stride);
    for (std::size_t row = 0; row < h; ++row) {
        const std::uint8_t filter = raw[row * (stride + 1)];
        const std::uint8_t* src = &raw[row * (stride + 1) + 1];
        std::uint8_t* dst = &pixels[row * stride];
        const std::uint8_t* up = row > 0 ? dst - stride : nullptr;
        for (std::size_t i = 0; i < stride; ++i) {
            const int a = i >= std::size_t(channels) ? dst[i - channels] : 0;
            const int b = up ? up[i] : 0;
            const int c =
                (up && i >= std::size_t(channels)) ? up[i - channels] : 0;
            int v = src[i];
            switch (filter) {
                case 0: break;
                case 1: v += a; break;
                case 2: v += b; break;
                case 3: v += (a + b) / 2; break;
                case 4: v += paeth(a, b, c); break;
                default: throw IoError("unknown PNG filter type");
            }
            dst[i] = std::uint8_t(v);
        }
    }

    RugImage img{Eigen::Index(w), Eigen::Index(h)};
    for (std::size_t row = 0; row < h; ++row)
        for (std::size_t col = 0; col < w; ++col) {
            const std::uint8_t* p = &pixels[row * stride + col * channels];
            img.set(Eigen::Index(col), Eigen::Index(row),
                    Rgb8{p[0], p[1], p[2]});
        }
    return img;
}

void write_png_file(const std::string& path, const RugImage& img, int scale) {
    const auto bytes = encode_png(img, scale);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              std::streamsize(bytes.size()));
    if (!out) throw IoError("write failed for '" + path + "'");
}

RugImage read_png_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::vector<std::uint8_t> bytes(
        (std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_png(bytes);
}

}  // namespace srug

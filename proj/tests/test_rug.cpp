#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <vector>

#include "srug/png_io.hpp"
#include "srug/rug.hpp"

using namespace srug;

#ifndef GOLDEN_DIR
#define GOLDEN_DIR "tests/golden"
#endif

namespace {

std::vector<std::uint8_t> read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing file: " << path);
    return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in),
                                     std::istreambuf_iterator<char>());
}

Dataset boids_300() {
    BoidsParams p;
    p.mover_count = 151;
    p.frame_count = 300;
    p.rng_seed = 42;
    return generate_boids(p);
}

}  // namespace

TEST_CASE("RugImage construction and pixel access") {
    RugImage img(4, 3, Rgb8{1, 2, 3});
    CHECK(img.width() == 4);
    CHECK(img.height() == 3);
    CHECK(img.at(0, 0) == Rgb8{1, 2, 3});
    img.set(2, 1, {9, 8, 7});
    CHECK(img.at(2, 1) == Rgb8{9, 8, 7});
    CHECK_THROWS_AS(RugImage(0, 3), ShapeMismatch);
}

TEST_CASE("slice_columns takes a half-open column range") {
    RugImage img(5, 2);
    for (Eigen::Index t = 0; t < 5; ++t)
        for (Eigen::Index k = 0; k < 2; ++k)
            img.set(t, k, {std::uint8_t(t), std::uint8_t(k), 0});
    RugImage s = img.slice_columns(1, 4);
    CHECK(s.width() == 3);
    CHECK(s.height() == 2);
    CHECK(s.at(0, 0) == img.at(1, 0));
    CHECK(s.at(2, 1) == img.at(3, 1));
    CHECK_THROWS_AS(img.slice_columns(3, 2), ShapeMismatch);
    CHECK_THROWS_AS(img.slice_columns(0, 6), ShapeMismatch);
}

TEST_CASE("Colormap1D validation and sampling") {
    Colormap1D bad{{{0.0, {0, 0, 0}}}};
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    Colormap1D unsorted{{{0.0, {0, 0, 0}}, {0.7, {1, 1, 1}}, {0.4, {2, 2, 2}}, {1.0, {3, 3, 3}}}};
    CHECK_THROWS_AS(unsorted.validate(), ConfigError);

    Colormap1D bwr = Colormap1D::blue_white_red();
    CHECK(bwr.sample(0.0) == Rgb8{0, 0, 255});
    CHECK(bwr.sample(0.5) == Rgb8{255, 255, 255});
    CHECK(bwr.sample(1.0) == Rgb8{255, 0, 0});
    CHECK(bwr.sample(-2.0) == bwr.sample(0.0));
    CHECK(bwr.sample(3.0) == bwr.sample(1.0));
    CHECK(bwr.sample(0.25) == Rgb8{128, 128, 255});

    Colormap1D rev = bwr.reversed();
    for (double t : {0.0, 0.1, 0.33, 0.5, 0.77, 1.0})
        CHECK(rev.sample(t) == bwr.sample(1.0 - t));
}

TEST_CASE("spatial rug: stationary mover at the extent's top-right") {
    Dataset d;
    d.mover_ids = {"solo"};
    d.frames.resize(3);
    for (auto& f : d.frames) {
        f.x = {10.0};
        f.y = {0.0};
    }
    d.extent = {0, 0, 10, 10};
    LinearOrder lo = linearize_dataset(d, HilbertCurve{});
    RugImage img =
        render_spatial_rug(d, lo, fit_to_extent(FourCorner{}, d.extent));
    CHECK(img.width() == 3);
    CHECK(img.height() == 1);
    for (Eigen::Index t = 0; t < 3; ++t)
        CHECK(img.at(t, 0) == Rgb8{0, 255, 0});
}

TEST_CASE("spatial rug: coincident movers give constant columns") {
    Dataset d;
    d.mover_ids = {"a", "b", "c"};
    d.frames.resize(4);
    for (std::size_t t = 0; t < 4; ++t) {
        double px = 1.0 + double(t);
        d.frames[t].x = {px, px, px};
        d.frames[t].y = {2.0, 2.0, 2.0};
    }
    d.extent = compute_extent(d);
    LinearOrder lo = linearize_dataset(d, HilbertCurve{});
    RugImage img =
        render_spatial_rug(d, lo, fit_to_extent(FourCorner{}, d.extent));
    for (Eigen::Index t = 0; t < img.width(); ++t) {
        CHECK(img.at(t, 1) == img.at(t, 0));
        CHECK(img.at(t, 2) == img.at(t, 0));
    }
}

TEST_CASE("motion rug normalizes the feature over its global range") {
    Dataset d;
    d.mover_ids = {"slow", "fast"};
    d.frames.resize(3);
    for (std::size_t t = 0; t < 3; ++t) {
        d.frames[t].x = {1.0, 2.0};
        d.frames[t].y = {1.0, 1.0};
        d.frames[t].features["speed"] = {2.0, 8.0};
    }
    d.extent = compute_extent(d);
    LinearOrder lo = linearize_dataset(d, XSort{});
    auto res =
        render_motion_rug(d, lo, "speed", Colormap1D::blue_white_red());
    CHECK_FALSE(res.degenerate_range);
    // Min and max take the first and last stop colors.
    for (Eigen::Index t = 0; t < 3; ++t) {
        CHECK(res.image.at(t, 0) == Rgb8{0, 0, 255});
        CHECK(res.image.at(t, 1) == Rgb8{255, 0, 0});
    }

    CHECK_THROWS_AS(
        render_motion_rug(d, lo, "altitude", Colormap1D::blue_white_red()),
        UnknownFeature);
}

TEST_CASE("motion rug: degenerate range flags and paints the midpoint") {
    Dataset d;
    d.mover_ids = {"a", "b"};
    d.frames.resize(2);
    for (auto& f : d.frames) {
        f.x = {0.0, 1.0};
        f.y = {0.0, 0.0};
        f.features["speed"] = {3.0, 3.0};
    }
    d.extent = compute_extent(d);
    LinearOrder lo = linearize_dataset(d, XSort{});
    auto res =
        render_motion_rug(d, lo, "speed", Colormap1D::blue_white_red());
    CHECK(res.degenerate_range);
    for (Eigen::Index t = 0; t < 2; ++t)
        for (Eigen::Index k = 0; k < 2; ++k)
            CHECK(res.image.at(t, k) == Rgb8{255, 255, 255});
}

TEST_CASE("motion rug honors an explicit range") {
    Dataset d;
    d.mover_ids = {"a"};
    d.frames.resize(2);
    for (auto& f : d.frames) {
        f.x = {0.0};
        f.y = {0.0};
        f.features["speed"] = {5.0};
    }
    d.frames[1].x = {1.0};
    d.extent = compute_extent(d);
    LinearOrder lo = linearize_dataset(d, XSort{});
    auto res = render_motion_rug(d, lo, "speed",
                                 Colormap1D::blue_white_red(),
                                 std::make_pair(0.0, 10.0));
    CHECK_FALSE(res.degenerate_range);
    CHECK(res.image.at(0, 0) == Rgb8{255, 255, 255});  // midpoint of range
}

TEST_CASE("swatch samples the colormap corner to corner") {
    RugImage sw = render_swatch(FourCorner{}, 64);
    CHECK(sw.width() == 64);
    CHECK(sw.height() == 64);
    CHECK(sw.at(0, 0) == Rgb8{255, 255, 0});
    CHECK(sw.at(63, 0) == Rgb8{0, 255, 0});
    CHECK(sw.at(63, 63) == Rgb8{0, 0, 255});
    CHECK(sw.at(0, 63) == Rgb8{255, 0, 0});
}

TEST_CASE("png round trip: single pixel") {
    RugImage img(1, 1, Rgb8{255, 0, 0});
    RugImage back = decode_png(encode_png(img));
    CHECK(back == img);
}

TEST_CASE("png scale replicates pixels into blocks") {
    RugImage img(2, 2);
    img.set(0, 0, {10, 20, 30});
    img.set(1, 0, {40, 50, 60});
    img.set(0, 1, {70, 80, 90});
    img.set(1, 1, {100, 110, 120});
    RugImage big = decode_png(encode_png(img, 4));
    CHECK(big.width() == 8);
    CHECK(big.height() == 8);
    for (Eigen::Index t = 0; t < 8; ++t)
        for (Eigen::Index k = 0; k < 8; ++k)
            CHECK(big.at(t, k) == img.at(t / 4, k / 4));
}

TEST_CASE("png encoding is deterministic") {
    RugImage img(17, 9);
    for (Eigen::Index t = 0; t < 17; ++t)
        for (Eigen::Index k = 0; k < 9; ++k)
            img.set(t, k, {std::uint8_t(t * 13), std::uint8_t(k * 29),
                           std::uint8_t(t + k)});
    CHECK(encode_png(img) == encode_png(img));
    CHECK_THROWS_AS(decode_png({1, 2, 3, 4}), IoError);
}

TEST_CASE("golden image: spatial rug, flocking seed 42") {
    Dataset d = boids_300();
    LinearOrder lo = linearize_dataset(d, HilbertCurve{});
    RugImage img =
        render_spatial_rug(d, lo, fit_to_extent(FourCorner{}, d.extent));
    auto bytes = encode_png(img);
    CHECK(bytes == read_bytes(std::string(GOLDEN_DIR) + "/spatial_rug_seed42_300.png"));
}

TEST_CASE("golden image: motion rug, derived speed, seed 42") {
    Dataset d = derive_speed(boids_300());
    LinearOrder lo = linearize_dataset(d, HilbertCurve{});
    auto res = render_motion_rug(d, lo, "speed",
                                 Colormap1D::blue_white_red().reversed());
    auto bytes = encode_png(res.image);
    CHECK(bytes == read_bytes(std::string(GOLDEN_DIR) + "/motion_rug_seed42_300.png"));
}

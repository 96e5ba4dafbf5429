#include <doctest.h>

#include <random>
#include <stdexcept>

#include "core/image.hpp"
#include "core/rand_util.hpp"
#include "support/fixtures.hpp"

using namespace mwto;

TEST_CASE("normalize_bytes maps bytes onto the unit interval") {
    const uint8_t bytes[6] = {0, 255, 128, 10, 200, 55};
    const ColorImage img = normalize_bytes(std::span<const uint8_t>(bytes, 6), 1, 2);
    CHECK(img.channels[0](0, 0) == 0.0);
    CHECK(img.channels[1](0, 0) == 1.0);
    CHECK(img.channels[2](0, 0) == doctest::Approx(128.0 / 255.0).epsilon(1e-12));
    CHECK(img.channels[0](0, 1) == doctest::Approx(10.0 / 255.0).epsilon(1e-12));
}

TEST_CASE("normalize_bytes rejects mismatched buffers") {
    const std::vector<uint8_t> bytes(11, 0);
    CHECK_THROWS_AS(normalize_bytes(bytes, 2, 2), std::invalid_argument);
}

TEST_CASE("normalize_bytes is monotone in the byte value") {
    for (int b = 0; b < 255; ++b) {
        const uint8_t lo[3] = {static_cast<uint8_t>(b), 0, 0};
        const uint8_t hi[3] = {static_cast<uint8_t>(b + 1), 0, 0};
        CHECK(normalize_bytes(std::span<const uint8_t>(lo, 3), 1, 1).channels[0](0, 0) <
              normalize_bytes(std::span<const uint8_t>(hi, 3), 1, 1).channels[0](0, 0));
    }
}

TEST_CASE("pad_dyadic leaves dyadic sizes alone") {
    std::mt19937_64 rng(7);
    const ColorImage img = fixtures::random_image(rng, 512, 512);
    const auto [padded, box] = pad_dyadic(img, 2);
    CHECK(padded.rows() == 512);
    CHECK(padded.cols() == 512);
    CHECK(box.pad_bottom == 0);
    CHECK(box.pad_right == 0);
}

TEST_CASE("pad_dyadic rounds 707x565 up to 708x568 at two levels") {
    std::mt19937_64 rng(8);
    const ColorImage img = fixtures::random_image(rng, 707, 565);
    const auto [padded, box] = pad_dyadic(img, 2);
    CHECK(padded.rows() == 708);
    CHECK(padded.cols() == 568);
    CHECK(box.orig_rows == 707);
    CHECK(box.orig_cols == 565);
}

TEST_CASE("pad_dyadic mirrors a single pixel into a constant block") {
    ColorImage img;
    for (int c = 0; c < 3; ++c)
        img.channels[c] = Plane(1, 1, 0.25 * (c + 1));
    const auto [padded, box] = pad_dyadic(img, 1);
    CHECK(padded.rows() == 2);
    CHECK(padded.cols() == 2);
    for (int c = 0; c < 3; ++c)
        for (double v : padded.channels[c].values)
            CHECK(v == 0.25 * (c + 1));
}

TEST_CASE("crop inverts pad_dyadic for random sizes") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        const int rows = 1 + static_cast<int>(rng() % 64);
        const int cols = 1 + static_cast<int>(rng() % 64);
        const int levels = 1 + static_cast<int>(rng() % 3);
        const ColorImage img = fixtures::random_image(rng, rows, cols);
        const auto [padded, box] = pad_dyadic(img, levels);
        CHECK(padded.rows() % (1 << levels) == 0);
        CHECK(padded.cols() % (1 << levels) == 0);
        const ColorImage back = crop(padded, box);
        REQUIRE(back.rows() == rows);
        REQUIRE(back.cols() == cols);
        for (int c = 0; c < 3; ++c)
            for (size_t i = 0; i < back.channels[c].size(); ++i)
                CHECK(back.channels[c].values[i] == img.channels[c].values[i]);
    }
}

TEST_CASE("crop with full-size box is the identity") {
    std::mt19937_64 rng(3);
    const ColorImage img = fixtures::random_image(rng, 5, 9);
    const ColorImage out = crop(img, CropBox{5, 9, 0, 0});
    for (int c = 0; c < 3; ++c)
        CHECK(out.channels[c].values == img.channels[c].values);
}

TEST_CASE("crop rejects boxes larger than the image") {
    std::mt19937_64 rng(4);
    const ColorImage img = fixtures::random_image(rng, 4, 4);
    CHECK_THROWS_AS(crop(img, CropBox{5, 4, 0, 0}), std::invalid_argument);
}

TEST_CASE("clamp_unit pins values into [0,1] and is idempotent") {
    Plane p(1, 3);
    p(0, 0) = 1.3;
    p(0, 1) = -0.2;
    p(0, 2) = 0.5;
    const Plane once = clamp_unit(p);
    CHECK(once(0, 0) == 1.0);
    CHECK(once(0, 1) == 0.0);
    CHECK(once(0, 2) == 0.5);
    const Plane twice = clamp_unit(once);
    CHECK(twice.values == once.values);
}

TEST_CASE("quantize_plane rounds and clamps") {
    Plane p(1, 4);
    p(0, 0) = 0.0;
    p(0, 1) = 1.0;
    p(0, 2) = 0.5;
    p(0, 3) = 2.0;
    const auto bytes = quantize_plane(p);
    CHECK(bytes[0] == 0);
    CHECK(bytes[1] == 255);
    CHECK(bytes[2] == 128);
    CHECK(bytes[3] == 255);
}

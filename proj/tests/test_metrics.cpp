#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "core/haze_sim.hpp"
#include "core/metrics.hpp"
#include "core/pipeline.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace mwto;

namespace {

ColorImage constant_image(int rows, int cols, double v) {
    return ColorImage{{Plane(rows, cols, v), Plane(rows, cols, v), Plane(rows, cols, v)}};
}

} // namespace

TEST_CASE("mse of simple pairs") {
    std::mt19937_64 rng(71);
    const ColorImage img = fixtures::random_image(rng, 6, 6);
    CHECK(mse(img, img) == 0.0);
    CHECK(mse(constant_image(4, 4, 0.0), constant_image(4, 4, 1.0)) == 1.0);

    // Half the pixels differ by 0.5 in every channel.
    ColorImage left = constant_image(4, 4, 0.2);
    ColorImage right = left;
    for (int c = 0; c < 3; ++c)
        for (int r = 0; r < 4; ++r)
            for (int cc = 0; cc < 2; ++cc)
                right.channels[c](r, cc) = 0.7;
    CHECK(mse(left, right) == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("mse is symmetric, non-negative, zero only on identical images") {
    std::mt19937_64 rng(72);
    const ColorImage a = fixtures::random_image(rng, 5, 5);
    const ColorImage b = fixtures::random_image(rng, 5, 5);
    CHECK(mse(a, b) == mse(b, a));
    CHECK(mse(a, b) > 0.0);
    CHECK_THROWS_AS(mse(a, fixtures::random_image(rng, 5, 6)), std::invalid_argument);
}

TEST_CASE("psnr follows the mse") {
    ColorImage ref = constant_image(4, 4, 0.5);
    ColorImage off = constant_image(4, 4, 0.6);
    CHECK(psnr(ref, off) == doctest::Approx(20.0).epsilon(1e-9)); // mse = 0.01
    CHECK(psnr(ref, ref) == std::numeric_limits<double>::infinity());
    CHECK(psnr(constant_image(4, 4, 0.0), constant_image(4, 4, 1.0)) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("ssim of an image with itself is 1") {
    std::mt19937_64 rng(73);
    const ColorImage img = fixtures::random_image(rng, 16, 16);
    CHECK(ssim(img, img) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ssim on constant patches matches the closed form") {
    const double c = 0.5;
    const double shifted = 0.6;
    const ColorImage a = constant_image(12, 12, c);
    const ColorImage b = constant_image(12, 12, shifted);
    // Variances vanish, so only the luminance term survives.
    const double expected =
        (2.0 * c * shifted + 1e-4) / (c * c + shifted * shifted + 1e-4);
    CHECK(ssim(a, b) == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("ssim against the negative of a texture is low") {
    std::mt19937_64 rng(74);
    ColorImage img;
    for (auto& ch : img.channels)
        ch = fixtures::random_plane(rng, 16, 16, 0.2, 0.8);
    ColorImage negative = img;
    for (auto& ch : negative.channels)
        for (double& v : ch.values)
            v = 1.0 - v;
    const double score = ssim(img, negative);
    CHECK(score < 0.5);
    CHECK(score == doctest::Approx(oracles::ssim_reference(img, negative)).epsilon(1e-9));
}

TEST_CASE("ssim agrees with the filter-based reference on random images") {
    std::mt19937_64 rng(75);
    for (int trial = 0; trial < 5; ++trial) {
        const ColorImage a = fixtures::random_image(rng, 14, 18);
        const ColorImage b = fixtures::random_image(rng, 14, 18);
        CHECK(ssim(a, b) == doctest::Approx(oracles::ssim_reference(a, b)).epsilon(1e-9));
    }
}

TEST_CASE("ssim rejects images smaller than its window") {
    CHECK_THROWS_AS(ssim(constant_image(10, 12, 0.5), constant_image(10, 12, 0.5)),
                    std::invalid_argument);
}

TEST_CASE("an image against itself has neutral visibility descriptors") {
    std::mt19937_64 rng(76);
    const ColorImage img = fixtures::block_scene(rng, 16, 16, 4);
    const VisibilityReport rep = hautiere(img, img);
    CHECK(rep.e == 0.0);
    CHECK(rep.sigma == 0.0);
    CHECK(rep.rbar == 1.0);
}

TEST_CASE("doubling contrast doubles the gradient gain") {
    std::mt19937_64 rng(77);
    ColorImage img;
    for (auto& ch : img.channels)
        ch = fixtures::random_plane(rng, 16, 16, 0.05, 0.45);
    ColorImage doubled = img;
    for (auto& ch : doubled.channels)
        for (double& v : ch.values)
            v *= 2.0;
    const VisibilityReport rep = hautiere(img, doubled);
    CHECK(rep.rbar == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(rep.e >= 0.0);
    CHECK(rep.sigma == 0.0);
}

TEST_CASE("a fully black restoration saturates every pixel") {
    std::mt19937_64 rng(78);
    ColorImage img;
    for (auto& ch : img.channels)
        ch = fixtures::random_plane(rng, 8, 8, 0.1, 0.9);
    const VisibilityReport rep = hautiere(img, constant_image(8, 8, 0.0));
    CHECK(rep.sigma == 1.0);
}

TEST_CASE("visibility descriptors are channel-symmetric") {
    std::mt19937_64 rng(79);
    const ColorImage hazy = fixtures::block_scene(rng, 16, 16, 4);
    ColorImage restored = hazy;
    for (auto& ch : restored.channels)
        for (double& v : ch.values)
            v = std::min(1.0, v * 1.3);

    ColorImage hazy_swapped{{hazy.channels[1], hazy.channels[2], hazy.channels[0]}};
    ColorImage restored_swapped{
        {restored.channels[1], restored.channels[2], restored.channels[0]}};

    const VisibilityReport a = hautiere(hazy, restored);
    const VisibilityReport b = hautiere(hazy_swapped, restored_swapped);
    CHECK(a.e == b.e);
    CHECK(a.sigma == b.sigma);
    CHECK(a.rbar == b.rbar);
}

TEST_CASE("contrast of simple images") {
    CHECK(contrast_ms(constant_image(6, 6, 0.7)) <= 1e-25);

    // One channel split half/half between 0 and 1: Bernoulli(1/2) variance.
    ColorImage split = constant_image(4, 4, 0.5);
    split.channels[0] = Plane(4, 4, 0.0);
    for (int r = 0; r < 4; ++r)
        for (int c = 2; c < 4; ++c)
            split.channels[0](r, c) = 1.0;
    CHECK(contrast_ms(split) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("contrast scales quadratically with deviations") {
    std::mt19937_64 rng(80);
    const ColorImage img = fixtures::random_image(rng, 8, 8);
    const double base = contrast_ms(img);

    ColorImage stretched = img;
    const double s = 0.5;
    for (int c = 0; c < 3; ++c) {
        double m = 0.0;
        for (double v : img.channels[c].values)
            m += v;
        m /= static_cast<double>(img.channels[c].size());
        for (double& v : stretched.channels[c].values)
            v = m + s * (v - m);
    }
    CHECK(contrast_ms(stretched) == doctest::Approx(s * s * base).epsilon(1e-10));
}

TEST_CASE("dehazing a simulated fixture raises the contrast") {
    const auto pair = fixtures::hazed_block_scene(81, 32, 32, 4);
    const DehazeResult result = dehaze(pair.hazy, DehazeConfig{});
    CHECK(contrast_ms(result.image) > contrast_ms(pair.hazy));
}

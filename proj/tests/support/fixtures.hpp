#ifndef MWTO_TESTS_FIXTURES_HPP
#define MWTO_TESTS_FIXTURES_HPP

#include <cassert>
#include <random>

#include "core/haze_sim.hpp"
#include "core/image.hpp"
#include "core/rand_util.hpp"

namespace fixtures {

inline mwto::Plane random_plane(std::mt19937_64& rng, int rows, int cols, double lo = 0.0,
                                double hi = 1.0) {
    mwto::Plane p(rows, cols);
    for (double& v : p.values)
        v = mwto::uniform_in(rng, lo, hi);
    return p;
}

inline mwto::ColorImage random_image(std::mt19937_64& rng, int rows, int cols) {
    mwto::ColorImage img;
    for (auto& ch : img.channels)
        ch = random_plane(rng, rows, cols);
    return img;
}

struct BlockSceneOptions {
    double dark_max = 0.01;  // ceiling for each block's darkest channel
    double bright_min = 0.1; // floor for the other channels
};

// Piecewise-constant scene on aligned block x block tiles. Every tile has
// one near-black channel, which keeps the transmission lower bound tight
// there; three reserved tiles in the top row pin the airlight estimate at
// (1,1,1) under the forward haze model.
inline mwto::ColorImage block_scene(std::mt19937_64& rng, int rows, int cols, int block,
                                    BlockSceneOptions opt = {}) {
    assert(rows % block == 0 && cols % block == 0 && cols >= 3 * block);
    mwto::ColorImage img;
    for (auto& ch : img.channels)
        ch = mwto::Plane(rows, cols);

    for (int br = 0; br < rows / block; ++br) {
        for (int bc = 0; bc < cols / block; ++bc) {
            double color[3];
            for (double& v : color)
                v = mwto::uniform_in(rng, opt.bright_min, 1.0);
            color[rng() % 3] = mwto::uniform_in(rng, 0.0, opt.dark_max);
            if (br == 0 && bc < 3) {
                const double dark = mwto::uniform_in(rng, 0.0, opt.dark_max);
                color[0] = bc == 1 ? dark : 1.0;
                color[1] = bc == 2 ? dark : 1.0;
                color[2] = bc == 0 ? dark : 1.0;
            }
            for (int r = br * block; r < (br + 1) * block; ++r)
                for (int c = bc * block; c < (bc + 1) * block; ++c)
                    for (int ch = 0; ch < 3; ++ch)
                        img.channels[ch](r, c) = color[ch];
        }
    }
    return img;
}

// Simulated round trip input: a block scene hazed by a seeded
// block-constant transmission with unit airlight.
struct HazePair {
    mwto::ColorImage clear;
    mwto::ColorImage hazy;
    mwto::TransmissionMap truth;
};

inline HazePair hazed_block_scene(uint64_t seed, int rows, int cols, int block,
                                  double t_lo = 0.4, double t_hi = 0.9) {
    std::mt19937_64 rng(seed);
    HazePair pair;
    pair.clear = block_scene(rng, rows, cols, block);
    pair.truth = mwto::make_block_constant_t(rows, cols, block, seed ^ 0xabcdef12345678ull,
                                             t_lo, t_hi);
    pair.hazy = mwto::apply_haze(pair.clear, pair.truth, mwto::Airlight{{1.0, 1.0, 1.0}});
    return pair;
}

} // namespace fixtures

#endif

#include "core/haze_sim.hpp"

#include <cmath>
#include <stdexcept>

#include "core/rand_util.hpp"

namespace mwto {

TransmissionMap transmission_from_depth(const DepthMap& depth, double beta,
                                        double floor_epsilon) {
    if (!(beta > 0.0))
        throw std::invalid_argument("transmission_from_depth: beta must be positive");
    for (double d : depth.plane.values)
        if (!(d >= 0.0))
            throw std::invalid_argument("transmission_from_depth: depth must be non-negative");

    TransmissionMap t{depth.plane};
    for (double& v : t.plane.values) {
        v = std::exp(-beta * v);
        if (v < floor_epsilon)
            v = floor_epsilon;
    }
    return t;
}

ColorImage apply_haze(const ColorImage& clear, const TransmissionMap& t, const Airlight& a) {
    if (!clear.channels[0].same_dims(t.plane))
        throw std::invalid_argument("apply_haze: transmission dimensions differ from image");
    for (double ac : a.a)
        if (!(ac > 0.0) || ac > 1.0)
            throw std::invalid_argument("apply_haze: airlight must lie in (0,1]");

    ColorImage hazy;
    for (int c = 0; c < 3; ++c) {
        const Plane& j = clear.channels[static_cast<size_t>(c)];
        const double ac = a.a[static_cast<size_t>(c)];
        Plane out(j.rows, j.cols);
        for (size_t i = 0; i < j.size(); ++i) {
            const double tv = t.plane.values[i];
            out.values[i] = j.values[i] * tv + ac * (1.0 - tv);
        }
        hazy.channels[static_cast<size_t>(c)] = std::move(out);
    }
    return hazy;
}

TransmissionMap make_block_constant_t(int rows, int cols, int block, uint64_t seed,
                                      double lo, double hi) {
    if (block < 1 || rows % block != 0 || cols % block != 0)
        throw std::invalid_argument("make_block_constant_t: dimensions not divisible by block");

    std::mt19937_64 rng(seed);
    Plane t(rows, cols);
    for (int br = 0; br < rows / block; ++br) {
        for (int bc = 0; bc < cols / block; ++bc) {
            const double v = uniform_in(rng, lo, hi);
            for (int r = br * block; r < (br + 1) * block; ++r)
                for (int c = bc * block; c < (bc + 1) * block; ++c)
                    t(r, c) = v;
        }
    }
    return TransmissionMap{std::move(t)};
}

} // namespace mwto

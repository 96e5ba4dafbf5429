#ifndef MWTO_CORE_HAZE_SIM_HPP
#define MWTO_CORE_HAZE_SIM_HPP

#include <cstdint>

#include "core/airlight.hpp"
#include "core/image.hpp"

namespace mwto {

/// Scene depth in arbitrary distance units, non-negative everywhere.
/// Zero depth means the object sits at the sensor and transmits fully.
struct DepthMap {
    Plane plane;
};

struct ScatterParams {
    double beta = 1.0; // scattering coefficient, inverse distance units
    Airlight airlight;
};

/// Beer-Lambert transmission t = exp(-beta*d). When floor_epsilon > 0 the
/// result is additionally floored there for downstream division safety.
TransmissionMap transmission_from_depth(const DepthMap& depth, double beta,
                                        double floor_epsilon = 0.0);

/// Forward haze model per channel: I = J*t + a*(1-t). A convex combination
/// whenever a <= 1, so unit-interval inputs give unit-interval output.
ColorImage apply_haze(const ColorImage& clear, const TransmissionMap& t, const Airlight& a);

/// Random transmission map constant on aligned block x block tiles,
/// values uniform in [lo, hi], reproducible from the seed.
TransmissionMap make_block_constant_t(int rows, int cols, int block, uint64_t seed,
                                      double lo = 0.2, double hi = 1.0);

} // namespace mwto

#endif

#ifndef MWTO_CORE_AIRLIGHT_HPP
#define MWTO_CORE_AIRLIGHT_HPP

#include <array>

#include "core/image.hpp"

namespace mwto {

/// Atmospheric light constants, one per RGB channel, each in (0,1].
struct Airlight {
    std::array<double, 3> a{1.0, 1.0, 1.0};
};

/// Floor applied to the estimate; the reduced optimization divides by the
/// airlight, and near-zero estimates on pathological inputs (night scenes)
/// would destabilize it.
inline constexpr double kAirlightFloor = 0.5;

/// Estimates the airlight per channel as the global maximum of the 3x3
/// min-filtered (eroded) channel, then clamps to [kAirlightFloor, 1].
/// Border windows are clipped, which matches replicate-border erosion.
Airlight estimate_airlight(const ColorImage& image);

} // namespace mwto

#endif

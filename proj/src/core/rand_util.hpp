#ifndef MWTO_CORE_RAND_UTIL_HPP
#define MWTO_CORE_RAND_UTIL_HPP

#include <cstdint>
#include <random>

namespace mwto {

// Uniform double in [0,1) from the top 53 bits of the generator output.
// std::uniform_real_distribution is implementation-defined, which would
// break bit-reproducibility of seeded fixtures across standard libraries.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

} // namespace mwto

#endif

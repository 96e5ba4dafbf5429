#ifndef MWTO_CORE_HAAR_HPP
#define MWTO_CORE_HAAR_HPP

#include <vector>

#include "core/image.hpp"

namespace mwto {

/// One level of a 2-D orthonormal Haar decomposition: low-frequency
/// approximation plus horizontal, vertical and diagonal detail blocks,
/// each (rows/2) x (cols/2).
struct SubbandSet {
    Plane a;
    Plane h;
    Plane v;
    Plane d;
};

/// Detail blocks only, as stored per level of a multilevel pyramid.
struct DetailBands {
    Plane h;
    Plane v;
    Plane d;
};

/// Multilevel decomposition: the coarsest low band plus detail triples
/// ordered finest (level 1) to coarsest (level L). details[k] has the
/// dimensions of the original divided by 2^(k+1).
struct WaveletPyramid {
    int levels = 0;
    Plane low;
    std::vector<DetailBands> details;
};

/// Single-level forward transform. For each 2x2 block (p00 p01; p10 p11):
///   a = (p00+p01+p10+p11)/2    h = (p00-p01+p10-p11)/2
///   v = (p00+p01-p10-p11)/2    d = (p00-p01-p10+p11)/2
/// Equivalent to W*X*W^T with the orthonormal single-level Haar matrix W;
/// computed by 2x2 butterflies instead of matrix products.
SubbandSet dhwt_forward(const Plane& plane);

/// Exact inverse of dhwt_forward.
Plane dhwt_inverse(const SubbandSet& sub);

/// Applies dhwt_forward recursively to the low band, L times.
WaveletPyramid dhwt_forward_multi(const Plane& plane, int levels);

/// Exact multilevel reconstruction.
Plane dhwt_inverse_multi(const WaveletPyramid& pyramid);

} // namespace mwto

#endif

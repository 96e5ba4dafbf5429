#include "core/haar.hpp"

#include <stdexcept>

namespace mwto {

SubbandSet dhwt_forward(const Plane& plane) {
    if (plane.rows % 2 != 0 || plane.cols % 2 != 0)
        throw std::invalid_argument("dhwt_forward: dimensions must be even");
    const int hr = plane.rows / 2;
    const int hc = plane.cols / 2;
    SubbandSet sub{Plane(hr, hc), Plane(hr, hc), Plane(hr, hc), Plane(hr, hc)};
    for (int r = 0; r < hr; ++r) {
        const double* top = plane.values.data() + static_cast<size_t>(2 * r) * plane.cols;
        const double* bot = top + plane.cols;
        for (int c = 0; c < hc; ++c) {
            const double p00 = top[2 * c];
            const double p01 = top[2 * c + 1];
            const double p10 = bot[2 * c];
            const double p11 = bot[2 * c + 1];
            sub.a(r, c) = (p00 + p01 + p10 + p11) * 0.5;
            sub.h(r, c) = (p00 - p01 + p10 - p11) * 0.5;
            sub.v(r, c) = (p00 + p01 - p10 - p11) * 0.5;
            sub.d(r, c) = (p00 - p01 - p10 + p11) * 0.5;
        }
    }
    return sub;
}

Plane dhwt_inverse(const SubbandSet& sub) {
    if (!sub.a.same_dims(sub.h) || !sub.a.same_dims(sub.v) || !sub.a.same_dims(sub.d))
        throw std::invalid_argument("dhwt_inverse: inconsistent sub-band dimensions");
    const int hr = sub.a.rows;
    const int hc = sub.a.cols;
    Plane out(2 * hr, 2 * hc);
    for (int r = 0; r < hr; ++r) {
        double* top = &out(2 * r, 0);
        double* bot = &out(2 * r + 1, 0);
        for (int c = 0; c < hc; ++c) {
            const double a = sub.a(r, c);
            const double h = sub.h(r, c);
            const double v = sub.v(r, c);
            const double d = sub.d(r, c);
            top[2 * c] = (a + h + v + d) * 0.5;
            top[2 * c + 1] = (a - h + v - d) * 0.5;
            bot[2 * c] = (a + h - v - d) * 0.5;
            bot[2 * c + 1] = (a - h - v + d) * 0.5;
        }
    }
    return out;
}

WaveletPyramid dhwt_forward_multi(const Plane& plane, int levels) {
    if (levels < 1)
        throw std::invalid_argument("dhwt_forward_multi: levels must be positive");
    const int block = 1 << levels;
    if (plane.rows % block != 0 || plane.cols % block != 0)
        throw std::invalid_argument("dhwt_forward_multi: dimensions not divisible by 2^levels");

    WaveletPyramid pyr;
    pyr.levels = levels;
    Plane low = plane;
    for (int k = 0; k < levels; ++k) {
        SubbandSet sub = dhwt_forward(low);
        pyr.details.push_back(DetailBands{std::move(sub.h), std::move(sub.v), std::move(sub.d)});
        low = std::move(sub.a);
    }
    pyr.low = std::move(low);
    return pyr;
}

Plane dhwt_inverse_multi(const WaveletPyramid& pyramid) {
    if (pyramid.levels < 1 || static_cast<int>(pyramid.details.size()) != pyramid.levels)
        throw std::invalid_argument("dhwt_inverse_multi: malformed pyramid");
    Plane low = pyramid.low;
    for (int k = pyramid.levels - 1; k >= 0; --k) {
        const DetailBands& det = pyramid.details[static_cast<size_t>(k)];
        low = dhwt_inverse(SubbandSet{std::move(low), det.h, det.v, det.d});
    }
    return low;
}

} // namespace mwto

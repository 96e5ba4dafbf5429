#ifndef MWTO_CORE_METRICS_HPP
#define MWTO_CORE_METRICS_HPP

#include "core/image.hpp"

namespace mwto {

/// No-reference visibility descriptors comparing a restored image against
/// the hazy original: new-visible-edge ratio e, newly saturated pixel
/// fraction sigma, and geometric mean gradient gain rbar.
struct VisibilityReport {
    double e = 0.0;
    double sigma = 0.0;
    double rbar = 1.0;
};

/// Full-reference scores. psnr is +infinity when mse is zero.
struct ReferenceReport {
    double mse = 0.0;
    double psnr = 0.0;
    double ssim = 0.0;
};

/// Default visible-edge threshold on unit-range Sobel magnitude; realizes
/// the 5%-contrast visibility convention.
inline constexpr double kVisibleEdgeThreshold = 0.05;

/// Mean over all pixels and channels of the squared difference.
double mse(const ColorImage& reference, const ColorImage& test);

/// 10*log10(1/mse) for unit-range images; +infinity when mse == 0.
double psnr(const ColorImage& reference, const ColorImage& test);

/// Mean structural similarity on luma (ITU-R 601 weights) with the
/// standard 11x11 Gaussian window (sigma 1.5), K1=0.01, K2=0.03, unit
/// dynamic range. Windows are fully interior, so images must be >= 11x11.
double ssim(const ColorImage& reference, const ColorImage& test);

/// Visibility descriptors on the channel mean (channel-symmetric by
/// construction). Visible edges are pixels whose Sobel gradient magnitude
/// exceeds tau; gradients in the gain ratio are floored at 1e-6. With no
/// visible edges anywhere, e = 0 and rbar = 1.
VisibilityReport hautiere(const ColorImage& hazy, const ColorImage& restored,
                          double tau = kVisibleEdgeThreshold);

/// Sum over channels of the per-channel variance (mean squared deviation
/// from the channel mean); haze compresses it, dehazing should raise it.
double contrast_ms(const ColorImage& image);

/// ITU-R 601 luma plane: 0.299 R + 0.587 G + 0.114 B.
Plane luma(const ColorImage& image);

ReferenceReport compare(const ColorImage& reference, const ColorImage& test);

} // namespace mwto

#endif

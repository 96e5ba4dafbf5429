#ifndef MWTO_CORE_PIPELINE_HPP
#define MWTO_CORE_PIPELINE_HPP

#include <optional>

#include "core/airlight.hpp"
#include "core/haar.hpp"
#include "core/image.hpp"
#include "core/tv_solver.hpp"

namespace mwto {

struct DehazeConfig {
    int levels = 2;          // wavelet decomposition depth, 0..4
    double lambda0 = 0.1;    // base TV weight; effective lambda = lambda0*mean(a)/2^levels
    double epsilon = 0.05;   // transmission floor
    double tol = 1e-4;       // solver stopping threshold
    int max_iters = 100;     // solver iteration cap
    double mu = 0.0;         // Bregman penalty override; <=0 selects 2*lambda + 0.1
    bool emit_transmission = false; // consumed by the CLI when writing outputs
};

struct DehazeResult {
    ColorImage image;
    TransmissionMap transmission;
    Airlight airlight;
    SolverDiagnostics diagnostics;
};

/// Coarsest-level state captured for verification: the low bands of the
/// hazy input, the recovered low bands before any clamping, the solved
/// transmission and the level-scaled airlight. The sub-band model holds
/// exactly on these: recovered*t + a*(1-t) == input low band.
struct PipelineTrace {
    std::array<Plane, 3> input_low;
    std::array<Plane, 3> recovered_low;
    Plane coarse_transmission;
    std::array<double, 3> airlight_scaled;
    double lambda = 0.0;
};

/// Full dehazing pass: mirror-pad to a dyadic size, decompose each channel
/// `levels` deep, estimate the airlight, solve the box-constrained TV
/// program on the coarsest low band, then walk back to full resolution
/// dividing detail bands by the transmission and upsampling it 2x per
/// level. Output image and transmission match the input dimensions.
DehazeResult dehaze(const ColorImage& input, const DehazeConfig& config,
                    PipelineTrace* trace = nullptr);

/// Nearest-neighbour 2x upsampling: out(2m+i,2n+j) = t(m,n).
Plane upsample_transmission(const Plane& t);

/// Divides the detail bands elementwise by the transmission at the same
/// resolution. Requires t >= epsilon everywhere (enforced upstream).
DetailBands recover_detail_bands(const DetailBands& detail, const Plane& t, double epsilon);

} // namespace mwto

#endif

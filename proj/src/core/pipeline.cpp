#include "core/pipeline.hpp"

#include <cmath>
#include <stdexcept>

namespace mwto {

Plane upsample_transmission(const Plane& t) {
    Plane out(2 * t.rows, 2 * t.cols);
    for (int r = 0; r < t.rows; ++r) {
        for (int c = 0; c < t.cols; ++c) {
            const double v = t(r, c);
            out(2 * r, 2 * c) = v;
            out(2 * r, 2 * c + 1) = v;
            out(2 * r + 1, 2 * c) = v;
            out(2 * r + 1, 2 * c + 1) = v;
        }
    }
    return out;
}

DetailBands recover_detail_bands(const DetailBands& detail, const Plane& t, double epsilon) {
    if (!detail.h.same_dims(t))
        throw std::invalid_argument("recover_detail_bands: transmission dimensions differ");
    for (double v : t.values)
        if (v < epsilon)
            throw std::logic_error("recover_detail_bands: transmission below floor");

    DetailBands out{detail.h, detail.v, detail.d};
    for (size_t i = 0; i < t.size(); ++i) {
        const double inv = 1.0 / t.values[i];
        out.h.values[i] *= inv;
        out.v.values[i] *= inv;
        out.d.values[i] *= inv;
    }
    return out;
}

DehazeResult dehaze(const ColorImage& input, const DehazeConfig& config, PipelineTrace* trace) {
    if (config.levels < 0 || config.levels > 4)
        throw std::invalid_argument("dehaze: levels must lie in [0,4]");
    if (!(config.epsilon > 0.0) || config.epsilon >= 1.0)
        throw std::invalid_argument("dehaze: epsilon must lie in (0,1)");
    if (config.lambda0 < 0.0)
        throw std::invalid_argument("dehaze: lambda0 must be non-negative");

    const int levels = config.levels;
    auto [padded, box] = pad_dyadic(input, levels);

    const Airlight air = estimate_airlight(padded);
    const double scale = static_cast<double>(1 << levels);
    const std::array<double, 3> air_scaled{scale * air.a[0], scale * air.a[1], scale * air.a[2]};

    // Decompose each channel; for levels = 0 the "low band" is the image
    // itself and the model reduces to the original single-resolution form.
    std::array<WaveletPyramid, 3> pyramids;
    std::array<Plane, 3> low;
    if (levels > 0) {
        for (int c = 0; c < 3; ++c) {
            pyramids[static_cast<size_t>(c)] =
                dhwt_forward_multi(padded.channels[static_cast<size_t>(c)], levels);
            low[static_cast<size_t>(c)] = pyramids[static_cast<size_t>(c)].low;
        }
    } else {
        for (int c = 0; c < 3; ++c)
            low[static_cast<size_t>(c)] = padded.channels[static_cast<size_t>(c)];
    }

    const double mean_air = (air.a[0] + air.a[1] + air.a[2]) / 3.0;
    const double lambda = config.lambda0 * mean_air / scale;

    BoxTvProblem problem;
    problem.lower = lower_bound_plane(low, air_scaled, config.epsilon);
    problem.lambda = lambda;
    problem.mu = config.mu;
    problem.tol = config.tol;
    problem.max_iters = config.max_iters;
    auto [tmap, diag] = solve_swto(problem);
    Plane t = std::move(tmap.plane);

    // Invert the sub-band model on the coarsest low band:
    // J = (I - a*(1-t)) / t. Values may exceed 1 here; clamping waits
    // until full resolution to avoid compounding truncation across levels.
    std::array<Plane, 3> recovered = low;
    for (int c = 0; c < 3; ++c) {
        Plane& j = recovered[static_cast<size_t>(c)];
        const double ac = air_scaled[static_cast<size_t>(c)];
        for (size_t i = 0; i < j.size(); ++i)
            j.values[i] = (j.values[i] - ac * (1.0 - t.values[i])) / t.values[i];
    }

    if (trace) {
        trace->input_low = low;
        trace->recovered_low = recovered;
        trace->coarse_transmission = t;
        trace->airlight_scaled = air_scaled;
        trace->lambda = lambda;
    }

    // Walk back to full resolution: divide detail bands by the current
    // transmission, reconstruct one level, then upsample the transmission.
    for (int k = levels; k >= 1; --k) {
        for (int c = 0; c < 3; ++c) {
            const DetailBands& det =
                pyramids[static_cast<size_t>(c)].details[static_cast<size_t>(k - 1)];
            DetailBands rec = recover_detail_bands(det, t, config.epsilon);
            recovered[static_cast<size_t>(c)] =
                dhwt_inverse(SubbandSet{std::move(recovered[static_cast<size_t>(c)]),
                                        std::move(rec.h), std::move(rec.v), std::move(rec.d)});
        }
        t = upsample_transmission(t);
    }

    DehazeResult result;
    for (int c = 0; c < 3; ++c)
        result.image.channels[static_cast<size_t>(c)] = crop_plane(
            clamp_unit(recovered[static_cast<size_t>(c)]), box.orig_rows, box.orig_cols);
    result.transmission = TransmissionMap{crop_plane(t, box.orig_rows, box.orig_cols)};
    result.airlight = air;
    result.diagnostics = diag;
    return result;
}

} // namespace mwto

#include "mwto/mwto.h"

#include <cstring>
#include <exception>
#include <stdexcept>
#include <span>
#include <string>

#include "core/haze_sim.hpp"
#include "core/image.hpp"
#include "core/metrics.hpp"
#include "core/pipeline.hpp"

struct mwto_image {
    mwto::ColorImage img;
};

struct mwto_map {
    mwto::Plane plane;
};

struct mwto_result {
    mwto_image image;
    mwto_map transmission;
    mwto::Airlight airlight;
    mwto::SolverDiagnostics diagnostics;
};

namespace {

thread_local std::string g_last_error;

mwto_status fail(mwto_status status, const char* message) {
    g_last_error = message;
    return status;
}

// Translates core exceptions at the C boundary; nothing may escape.
template <typename Fn>
mwto_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const std::invalid_argument& e) {
        return fail(MWTO_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::exception& e) {
        return fail(MWTO_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(MWTO_ERR_INTERNAL, "unknown error");
    }
}

} // namespace

extern "C" {

const char* mwto_status_string(mwto_status status) {
    switch (status) {
    case MWTO_OK:
        return "ok";
    case MWTO_ERR_INVALID_ARGUMENT:
        return "invalid argument";
    case MWTO_ERR_INTERNAL:
        return "internal error";
    }
    return "unknown status";
}

const char* mwto_last_error(void) { return g_last_error.c_str(); }

mwto_status mwto_image_from_bytes(const uint8_t* rgb, int32_t rows, int32_t cols,
                                  mwto_image** out) {
    if (!rgb || !out)
        return fail(MWTO_ERR_INVALID_ARGUMENT, "null pointer");
    if (rows < 1 || cols < 1)
        return fail(MWTO_ERR_INVALID_ARGUMENT, "dimensions must be positive");
    return guarded([&] {
        auto img = mwto::normalize_bytes(
            std::span<const uint8_t>(rgb, static_cast<size_t>(rows) * cols * 3), rows, cols);
        *out = new mwto_image{std::move(img)};
        return MWTO_OK;
    });
}

int32_t mwto_image_rows(const mwto_image* image) { return image ? image->img.rows() : 0; }
int32_t mwto_image_cols(const mwto_image* image) { return image ? image->img.cols() : 0; }

mwto_status mwto_image_to_bytes(const mwto_image* image, uint8_t* rgb) {
    if (!image || !rgb)
        return fail(MWTO_ERR_INVALID_ARGUMENT, "null pointer");
    return guarded([&] {
        auto bytes = mwto::quantize_image(image->img);
        std::memcpy(rgb, bytes.data(), bytes.size());
        return MWTO_OK;
    });
}

mwto_status mwto_image_channel(const mwto_image* image, int32_t channel, double* values) {
    if (!image || !values)
        return fail(MWTO_ERR_INVALID_ARGUMENT, "null pointer");
    if (channel < 0 || channel > 2)
        return fail(MWTO_ERR_INVALID_ARGUMENT, "channel index out of range");
    const auto& ch = image->img.channels[static_cast<size_t>(channel)];
    std::memcpy(values, ch.values.data(), ch.size() * sizeof(double));
    return MWTO_OK;
}

void mwto_image_free(mwto_image* image) { delete image; }

mwto_status mwto_map_create(const double* values, int32_t rows, int32_t cols, mwto_map** out) {
    if (!values || !out)
        return fail(MWTO_ERR_INVALID_ARGUMENT, "null pointer");
    return guarded([&] {
        mwto::Plane p(rows, cols);
        std::memcpy(p.values.data(), values, p.size() * sizeof(double));
        *out = new mwto_map{std::move(p)};
        return MWTO_OK;
    });
}

mwto_status mwto_map_constant(double value, int32_t rows, int32_t cols, mwto_map** out) {
    if (!out)
        return fail(MWTO_ERR_INVALID_ARGUMENT, "null pointer");
    return guarded([&] {
        *out = new mwto_map{mwto::Plane(rows, cols, value)};
        return MWTO_OK;
    });
}

int32_t mwto_map_rows(const mwto_map* map) { return map ? map->plane.rows : 0; }
int32_t mwto_map_cols(const mwto_map* map) { return map ? map->plane.cols : 0; }

mwto_status mwto_map_values(const mwto_map* map, double* values) {
    if (!map || !values)
        return fail(MWTO_ERR_INVALID_ARGUMENT, "null pointer");
    std::memcpy(values, map->plane.values.data(), map->plane.size() * sizeof(double));
    return MWTO_OK;
}

mwto_status mwto_map_to_bytes(const mwto_map* map, uint8_t* gray) {
    if (!map || !gray)
        return fail(MWTO_ERR_INVALID_ARGUMENT, "null pointer");
    return guarded([&] {
        auto bytes = mwto::quantize_plane(map->plane);
        std::memcpy(gray, bytes.data(), bytes.size());
        return MWTO_OK;
    });
}

void mwto_map_free(mwto_map* map) { delete map; }

void mwto_dehaze_options_init(mwto_dehaze_options* options) {
    if (!options)
        return;
    const mwto::DehazeConfig defaults;
    options->levels = defaults.levels;
    options->lambda0 = defaults.lambda0;
    options->epsilon = defaults.epsilon;
    options->tol = defaults.tol;
    options->max_iters = defaults.max_iters;
    options->mu = defaults.mu;
}

mwto_status mwto_dehaze(const mwto_image* hazy, const mwto_dehaze_options* options,
                        mwto_result** out) {
    if (!hazy || !out)
        return fail(MWTO_ERR_INVALID_ARGUMENT, "null pointer");
    return guarded([&] {
        mwto::DehazeConfig config;
        if (options) {
            config.levels = options->levels;
            config.lambda0 = options->lambda0;
            config.epsilon = options->epsilon;
            config.tol = options->tol;
            config.max_iters = options->max_iters;
            config.mu = options->mu;
        }
        mwto::DehazeResult res = mwto::dehaze(hazy->img, config);
        auto* result = new mwto_result;
        result->image.img = std::move(res.image);
        result->transmission.plane = std::move(res.transmission.plane);
        result->airlight = res.airlight;
        result->diagnostics = res.diagnostics;
        *out = result;
        return MWTO_OK;
    });
}

const mwto_image* mwto_result_image(const mwto_result* result) {
    return result ? &result->image : nullptr;
}

const mwto_map* mwto_result_transmission(const mwto_result* result) {
    return result ? &result->transmission : nullptr;
}

void mwto_result_airlight(const mwto_result* result, double airlight[3]) {
    if (!result || !airlight)
        return;
    for (int c = 0; c < 3; ++c)
        airlight[c] = result->airlight.a[static_cast<size_t>(c)];
}

int32_t mwto_result_iterations(const mwto_result* result) {
    return result ? result->diagnostics.iterations : 0;
}

int32_t mwto_result_converged(const mwto_result* result) {
    return result && result->diagnostics.converged ? 1 : 0;
}

double mwto_result_objective(const mwto_result* result) {
    return result ? result->diagnostics.final_objective : 0.0;
}

void mwto_result_free(mwto_result* result) { delete result; }

mwto_status mwto_transmission_from_depth(const mwto_map* depth, double beta, mwto_map** out) {
    if (!depth || !out)
        return fail(MWTO_ERR_INVALID_ARGUMENT, "null pointer");
    return guarded([&] {
        auto t = mwto::transmission_from_depth(mwto::DepthMap{depth->plane}, beta);
        *out = new mwto_map{std::move(t.plane)};
        return MWTO_OK;
    });
}

mwto_status mwto_apply_haze(const mwto_image* clear, const mwto_map* transmission,
                            const double airlight[3], mwto_image** out) {
    if (!clear || !transmission || !airlight || !out)
        return fail(MWTO_ERR_INVALID_ARGUMENT, "null pointer");
    return guarded([&] {
        mwto::Airlight a{{airlight[0], airlight[1], airlight[2]}};
        auto hazy = mwto::apply_haze(clear->img, mwto::TransmissionMap{transmission->plane}, a);
        *out = new mwto_image{std::move(hazy)};
        return MWTO_OK;
    });
}

mwto_status mwto_block_constant_map(int32_t rows, int32_t cols, int32_t block, uint64_t seed,
                                    double lo, double hi, mwto_map** out) {
    if (!out)
        return fail(MWTO_ERR_INVALID_ARGUMENT, "null pointer");
    return guarded([&] {
        auto t = mwto::make_block_constant_t(rows, cols, block, seed, lo, hi);
        *out = new mwto_map{std::move(t.plane)};
        return MWTO_OK;
    });
}

mwto_status mwto_compare(const mwto_image* reference, const mwto_image* test,
                         mwto_reference_report* report) {
    if (!reference || !test || !report)
        return fail(MWTO_ERR_INVALID_ARGUMENT, "null pointer");
    return guarded([&] {
        const mwto::ReferenceReport rep = mwto::compare(reference->img, test->img);
        report->mse = rep.mse;
        report->psnr = rep.psnr;
        report->ssim = rep.ssim;
        return MWTO_OK;
    });
}

mwto_status mwto_visibility(const mwto_image* hazy, const mwto_image* restored, double tau,
                            mwto_visibility_report* report) {
    if (!hazy || !restored || !report)
        return fail(MWTO_ERR_INVALID_ARGUMENT, "null pointer");
    return guarded([&] {
        const double threshold = tau > 0.0 ? tau : mwto::kVisibleEdgeThreshold;
        const mwto::VisibilityReport rep = mwto::hautiere(hazy->img, restored->img, threshold);
        report->e = rep.e;
        report->sigma = rep.sigma;
        report->rbar = rep.rbar;
        return MWTO_OK;
    });
}

mwto_status mwto_contrast(const mwto_image* image, double* contrast) {
    if (!image || !contrast)
        return fail(MWTO_ERR_INVALID_ARGUMENT, "null pointer");
    *contrast = mwto::contrast_ms(image->img);
    return MWTO_OK;
}

} // extern "C"

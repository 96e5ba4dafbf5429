/* mwto — multilevel wavelet transform based single-image dehazing.
 *
 * C interface to the shared library. All objects are opaque handles
 * created and destroyed through these functions; every fallible call
 * returns an mwto_status and reports results through out-parameters.
 * A human-readable message for the most recent failure on the calling
 * thread is available from mwto_last_error().
 */
#ifndef MWTO_H
#define MWTO_H

#include <stdint.h>

#if defined(_WIN32)
#define MWTO_API __declspec(dllexport)
#else
#define MWTO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mwto_status {
    MWTO_OK = 0,
    MWTO_ERR_INVALID_ARGUMENT = 1, /* bad parameter, dimension mismatch, null handle */
    MWTO_ERR_INTERNAL = 2          /* allocation failure or internal invariant violation */
} mwto_status;

/* Static description of a status code. */
MWTO_API const char* mwto_status_string(mwto_status status);

/* Message for the last failure on this thread; empty string if none. */
MWTO_API const char* mwto_last_error(void);

/* ---- images and maps ------------------------------------------------- */

/* Three-channel RGB image, double precision, values nominally in [0,1]. */
typedef struct mwto_image mwto_image;
/* Single-channel map (transmission, depth, grayscale data). */
typedef struct mwto_map mwto_map;

/* Builds an image from an interleaved 8-bit RGB buffer of rows*cols*3
 * bytes; values are divided by 255. */
MWTO_API mwto_status mwto_image_from_bytes(const uint8_t* rgb, int32_t rows, int32_t cols,
                                           mwto_image** out);
MWTO_API int32_t mwto_image_rows(const mwto_image* image);
MWTO_API int32_t mwto_image_cols(const mwto_image* image);
/* Quantizes back to interleaved 8-bit RGB, round(255*v) with clamping.
 * The buffer must hold rows*cols*3 bytes. */
MWTO_API mwto_status mwto_image_to_bytes(const mwto_image* image, uint8_t* rgb);
/* Copies one channel (0=R,1=G,2=B) into values (rows*cols doubles). */
MWTO_API mwto_status mwto_image_channel(const mwto_image* image, int32_t channel,
                                        double* values);
MWTO_API void mwto_image_free(mwto_image* image);

MWTO_API mwto_status mwto_map_create(const double* values, int32_t rows, int32_t cols,
                                     mwto_map** out);
MWTO_API mwto_status mwto_map_constant(double value, int32_t rows, int32_t cols,
                                       mwto_map** out);
MWTO_API int32_t mwto_map_rows(const mwto_map* map);
MWTO_API int32_t mwto_map_cols(const mwto_map* map);
MWTO_API mwto_status mwto_map_values(const mwto_map* map, double* values);
/* Quantizes to 8-bit grayscale, round(255*v) with clamping. */
MWTO_API mwto_status mwto_map_to_bytes(const mwto_map* map, uint8_t* gray);
MWTO_API void mwto_map_free(mwto_map* map);

/* ---- dehazing --------------------------------------------------------- */

typedef struct mwto_dehaze_options {
    int32_t levels;     /* wavelet depth, 0..4 */
    double lambda0;     /* base TV weight */
    double epsilon;     /* transmission floor */
    double tol;         /* solver relative-change threshold */
    int32_t max_iters;  /* solver iteration cap */
    double mu;          /* Bregman penalty; <=0 selects 2*lambda + 0.1 */
} mwto_dehaze_options;

/* Fills the defaults: levels 2, lambda0 0.1, epsilon 0.05, tol 1e-4,
 * max_iters 100, mu auto. */
MWTO_API void mwto_dehaze_options_init(mwto_dehaze_options* options);

typedef struct mwto_result mwto_result;

MWTO_API mwto_status mwto_dehaze(const mwto_image* hazy, const mwto_dehaze_options* options,
                                 mwto_result** out);
/* Borrowed views; valid until mwto_result_free. */
MWTO_API const mwto_image* mwto_result_image(const mwto_result* result);
MWTO_API const mwto_map* mwto_result_transmission(const mwto_result* result);
MWTO_API void mwto_result_airlight(const mwto_result* result, double airlight[3]);
MWTO_API int32_t mwto_result_iterations(const mwto_result* result);
MWTO_API int32_t mwto_result_converged(const mwto_result* result);
MWTO_API double mwto_result_objective(const mwto_result* result);
MWTO_API void mwto_result_free(mwto_result* result);

/* ---- haze simulation --------------------------------------------------- */

/* Beer-Lambert transmission from a non-negative depth map: t = exp(-beta*d). */
MWTO_API mwto_status mwto_transmission_from_depth(const mwto_map* depth, double beta,
                                                  mwto_map** out);
/* Forward optical model I = J*t + a*(1-t) per channel. */
MWTO_API mwto_status mwto_apply_haze(const mwto_image* clear, const mwto_map* transmission,
                                     const double airlight[3], mwto_image** out);
/* Seeded random transmission map constant on block x block tiles, values
 * uniform in [lo, hi]. */
MWTO_API mwto_status mwto_block_constant_map(int32_t rows, int32_t cols, int32_t block,
                                             uint64_t seed, double lo, double hi,
                                             mwto_map** out);

/* ---- quality metrics --------------------------------------------------- */

typedef struct mwto_reference_report {
    double mse;
    double psnr; /* +infinity when mse is zero */
    double ssim;
} mwto_reference_report;

typedef struct mwto_visibility_report {
    double e;
    double sigma;
    double rbar;
} mwto_visibility_report;

MWTO_API mwto_status mwto_compare(const mwto_image* reference, const mwto_image* test,
                                  mwto_reference_report* report);
/* tau <= 0 selects the default visible-edge threshold (0.05). */
MWTO_API mwto_status mwto_visibility(const mwto_image* hazy, const mwto_image* restored,
                                     double tau, mwto_visibility_report* report);
MWTO_API mwto_status mwto_contrast(const mwto_image* image, double* contrast);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MWTO_H */

#include "core/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace mwto {

namespace {

void require_same_dims(const ColorImage& a, const ColorImage& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument(std::string(op) + ": image dimensions differ");
}

inline int clamp_index(int i, int n) { return std::clamp(i, 0, n - 1); }

// Sobel gradient magnitude with replicate borders, scaled so a unit step
// across one row/column has magnitude 1.
Plane sobel_magnitude(const Plane& p) {
    Plane out(p.rows, p.cols);
    for (int r = 0; r < p.rows; ++r) {
        for (int c = 0; c < p.cols; ++c) {
            auto v = [&](int dr, int dc) {
                return p(clamp_index(r + dr, p.rows), clamp_index(c + dc, p.cols));
            };
            const double gx = (v(-1, 1) + 2.0 * v(0, 1) + v(1, 1)) -
                              (v(-1, -1) + 2.0 * v(0, -1) + v(1, -1));
            const double gy = (v(1, -1) + 2.0 * v(1, 0) + v(1, 1)) -
                              (v(-1, -1) + 2.0 * v(-1, 0) + v(-1, 1));
            out(r, c) = std::sqrt(gx * gx + gy * gy) / 4.0;
        }
    }
    return out;
}

bool pixel_saturated(const ColorImage& img, size_t i) {
    for (const Plane& ch : img.channels) {
        const double v = ch.values[i];
        if (v == 0.0 || v == 1.0)
            return true;
    }
    return false;
}

// The visibility descriptors are channel-symmetric, so they run on the
// plain channel mean rather than on perceptually weighted luma.
Plane channel_mean(const ColorImage& image) {
    Plane y(image.rows(), image.cols());
    for (size_t i = 0; i < y.size(); ++i)
        y.values[i] = (image.channels[0].values[i] + image.channels[1].values[i] +
                       image.channels[2].values[i]) /
                      3.0;
    return y;
}

} // namespace

Plane luma(const ColorImage& image) {
    Plane y(image.rows(), image.cols());
    for (size_t i = 0; i < y.size(); ++i)
        y.values[i] = 0.299 * image.channels[0].values[i] +
                      0.587 * image.channels[1].values[i] +
                      0.114 * image.channels[2].values[i];
    return y;
}

double mse(const ColorImage& reference, const ColorImage& test) {
    require_same_dims(reference, test, "mse");
    double sum = 0.0;
    for (int c = 0; c < 3; ++c) {
        const auto& r = reference.channels[static_cast<size_t>(c)].values;
        const auto& t = test.channels[static_cast<size_t>(c)].values;
        for (size_t i = 0; i < r.size(); ++i) {
            const double d = r[i] - t[i];
            sum += d * d;
        }
    }
    return sum / (3.0 * reference.rows() * reference.cols());
}

double psnr(const ColorImage& reference, const ColorImage& test) {
    const double m = mse(reference, test);
    if (m == 0.0)
        return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(1.0 / m);
}

double ssim(const ColorImage& reference, const ColorImage& test) {
    require_same_dims(reference, test, "ssim");
    constexpr int kWin = 11;
    if (reference.rows() < kWin || reference.cols() < kWin)
        throw std::invalid_argument("ssim: image smaller than the 11x11 window");

    // 11x11 Gaussian weights, sigma 1.5, normalized to sum 1.
    double w[kWin][kWin];
    double wsum = 0.0;
    for (int i = 0; i < kWin; ++i) {
        for (int j = 0; j < kWin; ++j) {
            const double di = i - 5.0;
            const double dj = j - 5.0;
            w[i][j] = std::exp(-(di * di + dj * dj) / (2.0 * 1.5 * 1.5));
            wsum += w[i][j];
        }
    }
    for (auto& row : w)
        for (double& v : row)
            v /= wsum;

    const Plane x = luma(reference);
    const Plane y = luma(test);
    constexpr double c1 = 0.01 * 0.01;
    constexpr double c2 = 0.03 * 0.03;

    double total = 0.0;
    long count = 0;
    for (int r = 0; r + kWin <= x.rows; ++r) {
        for (int c = 0; c + kWin <= x.cols; ++c) {
            double mx = 0.0, my = 0.0, xx = 0.0, yy = 0.0, xy = 0.0;
            for (int i = 0; i < kWin; ++i) {
                for (int j = 0; j < kWin; ++j) {
                    const double xv = x(r + i, c + j);
                    const double yv = y(r + i, c + j);
                    const double wv = w[i][j];
                    mx += wv * xv;
                    my += wv * yv;
                    xx += wv * xv * xv;
                    yy += wv * yv * yv;
                    xy += wv * xv * yv;
                }
            }
            const double sx = xx - mx * mx;
            const double sy = yy - my * my;
            const double sxy = xy - mx * my;
            total += ((2.0 * mx * my + c1) * (2.0 * sxy + c2)) /
                     ((mx * mx + my * my + c1) * (sx + sy + c2));
            ++count;
        }
    }
    return total / static_cast<double>(count);
}

VisibilityReport hautiere(const ColorImage& hazy, const ColorImage& restored, double tau) {
    require_same_dims(hazy, restored, "hautiere");

    const Plane gh = sobel_magnitude(channel_mean(hazy));
    const Plane gr = sobel_magnitude(channel_mean(restored));

    long n_o = 0, n_r = 0, n_s = 0;
    double log_sum = 0.0;
    for (size_t i = 0; i < gh.size(); ++i) {
        if (gh.values[i] > tau)
            ++n_o;
        if (gr.values[i] > tau) {
            ++n_r;
            log_sum += std::log(gr.values[i] / std::max(gh.values[i], 1e-6));
        }
        if (pixel_saturated(restored, i) && !pixel_saturated(hazy, i))
            ++n_s;
    }

    VisibilityReport rep;
    if (n_o > 0)
        rep.e = static_cast<double>(n_r - n_o) / static_cast<double>(n_o);
    else
        rep.e = n_r > 0 ? std::numeric_limits<double>::infinity() : 0.0;
    rep.sigma = static_cast<double>(n_s) / static_cast<double>(gh.size());
    rep.rbar = n_r > 0 ? std::exp(log_sum / static_cast<double>(n_r)) : 1.0;
    return rep;
}

double contrast_ms(const ColorImage& image) {
    double total = 0.0;
    for (const Plane& ch : image.channels) {
        double mean = 0.0;
        for (double v : ch.values)
            mean += v;
        mean /= static_cast<double>(ch.size());
        double var = 0.0;
        for (double v : ch.values)
            var += (v - mean) * (v - mean);
        total += var / static_cast<double>(ch.size());
    }
    return total;
}

ReferenceReport compare(const ColorImage& reference, const ColorImage& test) {
    ReferenceReport rep;
    rep.mse = mse(reference, test);
    rep.psnr = rep.mse == 0.0 ? std::numeric_limits<double>::infinity()
                              : 10.0 * std::log10(1.0 / rep.mse);
    rep.ssim = ssim(reference, test);
    return rep;
}

} // namespace mwto

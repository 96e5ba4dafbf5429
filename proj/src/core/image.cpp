#include "core/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mwto {

Plane::Plane(int r, int c, double fill)
    : rows(r), cols(c), values(static_cast<size_t>(r) * static_cast<size_t>(c), fill) {
    if (r < 1 || c < 1)
        throw std::invalid_argument("Plane dimensions must be positive");
}

ColorImage normalize_bytes(std::span<const uint8_t> rgb, int rows, int cols) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("normalize_bytes: dimensions must be positive");
    const size_t expected = static_cast<size_t>(rows) * cols * 3;
    if (rgb.size() != expected)
        throw std::invalid_argument("normalize_bytes: buffer length does not match rows*cols*3");

    ColorImage out;
    for (auto& ch : out.channels)
        ch = Plane(rows, cols);
    const uint8_t* p = rgb.data();
    for (size_t i = 0; i < static_cast<size_t>(rows) * cols; ++i) {
        out.channels[0].values[i] = p[3 * i + 0] / 255.0;
        out.channels[1].values[i] = p[3 * i + 1] / 255.0;
        out.channels[2].values[i] = p[3 * i + 2] / 255.0;
    }
    return out;
}

namespace {

// Symmetric (whole-sample mirror) index: 0,1,...,n-1,n-1,...,1,0 repeating.
int mirror_index(int i, int n) {
    const int period = 2 * n;
    int m = i % period;
    if (m < 0)
        m += period;
    return m < n ? m : period - 1 - m;
}

} // namespace

Plane pad_plane(const Plane& plane, int pad_bottom, int pad_right) {
    if (pad_bottom < 0 || pad_right < 0)
        throw std::invalid_argument("pad_plane: negative padding");
    if (pad_bottom == 0 && pad_right == 0)
        return plane;
    Plane out(plane.rows + pad_bottom, plane.cols + pad_right);
    for (int r = 0; r < out.rows; ++r) {
        const int sr = mirror_index(r, plane.rows);
        for (int c = 0; c < out.cols; ++c)
            out(r, c) = plane(sr, mirror_index(c, plane.cols));
    }
    return out;
}

std::pair<ColorImage, CropBox> pad_dyadic(const ColorImage& image, int levels) {
    if (levels < 0)
        throw std::invalid_argument("pad_dyadic: levels must be non-negative");
    const int block = 1 << levels;
    const int rows = image.rows();
    const int cols = image.cols();
    const int padded_rows = ((rows + block - 1) / block) * block;
    const int padded_cols = ((cols + block - 1) / block) * block;

    CropBox box{rows, cols, padded_rows - rows, padded_cols - cols};
    ColorImage out;
    for (int c = 0; c < 3; ++c)
        out.channels[c] = pad_plane(image.channels[c], box.pad_bottom, box.pad_right);
    return {std::move(out), box};
}

Plane crop_plane(const Plane& plane, int rows, int cols) {
    if (rows > plane.rows || cols > plane.cols)
        throw std::invalid_argument("crop: box exceeds image");
    if (rows == plane.rows && cols == plane.cols)
        return plane;
    Plane out(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            out(r, c) = plane(r, c);
    return out;
}

ColorImage crop(const ColorImage& image, const CropBox& box) {
    ColorImage out;
    for (int c = 0; c < 3; ++c)
        out.channels[c] = crop_plane(image.channels[c], box.orig_rows, box.orig_cols);
    return out;
}

Plane clamp_unit(const Plane& plane) {
    Plane out = plane;
    for (double& v : out.values)
        v = std::clamp(v, 0.0, 1.0);
    return out;
}

std::vector<uint8_t> quantize_plane(const Plane& plane) {
    std::vector<uint8_t> out(plane.size());
    for (size_t i = 0; i < plane.size(); ++i) {
        const double v = std::clamp(plane.values[i], 0.0, 1.0);
        out[i] = static_cast<uint8_t>(std::lround(v * 255.0));
    }
    return out;
}

std::vector<uint8_t> quantize_image(const ColorImage& image) {
    std::vector<uint8_t> out(static_cast<size_t>(image.rows()) * image.cols() * 3);
    for (int c = 0; c < 3; ++c) {
        const Plane& ch = image.channels[c];
        for (size_t i = 0; i < ch.size(); ++i) {
            const double v = std::clamp(ch.values[i], 0.0, 1.0);
            out[3 * i + c] = static_cast<uint8_t>(std::lround(v * 255.0));
        }
    }
    return out;
}

} // namespace mwto

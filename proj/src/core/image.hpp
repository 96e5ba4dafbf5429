#ifndef MWTO_CORE_IMAGE_HPP
#define MWTO_CORE_IMAGE_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mwto {

/// Dense row-major matrix of doubles. All image planes, sub-band blocks and
/// transmission maps in the library are Planes.
struct Plane {
    int rows = 0;
    int cols = 0;
    std::vector<double> values;

    Plane() = default;
    Plane(int r, int c, double fill = 0.0);

    double& operator()(int r, int c) { return values[static_cast<size_t>(r) * cols + c]; }
    double operator()(int r, int c) const { return values[static_cast<size_t>(r) * cols + c]; }

    size_t size() const { return values.size(); }
    bool same_dims(const Plane& other) const { return rows == other.rows && cols == other.cols; }
};

/// Three equally sized planes in RGB order, values expected in [0,1].
struct ColorImage {
    std::array<Plane, 3> channels;

    int rows() const { return channels[0].rows; }
    int cols() const { return channels[0].cols; }
};

/// Bookkeeping for dyadic padding: original size plus how much mirror
/// padding was appended at the bottom/right edges.
struct CropBox {
    int orig_rows = 0;
    int orig_cols = 0;
    int pad_bottom = 0;
    int pad_right = 0;
};

/// Per-pixel light transmission, values in (0,1]; pipeline outputs keep
/// them within [epsilon, 1].
struct TransmissionMap {
    Plane plane;
};

/// Converts an interleaved 8-bit RGB buffer (rows*cols*3 bytes) into unit
/// interval planes, value = byte/255.
ColorImage normalize_bytes(std::span<const uint8_t> rgb, int rows, int cols);

/// Pads an image with symmetric (mirror) extension at the bottom/right so
/// both dimensions become multiples of 2^levels. levels = 0 is a no-op.
std::pair<ColorImage, CropBox> pad_dyadic(const ColorImage& image, int levels);

/// Mirror-pads a single plane; shared by pad_dyadic and test fixtures.
Plane pad_plane(const Plane& plane, int pad_bottom, int pad_right);

/// Returns the top-left orig_rows x orig_cols region.
ColorImage crop(const ColorImage& image, const CropBox& box);
Plane crop_plane(const Plane& plane, int rows, int cols);

/// Elementwise min(max(v,0),1).
Plane clamp_unit(const Plane& plane);

/// Quantizes a unit-interval plane to bytes, value = round(255*v) clamped.
std::vector<uint8_t> quantize_plane(const Plane& plane);

/// Quantizes a color image to an interleaved 8-bit RGB buffer.
std::vector<uint8_t> quantize_image(const ColorImage& image);

} // namespace mwto

#endif

#include "core/airlight.hpp"

#include <algorithm>
#include <stdexcept>

namespace mwto {

namespace {

// Global max of the 3x3-eroded plane. The erosion is separable: a 1-D
// horizontal min pass followed by a vertical min over the row results.
double max_of_eroded(const Plane& p) {
    const int rows = p.rows;
    const int cols = p.cols;
    Plane row_min(rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            double m = p(r, c);
            if (c > 0)
                m = std::min(m, p(r, c - 1));
            if (c + 1 < cols)
                m = std::min(m, p(r, c + 1));
            row_min(r, c) = m;
        }
    }
    double best = 0.0;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            double m = row_min(r, c);
            if (r > 0)
                m = std::min(m, row_min(r - 1, c));
            if (r + 1 < rows)
                m = std::min(m, row_min(r + 1, c));
            best = std::max(best, m);
        }
    }
    return best;
}

} // namespace

Airlight estimate_airlight(const ColorImage& image) {
    if (image.rows() < 3 || image.cols() < 3)
        throw std::invalid_argument("estimate_airlight: image must be at least 3x3");
    Airlight out;
    for (int c = 0; c < 3; ++c)
        out.a[static_cast<size_t>(c)] =
            std::clamp(max_of_eroded(image.channels[static_cast<size_t>(c)]), kAirlightFloor, 1.0);
    return out;
}

} // namespace mwto

#ifndef MWTO_TOOLS_PNG_IO_HPP
#define MWTO_TOOLS_PNG_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

// PNG decode/encode for the CLI boundary. The library itself only ever
// sees raw buffers. Failures throw std::runtime_error with the path in
// the message.
namespace pngio {

struct Rgb8 {
    int rows = 0;
    int cols = 0;
    std::vector<uint8_t> data; // interleaved RGB, rows*cols*3
};

struct Gray16 {
    int rows = 0;
    int cols = 0;
    std::vector<uint16_t> data; // rows*cols
};

// Any color type is accepted and converted: palettes expanded, gray
// promoted, alpha stripped, 16-bit reduced.
Rgb8 read_rgb8(const std::string& path);

// Grayscale only (8 or 16 bit); 8-bit samples are promoted by *257.
Gray16 read_gray16(const std::string& path);

void write_rgb8(const std::string& path, int rows, int cols, const uint8_t* data);
void write_gray8(const std::string& path, int rows, int cols, const uint8_t* data);

} // namespace pngio

#endif

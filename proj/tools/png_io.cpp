#include "png_io.hpp"

#include <png.h>

#include <cstdio>
#include <memory>
#include <stdexcept>

namespace pngio {

namespace {

struct FileCloser {
    void operator()(FILE* f) const {
        if (f)
            std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<FILE, FileCloser>;

[[noreturn]] void fail(const std::string& path, const char* what) {
    throw std::runtime_error(path + ": " + what);
}

// Replace libpng's default handlers: errors unwind through setjmp without
// the default stderr chatter, warnings are dropped.
void on_error(png_structp png, png_const_charp) { png_longjmp(png, 1); }
void on_warning(png_structp, png_const_charp) {}

struct Reader {
    png_structp png = nullptr;
    png_infop info = nullptr;

    Reader() {
        png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, on_error, on_warning);
        if (png)
            info = png_create_info_struct(png);
    }
    ~Reader() { png_destroy_read_struct(&png, &info, nullptr); }
    bool ok() const { return png && info; }
};

struct Writer {
    png_structp png = nullptr;
    png_infop info = nullptr;

    Writer() {
        png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, on_error, on_warning);
        if (png)
            info = png_create_info_struct(png);
    }
    ~Writer() { png_destroy_write_struct(&png, &info); }
    bool ok() const { return png && info; }
};

} // namespace

Rgb8 read_rgb8(const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp)
        fail(path, "cannot open file");

    Reader rd;
    if (!rd.ok())
        fail(path, "libpng initialization failed");
    if (setjmp(png_jmpbuf(rd.png)))
        fail(path, "not a decodable PNG");

    png_init_io(rd.png, fp.get());
    png_read_info(rd.png, rd.info);

    png_set_palette_to_rgb(rd.png);
    png_set_expand_gray_1_2_4_to_8(rd.png);
    if (png_get_valid(rd.png, rd.info, PNG_INFO_tRNS))
        png_set_tRNS_to_alpha(rd.png);
    png_set_scale_16(rd.png);
    png_set_strip_alpha(rd.png);
    png_set_gray_to_rgb(rd.png);
    png_read_update_info(rd.png, rd.info);

    const png_uint_32 w = png_get_image_width(rd.png, rd.info);
    const png_uint_32 h = png_get_image_height(rd.png, rd.info);
    if (png_get_rowbytes(rd.png, rd.info) != w * 3)
        fail(path, "unexpected row layout after RGB conversion");

    Rgb8 out;
    out.rows = static_cast<int>(h);
    out.cols = static_cast<int>(w);
    out.data.resize(static_cast<size_t>(w) * h * 3);
    std::vector<png_bytep> row_ptrs(h);
    for (png_uint_32 r = 0; r < h; ++r)
        row_ptrs[r] = out.data.data() + static_cast<size_t>(r) * w * 3;
    png_read_image(rd.png, row_ptrs.data());
    png_read_end(rd.png, nullptr);
    return out;
}

Gray16 read_gray16(const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp)
        fail(path, "cannot open file");

    Reader rd;
    if (!rd.ok())
        fail(path, "libpng initialization failed");
    if (setjmp(png_jmpbuf(rd.png)))
        fail(path, "not a decodable PNG");

    png_init_io(rd.png, fp.get());
    png_read_info(rd.png, rd.info);

    const png_byte color = png_get_color_type(rd.png, rd.info);
    if (color != PNG_COLOR_TYPE_GRAY)
        fail(path, "depth maps must be grayscale PNGs");
    png_set_expand_gray_1_2_4_to_8(rd.png);
    png_read_update_info(rd.png, rd.info);

    const png_uint_32 w = png_get_image_width(rd.png, rd.info);
    const png_uint_32 h = png_get_image_height(rd.png, rd.info);
    const png_byte depth = png_get_bit_depth(rd.png, rd.info);

    Gray16 out;
    out.rows = static_cast<int>(h);
    out.cols = static_cast<int>(w);
    out.data.resize(static_cast<size_t>(w) * h);

    if (depth == 16) {
        std::vector<uint8_t> raw(static_cast<size_t>(w) * h * 2);
        std::vector<png_bytep> row_ptrs(h);
        for (png_uint_32 r = 0; r < h; ++r)
            row_ptrs[r] = raw.data() + static_cast<size_t>(r) * w * 2;
        png_read_image(rd.png, row_ptrs.data());
        for (size_t i = 0; i < out.data.size(); ++i)
            out.data[i] = static_cast<uint16_t>((raw[2 * i] << 8) | raw[2 * i + 1]);
    } else if (depth == 8) {
        std::vector<uint8_t> raw(static_cast<size_t>(w) * h);
        std::vector<png_bytep> row_ptrs(h);
        for (png_uint_32 r = 0; r < h; ++r)
            row_ptrs[r] = raw.data() + static_cast<size_t>(r) * w;
        png_read_image(rd.png, row_ptrs.data());
        for (size_t i = 0; i < out.data.size(); ++i)
            out.data[i] = static_cast<uint16_t>(raw[i] * 257);
    } else {
        fail(path, "unsupported grayscale bit depth");
    }
    png_read_end(rd.png, nullptr);
    return out;
}

namespace {

void write_png(const std::string& path, int rows, int cols, const uint8_t* data,
               int color_type, int channels) {
    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp)
        fail(path, "cannot open file for writing");

    Writer wr;
    if (!wr.ok())
        fail(path, "libpng initialization failed");
    if (setjmp(png_jmpbuf(wr.png)))
        fail(path, "PNG write failed");

    png_init_io(wr.png, fp.get());
    png_set_IHDR(wr.png, wr.info, static_cast<png_uint_32>(cols),
                 static_cast<png_uint_32>(rows), 8, color_type, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(wr.png, wr.info);

    std::vector<png_bytep> row_ptrs(static_cast<size_t>(rows));
    for (int r = 0; r < rows; ++r)
        row_ptrs[static_cast<size_t>(r)] =
            const_cast<png_bytep>(data + static_cast<size_t>(r) * cols * channels);
    png_write_image(wr.png, row_ptrs.data());
    png_write_end(wr.png, nullptr);
}

} // namespace

void write_rgb8(const std::string& path, int rows, int cols, const uint8_t* data) {
    write_png(path, rows, cols, data, PNG_COLOR_TYPE_RGB, 3);
}

void write_gray8(const std::string& path, int rows, int cols, const uint8_t* data) {
    write_png(path, rows, cols, data, PNG_COLOR_TYPE_GRAY, 1);
}

} // namespace pngio

#include "harmatte/png_io.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace harmatte {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

[[noreturn]] void fail(const std::filesystem::path& path, const char* what) {
    throw std::runtime_error(std::string(what) + ": " + path.string());
}

struct PngReader {
    png_structp png = nullptr;
    png_infop info = nullptr;

    PngReader() {
        png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
        if (png) info = png_create_info_struct(png);
    }
    ~PngReader() { png_destroy_read_struct(&png, &info, nullptr); }
};

struct PngWriter {
    png_structp png = nullptr;
    png_infop info = nullptr;

    PngWriter() {
        png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
        if (png) info = png_create_info_struct(png);
    }
    ~PngWriter() { png_destroy_write_struct(&png, &info); }
};

// Decodes to 8-bit with `channels` = 3 (forces RGB) or 1 (requires grayscale).
void read_png_bytes(const std::filesystem::path& path, int channels, int& width, int& height,
                    std::vector<std::uint8_t>& bytes) {
    FilePtr fp(std::fopen(path.string().c_str(), "rb"));
    if (!fp) fail(path, "cannot open PNG for reading");
    PngReader r;
    if (!r.png || !r.info) fail(path, "cannot allocate PNG reader");
    std::vector<png_bytep> rows;
    if (setjmp(png_jmpbuf(r.png))) fail(path, "failed to decode PNG");
    png_init_io(r.png, fp.get());
    png_read_info(r.png, r.info);

    png_uint_32 w = png_get_image_width(r.png, r.info);
    png_uint_32 h = png_get_image_height(r.png, r.info);
    int color_type = png_get_color_type(r.png, r.info);
    int bit_depth = png_get_bit_depth(r.png, r.info);
    if (w < 1 || h < 1) fail(path, "empty PNG");

    if (channels == 3) {
        if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(r.png);
        if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(r.png);
        if (png_get_valid(r.png, r.info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(r.png);
        if (bit_depth == 16) png_set_strip_16(r.png);
        if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA) {
            png_set_gray_to_rgb(r.png);
        }
        png_set_strip_alpha(r.png);
    } else {
        if (color_type != PNG_COLOR_TYPE_GRAY && color_type != PNG_COLOR_TYPE_GRAY_ALPHA) {
            fail(path, "expected a grayscale PNG");
        }
        if (bit_depth < 8) png_set_expand_gray_1_2_4_to_8(r.png);
        if (bit_depth == 16) png_set_strip_16(r.png);
        png_set_strip_alpha(r.png);
    }
    png_read_update_info(r.png, r.info);
    if (png_get_channels(r.png, r.info) != static_cast<png_byte>(channels) ||
        png_get_bit_depth(r.png, r.info) != 8) {
        fail(path, "unsupported PNG layout");
    }

    width = static_cast<int>(w);
    height = static_cast<int>(h);
    bytes.resize(static_cast<std::size_t>(width) * height * channels);
    rows.resize(h);
    for (png_uint_32 y = 0; y < h; ++y) {
        rows[y] = bytes.data() + static_cast<std::size_t>(y) * width * channels;
    }
    png_read_image(r.png, rows.data());
    png_read_end(r.png, nullptr);
}

void write_png_bytes(const std::filesystem::path& path, int channels, int width, int height,
                     const std::vector<std::uint8_t>& bytes) {
    FilePtr fp(std::fopen(path.string().c_str(), "wb"));
    if (!fp) fail(path, "cannot open PNG for writing");
    PngWriter wr;
    if (!wr.png || !wr.info) fail(path, "cannot allocate PNG writer");
    std::vector<png_bytep> rows(height);
    for (int y = 0; y < height; ++y) {
        rows[y] = const_cast<png_bytep>(bytes.data() + static_cast<std::size_t>(y) * width * channels);
    }
    if (setjmp(png_jmpbuf(wr.png))) fail(path, "failed to encode PNG");
    png_init_io(wr.png, fp.get());
    png_set_compression_level(wr.png, 6);
    png_set_IHDR(wr.png, wr.info, width, height, 8,
                 channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(wr.png, wr.info);
    png_write_image(wr.png, rows.data());
    png_write_end(wr.png, nullptr);
}

}  // namespace

std::uint8_t encode_u8(double value) {
    long v = std::lround(value * 255.0);
    if (v < 0) v = 0;
    if (v > 255) v = 255;
    return static_cast<std::uint8_t>(v);
}

RgbImage load_rgb_png(const std::filesystem::path& path) {
    int w = 0, h = 0;
    std::vector<std::uint8_t> bytes;
    read_png_bytes(path, 3, w, h, bytes);
    RgbImage img(w, h);
    for (std::size_t i = 0; i < bytes.size(); ++i) img.data[i] = bytes[i] / 255.0;
    return img;
}

AlphaMatte load_alpha_png(const std::filesystem::path& path) {
    int w = 0, h = 0;
    std::vector<std::uint8_t> bytes;
    read_png_bytes(path, 1, w, h, bytes);
    AlphaMatte m(w, h);
    for (std::size_t i = 0; i < bytes.size(); ++i) m.data[i] = bytes[i] / 255.0;
    return m;
}

Trimap load_trimap_png(const std::filesystem::path& path) {
    int w = 0, h = 0;
    std::vector<std::uint8_t> bytes;
    read_png_bytes(path, 1, w, h, bytes);
    Trimap t(w, h);
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        switch (bytes[i]) {
            case 0: t.labels[i] = TrimapLabel::Background; break;
            case 128: t.labels[i] = TrimapLabel::Unknown; break;
            case 255: t.labels[i] = TrimapLabel::Foreground; break;
            default: fail(path, "trimap PNG contains a value other than 0/128/255");
        }
    }
    return t;
}

void save_rgb_png(const std::filesystem::path& path, const RgbImage& img) {
    img.validate();
    std::vector<std::uint8_t> bytes(img.data.size());
    for (std::size_t i = 0; i < bytes.size(); ++i) bytes[i] = encode_u8(img.data[i]);
    write_png_bytes(path, 3, img.width, img.height, bytes);
}

void save_alpha_png(const std::filesystem::path& path, const AlphaMatte& alpha) {
    alpha.validate();
    std::vector<std::uint8_t> bytes(alpha.data.size());
    for (std::size_t i = 0; i < bytes.size(); ++i) bytes[i] = encode_u8(alpha.data[i]);
    write_png_bytes(path, 1, alpha.width, alpha.height, bytes);
}

void save_trimap_png(const std::filesystem::path& path, const Trimap& trimap) {
    detail::require(trimap.width >= 1 && trimap.height >= 1 &&
                        trimap.labels.size() == trimap.pixel_count(),
                    "save_trimap_png: bad trimap dimensions");
    std::vector<std::uint8_t> bytes(trimap.labels.size());
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        switch (trimap.labels[i]) {
            case TrimapLabel::Background: bytes[i] = 0; break;
            case TrimapLabel::Unknown: bytes[i] = 128; break;
            case TrimapLabel::Foreground: bytes[i] = 255; break;
        }
    }
    write_png_bytes(path, 1, trimap.width, trimap.height, bytes);
}

}  // namespace harmatte

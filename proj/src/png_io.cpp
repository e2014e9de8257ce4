#include "fundopt/png_io.hpp"

#include "fundopt/imaging.hpp"

#include <png.h>

#include <cstdio>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace fundopt {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) {
            std::fclose(f);
        }
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

[[noreturn]] void fail(const std::filesystem::path& path,
                       const std::string& what) {
    throw std::runtime_error(path.string() + ": " + what);
}

// Decodes to interleaved 8-bit RGB rows.
void read_rgb_rows(const std::filesystem::path& path, png_uint_32& width,
                   png_uint_32& height, std::vector<std::uint8_t>& rgb) {
    FilePtr file(std::fopen(path.string().c_str(), "rb"));
    if (!file) {
        fail(path, "cannot open for reading");
    }

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                             nullptr, nullptr);
    if (!png) {
        fail(path, "png_create_read_struct failed");
    }
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        fail(path, "png_create_info_struct failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail(path, "invalid PNG data");
    }

    png_init_io(png, file.get());
    png_read_info(png, info);

    width = png_get_image_width(png, info);
    height = png_get_image_height(png, info);
    const int color_type = png_get_color_type(png, info);
    const int bit_depth = png_get_bit_depth(png, info);

    if (bit_depth == 16) {
        png_set_strip_16(png);
    }
    if (color_type == PNG_COLOR_TYPE_PALETTE) {
        png_set_palette_to_rgb(png);
    }
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) {
        png_set_expand_gray_1_2_4_to_8(png);
    }
    if (png_get_valid(png, info, PNG_INFO_tRNS)) {
        png_set_tRNS_to_alpha(png);
    }
    if (color_type == PNG_COLOR_TYPE_GRAY ||
        color_type == PNG_COLOR_TYPE_GRAY_ALPHA) {
        png_set_gray_to_rgb(png);
    }
    png_set_strip_alpha(png);
    png_read_update_info(png, info);

    rgb.assign(static_cast<std::size_t>(width) * height * 3, 0);
    std::vector<png_bytep> row_ptrs(height);
    for (png_uint_32 y = 0; y < height; ++y) {
        row_ptrs[y] = rgb.data() + static_cast<std::size_t>(y) * width * 3;
    }
    png_read_image(png, row_ptrs.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
}

void write_rows(const std::filesystem::path& path, png_uint_32 width,
                png_uint_32 height, int color_type,
                const std::vector<std::uint8_t>& data, std::size_t stride) {
    FilePtr file(std::fopen(path.string().c_str(), "wb"));
    if (!file) {
        fail(path, "cannot open for writing");
    }

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                              nullptr, nullptr);
    if (!png) {
        fail(path, "png_create_write_struct failed");
    }
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        fail(path, "png_create_info_struct failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        fail(path, "PNG write failed");
    }

    png_init_io(png, file.get());
    png_set_IHDR(png, info, width, height, 8, color_type,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    std::vector<png_bytep> row_ptrs(height);
    for (png_uint_32 y = 0; y < height; ++y) {
        row_ptrs[y] = const_cast<png_bytep>(
            data.data() + static_cast<std::size_t>(y) * stride);
    }
    png_write_image(png, row_ptrs.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

} // namespace

RgbImage read_png_rgb(const std::filesystem::path& path) {
    png_uint_32 width = 0;
    png_uint_32 height = 0;
    std::vector<std::uint8_t> rgb;
    read_rgb_rows(path, width, height, rgb);

    RgbImage img = RgbImage::zero(height, width);
    for (png_uint_32 y = 0; y < height; ++y) {
        const std::uint8_t* row =
            rgb.data() + static_cast<std::size_t>(y) * width * 3;
        for (png_uint_32 x = 0; x < width; ++x) {
            img.r(y, x) = row[3 * x];
            img.g(y, x) = row[3 * x + 1];
            img.b(y, x) = row[3 * x + 2];
        }
    }
    return img;
}

GrayImage read_png_gray(const std::filesystem::path& path) {
    return rgb_to_gray(read_png_rgb(path));
}

BinaryMask read_png_mask(const std::filesystem::path& path) {
    const GrayImage gray = read_png_gray(path);
    return gray.cast<int>() > 0;
}

void write_png_rgb(const std::filesystem::path& path, const RgbImage& img) {
    const auto width = static_cast<png_uint_32>(img.width());
    const auto height = static_cast<png_uint_32>(img.height());
    std::vector<std::uint8_t> rgb(static_cast<std::size_t>(width) * height * 3);
    for (png_uint_32 y = 0; y < height; ++y) {
        std::uint8_t* row = rgb.data() + static_cast<std::size_t>(y) * width * 3;
        for (png_uint_32 x = 0; x < width; ++x) {
            row[3 * x] = img.r(y, x);
            row[3 * x + 1] = img.g(y, x);
            row[3 * x + 2] = img.b(y, x);
        }
    }
    write_rows(path, width, height, PNG_COLOR_TYPE_RGB, rgb,
               static_cast<std::size_t>(width) * 3);
}

void write_png_gray(const std::filesystem::path& path, const GrayImage& img) {
    const auto width = static_cast<png_uint_32>(img.cols());
    const auto height = static_cast<png_uint_32>(img.rows());
    std::vector<std::uint8_t> gray(static_cast<std::size_t>(width) * height);
    for (png_uint_32 y = 0; y < height; ++y) {
        for (png_uint_32 x = 0; x < width; ++x) {
            gray[static_cast<std::size_t>(y) * width + x] = img(y, x);
        }
    }
    write_rows(path, width, height, PNG_COLOR_TYPE_GRAY, gray, width);
}

} // namespace fundopt

#pragma once

#include "fundopt/image.hpp"

#include <filesystem>

namespace fundopt {

/// Reads any PNG as 8-bit RGB (palette expanded, alpha stripped, 16-bit
/// narrowed, grayscale replicated). Throws std::runtime_error on failure.
RgbImage read_png_rgb(const std::filesystem::path& path);

/// Reads any PNG as 8-bit grayscale via the same conversions plus luma.
GrayImage read_png_gray(const std::filesystem::path& path);

/// Reads a PNG as a mask: nonzero gray value = foreground.
BinaryMask read_png_mask(const std::filesystem::path& path);

void write_png_rgb(const std::filesystem::path& path, const RgbImage& img);
void write_png_gray(const std::filesystem::path& path, const GrayImage& img);

} // namespace fundopt

#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "jsmreg/image.hpp"

namespace jsmreg {

/// 8-bit interleaved RGB raster, used for visual exports.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;  // r, g, b per pixel, row-major

  RgbImage() = default;
  RgbImage(int w, int h)
      : width(w), height(h), data(static_cast<std::size_t>(w) * h * 3, 0) {}

  std::uint8_t* at(int x, int y) {
    return &data[(static_cast<std::size_t>(y) * width + x) * 3];
  }
  const std::uint8_t* at(int x, int y) const {
    return &data[(static_cast<std::size_t>(y) * width + x) * 3];
  }
};

/// Raw 8-bit grayscale raster as stored on disk.
struct Gray8 {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;
};

/// Reads a binary PGM (P5). 16-bit files are reduced to 8 bits.
/// Throws std::runtime_error on malformed input.
Gray8 read_pgm8(const std::filesystem::path& path);
void write_pgm8(const std::filesystem::path& path, const Gray8& img);

/// Reads a PNG of any color type; color is reduced to the mean of R, G and B.
Gray8 read_png8(const std::filesystem::path& path);
void write_png8(const std::filesystem::path& path, const Gray8& img);

void write_rgb(const std::filesystem::path& path, const RgbImage& img);

/// Intensity conversion: byte b <-> b / 255. Values are clamped to [0, 1]
/// and rounded, so 8-bit data round-trips exactly.
Image to_image(const Gray8& raw);
Gray8 to_gray8(const Image& img);

/// Linear stretch of [min, max] to [0, 255]; a constant image maps to 128.
Gray8 to_gray8_normalized(const Image& img);

/// Dispatches on extension: .pgm or .png (case-insensitive).
Image read_image(const std::filesystem::path& path);
void write_image(const std::filesystem::path& path, const Image& img);
void write_image_normalized(const std::filesystem::path& path, const Image& img);

}  // namespace jsmreg

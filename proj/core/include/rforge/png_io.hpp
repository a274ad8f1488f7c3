#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <vector>

namespace rforge::render {

// Fixed-size RGB8 raster, row-major, 3 bytes per pixel.
struct RasterImage {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> pixels;

  static RasterImage filled(int width, int height, uint8_t r, uint8_t g, uint8_t b);

  uint8_t* at(int x, int y) { return pixels.data() + (static_cast<size_t>(y) * width + x) * 3; }
  const uint8_t* at(int x, int y) const {
    return pixels.data() + (static_cast<size_t>(y) * width + x) * 3;
  }

  friend bool operator==(const RasterImage&, const RasterImage&) = default;
};

struct PngError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// 8-bit RGB, no alpha, no ancillary chunks, filter type None on every
// scanline, fixed zlib level: byte-identical output for equal input.
std::vector<uint8_t> encode_png(const RasterImage& img);
void write_png(const std::filesystem::path& path, const RasterImage& img);

// Reads the canonical subset written above (8-bit RGB, non-interlaced; all
// five scanline filters accepted). Anything else is a PngError.
RasterImage decode_png(const std::vector<uint8_t>& bytes);
RasterImage read_png(const std::filesystem::path& path);

}  // namespace rforge::render

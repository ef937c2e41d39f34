#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace wiou::detail {

// 8-bit RGB pixels, row-major. Decoding expands indexed color, strips alpha
// and rejects grayscale and 16-bit inputs.
struct Rgb8Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // 3 bytes per pixel
};

Rgb8Image decode_png_rgb8(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> encode_png_rgb8(int width, int height, const std::uint8_t* rgb);
std::vector<std::uint8_t> encode_png_gray8(int width, int height, const std::uint8_t* gray);
std::vector<std::uint8_t> encode_png_gray16(int width, int height, const std::uint16_t* gray);

}  // namespace wiou::detail

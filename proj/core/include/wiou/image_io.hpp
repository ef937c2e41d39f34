#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "wiou/label_map.hpp"
#include "wiou/palette.hpp"

namespace wiou {

// PNG codecs for palette-colored label images. Decoding accepts 8-bit RGB,
// RGBA and indexed-color PNGs; every pixel color must resolve through the
// palette or decoding fails naming the offending pixel. Encoding emits 8-bit
// RGB with fixed settings, so equal maps produce identical bytes.
LabelMap decode_label_image(std::span<const std::uint8_t> png_bytes, const Palette& palette);
std::vector<std::uint8_t> encode_label_image(const LabelMap& map, const Palette& palette);

LabelMap load_label_image(const std::filesystem::path& file, const Palette& palette);
void save_label_image(const std::filesystem::path& file, const LabelMap& map,
                      const Palette& palette);

std::vector<std::uint8_t> read_binary_file(const std::filesystem::path& file);
void write_binary_file(const std::filesystem::path& file, std::span<const std::uint8_t> bytes);
std::string read_text_file(const std::filesystem::path& file);
void write_text_file(const std::filesystem::path& file, std::string_view text);

}  // namespace wiou

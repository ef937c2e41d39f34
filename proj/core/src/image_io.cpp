#include "wiou/image_io.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "png_codec.hpp"
#include "wiou/error.hpp"

namespace wiou {

LabelMap decode_label_image(std::span<const std::uint8_t> png_bytes, const Palette& palette) {
  const detail::Rgb8Image img = detail::decode_png_rgb8(png_bytes);
  LabelMap map;
  map.width = img.width;
  map.height = img.height;
  map.num_classes = palette.num_classes();
  map.ignore_id = palette.ignore_id();
  map.labels.resize(static_cast<std::size_t>(img.width) * img.height);
  for (std::size_t i = 0; i < map.labels.size(); ++i) {
    const std::uint8_t r = img.pixels[i * 3];
    const std::uint8_t g = img.pixels[i * 3 + 1];
    const std::uint8_t b = img.pixels[i * 3 + 2];
    const auto id = palette.id_for({r, g, b});
    if (!id) {
      const int x = static_cast<int>(i) % img.width;
      const int y = static_cast<int>(i / static_cast<std::size_t>(img.width));
      throw ValidationError("pixel (" + std::to_string(x) + ", " + std::to_string(y) +
                            ") has color (" + std::to_string(r) + ", " + std::to_string(g) +
                            ", " + std::to_string(b) + ") which is not in the palette");
    }
    map.labels[i] = *id;
  }
  return map;
}

std::vector<std::uint8_t> encode_label_image(const LabelMap& map, const Palette& palette) {
  map.validate();
  std::vector<std::uint8_t> rgb(map.size() * 3);
  for (std::size_t i = 0; i < map.size(); ++i) {
    const PaletteEntry* e = palette.entry_for(map.labels[i]);
    if (!e) {
      throw ValidationError("label " + std::to_string(map.labels[i]) +
                            " has no palette entry");
    }
    rgb[i * 3] = e->rgb[0];
    rgb[i * 3 + 1] = e->rgb[1];
    rgb[i * 3 + 2] = e->rgb[2];
  }
  return detail::encode_png_rgb8(map.width, map.height, rgb.data());
}

LabelMap load_label_image(const std::filesystem::path& file, const Palette& palette) {
  try {
    return decode_label_image(read_binary_file(file), palette);
  } catch (const ValidationError& e) {
    throw ValidationError(file.string() + ": " + e.what());
  } catch (const IoError& e) {
    throw IoError(file.string() + ": " + e.what());
  }
}

void save_label_image(const std::filesystem::path& file, const LabelMap& map,
                      const Palette& palette) {
  write_binary_file(file, encode_label_image(map, palette));
}

std::vector<std::uint8_t> read_binary_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + file.string());
  }
  std::vector<std::uint8_t> bytes;
  in.seekg(0, std::ios::end);
  const auto end = in.tellg();
  if (end < 0) {
    throw IoError("cannot determine size of " + file.string());
  }
  bytes.resize(static_cast<std::size_t>(end));
  in.seekg(0, std::ios::beg);
  in.read(reinterpret_cast<char*>(bytes.data()), end);
  if (!in) {
    throw IoError("failed reading " + file.string());
  }
  return bytes;
}

void write_binary_file(const std::filesystem::path& file, std::span<const std::uint8_t> bytes) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot write " + file.string());
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw IoError("failed writing " + file.string());
  }
}

std::string read_text_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + file.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in && !in.eof()) {
    throw IoError("failed reading " + file.string());
  }
  return buf.str();
}

void write_text_file(const std::filesystem::path& file, std::string_view text) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot write " + file.string());
  }
  out << text;
  if (!out) {
    throw IoError("failed writing " + file.string());
  }
}

}  // namespace wiou

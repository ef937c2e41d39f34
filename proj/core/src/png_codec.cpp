#include "png_codec.hpp"

#include <bit>
#include <csetjmp>
#include <cstring>
#include <limits>
#include <string>

#include <png.h>

#include "wiou/error.hpp"

namespace wiou::detail {

namespace {

struct Reader {
  std::span<const std::uint8_t> bytes;
  std::size_t pos = 0;
};

void read_callback(png_structp png, png_bytep out, png_size_t count) {
  auto* r = static_cast<Reader*>(png_get_io_ptr(png));
  if (r->pos + count > r->bytes.size()) {
    png_error(png, "unexpected end of stream");
  }
  std::memcpy(out, r->bytes.data() + r->pos, count);
  r->pos += count;
}

void write_callback(png_structp png, png_bytep data, png_size_t count) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + count);
}

void flush_callback(png_structp) {}

struct ReadGuard {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~ReadGuard() { png_destroy_read_struct(&png, &info, nullptr); }
};

struct WriteGuard {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~WriteGuard() { png_destroy_write_struct(&png, &info); }
};

// Fixed encoder settings keep the byte stream a pure function of the pixels.
void configure_deterministic_write(png_structp png) {
  png_set_compression_level(png, 6);
  png_set_compression_strategy(png, 0);
  png_set_filter(png, 0, PNG_FILTER_NONE);
}

std::vector<std::uint8_t> encode_rows(int width, int height, int color_type, int bit_depth,
                                      const std::vector<png_bytep>& rows) {
  WriteGuard g;
  g.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!g.png) {
    throw IoError("cannot initialize PNG encoder");
  }
  g.info = png_create_info_struct(g.png);
  if (!g.info) {
    throw IoError("cannot initialize PNG encoder");
  }
  std::vector<std::uint8_t> out;
  if (setjmp(png_jmpbuf(g.png))) {
    throw IoError("PNG encoding failed");
  }
  png_set_write_fn(g.png, &out, write_callback, flush_callback);
  configure_deterministic_write(g.png);
  png_set_IHDR(g.png, g.info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height),
               bit_depth, color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(g.png, g.info);
  if (bit_depth == 16 && std::endian::native == std::endian::little) {
    png_set_swap(g.png);  // rows hold host-endian 16-bit samples
  }
  png_write_image(g.png, const_cast<png_bytepp>(rows.data()));
  png_write_end(g.png, nullptr);
  return out;
}

}  // namespace

Rgb8Image decode_png_rgb8(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) {
    throw IoError("stream is not a PNG image");
  }
  ReadGuard g;
  g.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!g.png) {
    throw IoError("cannot initialize PNG decoder");
  }
  g.info = png_create_info_struct(g.png);
  if (!g.info) {
    throw IoError("cannot initialize PNG decoder");
  }
  if (setjmp(png_jmpbuf(g.png))) {
    throw IoError("PNG decoding failed");
  }
  Reader reader{bytes, 0};
  png_set_read_fn(g.png, &reader, read_callback);
  png_read_info(g.png, g.info);

  const png_uint_32 width = png_get_image_width(g.png, g.info);
  const png_uint_32 height = png_get_image_height(g.png, g.info);
  const int color_type = png_get_color_type(g.png, g.info);
  const int bit_depth = png_get_bit_depth(g.png, g.info);

  if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA) {
    throw IoError("grayscale PNG cannot carry palette-colored labels");
  }
  if (width == 0 || height == 0 ||
      width > static_cast<png_uint_32>(std::numeric_limits<int>::max()) ||
      height > static_cast<png_uint_32>(std::numeric_limits<int>::max())) {
    throw IoError("PNG dimensions out of range");
  }
  if (color_type == PNG_COLOR_TYPE_PALETTE) {
    png_set_palette_to_rgb(g.png);
  }
  if (bit_depth == 16) {
    png_set_strip_16(g.png);
  }
  if (png_get_valid(g.png, g.info, PNG_INFO_tRNS)) {
    png_set_tRNS_to_alpha(g.png);
  }
  png_set_strip_alpha(g.png);
  png_read_update_info(g.png, g.info);

  if (png_get_channels(g.png, g.info) != 3 || png_get_bit_depth(g.png, g.info) != 8) {
    throw IoError("PNG did not expand to 8-bit RGB");
  }

  Rgb8Image img;
  img.width = static_cast<int>(width);
  img.height = static_cast<int>(height);
  img.pixels.resize(static_cast<std::size_t>(width) * height * 3);
  std::vector<png_bytep> rows(height);
  for (png_uint_32 y = 0; y < height; ++y) {
    rows[y] = img.pixels.data() + static_cast<std::size_t>(y) * width * 3;
  }
  png_read_image(g.png, rows.data());
  png_read_end(g.png, nullptr);
  return img;
}

std::vector<std::uint8_t> encode_png_rgb8(int width, int height, const std::uint8_t* rgb) {
  std::vector<png_bytep> rows(height);
  for (int y = 0; y < height; ++y) {
    rows[y] = const_cast<png_bytep>(rgb + static_cast<std::size_t>(y) * width * 3);
  }
  return encode_rows(width, height, PNG_COLOR_TYPE_RGB, 8, rows);
}

std::vector<std::uint8_t> encode_png_gray8(int width, int height, const std::uint8_t* gray) {
  std::vector<png_bytep> rows(height);
  for (int y = 0; y < height; ++y) {
    rows[y] = const_cast<png_bytep>(gray + static_cast<std::size_t>(y) * width);
  }
  return encode_rows(width, height, PNG_COLOR_TYPE_GRAY, 8, rows);
}

std::vector<std::uint8_t> encode_png_gray16(int width, int height, const std::uint16_t* gray) {
  std::vector<png_bytep> rows(height);
  for (int y = 0; y < height; ++y) {
    rows[y] = const_cast<png_bytep>(
        reinterpret_cast<const std::uint8_t*>(gray + static_cast<std::size_t>(y) * width));
  }
  return encode_rows(width, height, PNG_COLOR_TYPE_GRAY, 16, rows);
}

}  // namespace wiou::detail

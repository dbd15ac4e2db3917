// Copyright 2026 The Lithoforge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "litho/image_io.hpp"

#include <jpeglib.h>
#include <png.h>

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "litho/errors.hpp"

namespace litho {

namespace {

constexpr std::uint8_t kPngMagic[8] = {0x89, 0x50, 0x4E, 0x47,
                                       0x0D, 0x0A, 0x1A, 0x0A};

bool looks_like_png(std::span<const std::uint8_t> bytes) {
  return bytes.size() >= 8 && std::memcmp(bytes.data(), kPngMagic, 8) == 0;
}

bool looks_like_jpeg(std::span<const std::uint8_t> bytes) {
  return bytes.size() >= 2 && bytes[0] == 0xFF && bytes[1] == 0xD8;
}

// ---------------------------------------------------------------- PNG read

struct PngMemReader {
  const std::uint8_t* data;
  std::size_t size;
  std::size_t pos;
};

void png_mem_read(png_structp png, png_bytep out, png_size_t n) {
  auto* r = static_cast<PngMemReader*>(png_get_io_ptr(png));
  if (r->pos + n > r->size)
    png_error(png, "read past end of stream");
  std::memcpy(out, r->data + r->pos, n);
  r->pos += n;
}

void png_on_error(png_structp png, png_const_charp msg) {
  // Stash the message; control returns through the setjmp in the caller.
  auto* err = static_cast<std::string*>(png_get_error_ptr(png));
  if (err) *err = msg ? msg : "libpng error";
  png_longjmp(png, 1);
}

void png_on_warning(png_structp, png_const_charp) {}

RasterImage decode_png(std::span<const std::uint8_t> bytes) {
  if (!looks_like_png(bytes)) throw MalformedFile("not a PNG stream");

  std::string errmsg;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &errmsg,
                                           png_on_error, png_on_warning);
  if (!png) throw IoFailure("png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw IoFailure("png_create_info_struct failed");
  }

  PngMemReader reader{bytes.data(), bytes.size(), 0};
  // Data written after setjmp must live outside the jump scope.
  std::vector<std::uint8_t> interleaved;
  std::vector<png_bytep> rows;
  png_uint_32 width = 0, height = 0;
  int bit_depth = 0, channels = 0;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw MalformedFile("PNG decode failed: " + errmsg);
  }

  png_set_read_fn(png, &reader, png_mem_read);
  png_read_info(png, info);

  width = png_get_image_width(png, info);
  height = png_get_image_height(png, info);
  const int color_type = png_get_color_type(png, info);
  bit_depth = png_get_bit_depth(png, info);

  if (width == 0 || height == 0) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw ZeroDimension("PNG has a zero dimension");
  }

  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8)
    png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  png_set_interlace_handling(png);
  png_read_update_info(png, info);

  bit_depth = png_get_bit_depth(png, info);
  channels = png_get_channels(png, info);
  const std::size_t rowbytes = png_get_rowbytes(png, info);

  interleaved.resize(rowbytes * height);
  rows.resize(height);
  for (png_uint_32 r = 0; r < height; ++r)
    rows[r] = interleaved.data() + r * rowbytes;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  RasterImage img;
  img.width = static_cast<int>(width);
  img.height = static_cast<int>(height);
  img.source_bit_depth = bit_depth == 16 ? 16 : 8;
  img.pixels.resize(static_cast<std::size_t>(width) * height);

  const double scale = bit_depth == 16 ? 65535.0 : 255.0;
  const std::size_t sample_bytes = bit_depth == 16 ? 2 : 1;
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    const std::uint8_t* px = interleaved.data() + i * channels * sample_bytes;
    auto sample = [&](int ch) -> double {
      const std::uint8_t* s = px + ch * sample_bytes;
      // PNG 16-bit samples are big-endian.
      const unsigned v = bit_depth == 16 ? (unsigned(s[0]) << 8 | s[1]) : s[0];
      return v / scale;
    };
    switch (channels) {
      case 1:
      case 2:  // gray (+ alpha, ignored)
        img.pixels[i] = sample(0);
        break;
      default:  // RGB / RGBA
        img.pixels[i] = to_grayscale(sample(0), sample(1), sample(2));
        break;
    }
  }
  return img;
}

// --------------------------------------------------------------- JPEG read

struct JpegErrorTrap {
  jpeg_error_mgr mgr;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX] = {};
};

void jpeg_on_error(j_common_ptr cinfo) {
  auto* trap = reinterpret_cast<JpegErrorTrap*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, trap->message);
  std::longjmp(trap->jump, 1);
}

RasterImage decode_jpeg(std::span<const std::uint8_t> bytes) {
  if (!looks_like_jpeg(bytes)) throw MalformedFile("not a JPEG stream");

  jpeg_decompress_struct cinfo;
  JpegErrorTrap trap;
  cinfo.err = jpeg_std_error(&trap.mgr);
  trap.mgr.error_exit = jpeg_on_error;

  std::vector<std::uint8_t> row;
  RasterImage img;

  if (setjmp(trap.jump)) {
    jpeg_destroy_decompress(&cinfo);
    throw MalformedFile(std::string("JPEG decode failed: ") + trap.message);
  }

  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
  jpeg_read_header(&cinfo, TRUE);

  if (cinfo.jpeg_color_space == JCS_CMYK ||
      cinfo.jpeg_color_space == JCS_YCCK) {
    jpeg_destroy_decompress(&cinfo);
    throw UnsupportedFormat("CMYK JPEG is not supported");
  }

  cinfo.out_color_space =
      cinfo.jpeg_color_space == JCS_GRAYSCALE ? JCS_GRAYSCALE : JCS_RGB;
  jpeg_start_decompress(&cinfo);

  const int w = static_cast<int>(cinfo.output_width);
  const int h = static_cast<int>(cinfo.output_height);
  const int channels = cinfo.output_components;
  if (w == 0 || h == 0) {
    jpeg_destroy_decompress(&cinfo);
    throw ZeroDimension("JPEG has a zero dimension");
  }

  img.width = w;
  img.height = h;
  img.source_bit_depth = 8;
  img.pixels.resize(static_cast<std::size_t>(w) * h);
  row.resize(static_cast<std::size_t>(w) * channels);

  while (cinfo.output_scanline < cinfo.output_height) {
    const int r = static_cast<int>(cinfo.output_scanline);
    JSAMPROW rowp = row.data();
    jpeg_read_scanlines(&cinfo, &rowp, 1);
    for (int c = 0; c < w; ++c) {
      const std::uint8_t* px = row.data() + static_cast<std::size_t>(c) * channels;
      img.pixels[static_cast<std::size_t>(r) * w + c] =
          channels == 1 ? px[0] / 255.0
                        : to_grayscale(px[0] / 255.0, px[1] / 255.0,
                                       px[2] / 255.0);
    }
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return img;
}

// ---------------------------------------------------------------- PNG write

void png_mem_write(png_structp png, png_bytep data, png_size_t n) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + n);
}

void png_mem_flush(png_structp) {}

}  // namespace

RasterImage decode(std::span<const std::uint8_t> bytes, ImageFormat format) {
  switch (format) {
    case ImageFormat::png:
      return decode_png(bytes);
    case ImageFormat::jpeg:
      return decode_jpeg(bytes);
  }
  throw UnsupportedFormat("unknown image format");
}

RasterImage decode_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (looks_like_png(bytes)) return decode_png(bytes);
  if (looks_like_jpeg(bytes)) return decode_jpeg(bytes);
  throw MalformedFile(path + ": not a PNG or JPEG file");
}

std::vector<std::uint8_t> encode_gray8_png(int width, int height,
                                           std::span<const std::uint8_t> gray) {
  if (width < 1 || height < 1) throw ZeroDimension("image has zero dimension");
  if (gray.size() != static_cast<std::size_t>(width) * height)
    throw Error("gray buffer does not match dimensions");

  std::string errmsg;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &errmsg,
                                            png_on_error, png_on_warning);
  if (!png) throw IoFailure("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw IoFailure("png_create_info_struct failed");
  }

  std::vector<std::uint8_t> out;
  std::vector<png_bytep> rows(height);
  for (int r = 0; r < height; ++r)
    rows[r] = const_cast<png_bytep>(gray.data() + static_cast<std::size_t>(r) * width);

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoFailure("PNG encode failed: " + errmsg);
  }

  png_set_write_fn(png, &out, png_mem_write, png_mem_flush);
  png_set_IHDR(png, info, width, height, 8, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

void write_gray8_png(const std::string& path, int width, int height,
                     std::span<const std::uint8_t> gray) {
  const std::vector<std::uint8_t> bytes = encode_gray8_png(width, height, gray);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoFailure("short write to " + path);
}

}  // namespace litho

// Copyright 2026 The retina-prep Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "retina/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <string>

#include "retina/error.hpp"

namespace retina {

namespace {

// ---------------------------------------------------------------------------
// PNG (libpng). libpng reports errors via longjmp, so everything that needs a
// destructor is constructed before setjmp and the C callbacks only touch the
// plain-old-data state below.

struct PngReadState {
  const std::uint8_t* data;
  std::size_t size;
  std::size_t offset;
  char message[200];
};

void png_read_from_memory(png_structp png, png_bytep out, png_size_t len) {
  auto* st = static_cast<PngReadState*>(png_get_io_ptr(png));
  if (len > st->size - st->offset) {
    png_error(png, "unexpected end of data");
  }
  std::memcpy(out, st->data + st->offset, len);
  st->offset += len;
}

void png_on_error(png_structp png, png_const_charp msg) {
  auto* st = static_cast<PngReadState*>(png_get_error_ptr(png));
  std::snprintf(st->message, sizeof(st->message), "%s", msg);
  png_longjmp(png, 1);
}

void png_on_warning(png_structp, png_const_charp) {}

enum class PngStatus { Ok, Error, Alpha };

struct PngPixels {
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t channels = 0;
  int bit_depth = 0;
  std::vector<std::uint8_t> buffer;
  std::vector<png_bytep> rows;
};

PngStatus png_decode_raw(png_structp png, png_infop info, PngPixels& px) {
  if (setjmp(png_jmpbuf(png))) {
    return PngStatus::Error;
  }
  png_read_info(png, info);
  const int color_type = png_get_color_type(png, info);
  const int depth = png_get_bit_depth(png, info);
  if ((color_type & PNG_COLOR_MASK_ALPHA) != 0 ||
      png_get_valid(png, info, PNG_INFO_tRNS) != 0) {
    return PngStatus::Alpha;
  }
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && depth < 8) {
    png_set_expand_gray_1_2_4_to_8(png);
  }
  png_read_update_info(png, info);

  px.width = png_get_image_width(png, info);
  px.height = png_get_image_height(png, info);
  px.channels = png_get_channels(png, info);
  px.bit_depth = png_get_bit_depth(png, info);
  const std::size_t row_bytes = png_get_rowbytes(png, info);
  px.buffer.resize(row_bytes * px.height);
  px.rows.resize(px.height);
  for (std::size_t y = 0; y < px.height; ++y) {
    px.rows[y] = px.buffer.data() + y * row_bytes;
  }
  png_read_image(png, px.rows.data());
  png_read_end(png, nullptr);
  return PngStatus::Ok;
}

struct PngReader {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngReader() { png_destroy_read_struct(&png, &info, nullptr); }
};

PngPixels read_png(std::span<const std::uint8_t> bytes) {
  PngReadState st{bytes.data(), bytes.size(), 0, {}};
  if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) {
    throw DecodeError("not a PNG signature", 0);
  }
  PngReader reader;
  reader.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &st,
                                      png_on_error, png_on_warning);
  if (reader.png == nullptr) throw Error("libpng: out of memory");
  reader.info = png_create_info_struct(reader.png);
  if (reader.info == nullptr) throw Error("libpng: out of memory");
  png_set_read_fn(reader.png, &st, png_read_from_memory);

  PngPixels px;
  switch (png_decode_raw(reader.png, reader.info, px)) {
    case PngStatus::Ok:
      break;
    case PngStatus::Alpha:
      throw UnsupportedFormatError(
          "PNG with an alpha channel or transparency is not supported");
    case PngStatus::Error:
      throw DecodeError(std::string("PNG: ") + st.message, st.offset);
  }
  if (px.channels != 1 && px.channels != 3) {
    throw UnsupportedFormatError("PNG with " + std::to_string(px.channels) +
                                 " channels is not supported");
  }
  return px;
}

ImagePlanar png_to_planar(const PngPixels& px) {
  const std::size_t n = px.width * px.height;
  const std::size_t ch = px.channels;
  std::vector<double> out(n * ch);
  for (std::size_t y = 0; y < px.height; ++y) {
    const std::uint8_t* row = px.rows[y];
    for (std::size_t x = 0; x < px.width; ++x) {
      for (std::size_t c = 0; c < ch; ++c) {
        const std::size_t i = x * ch + c;
        const double v =
            px.bit_depth == 16
                ? static_cast<double>((row[2 * i] << 8) | row[2 * i + 1]) / 65535.0
                : static_cast<double>(row[i]) / 255.0;
        out[c * n + y * px.width + x] = v;
      }
    }
  }
  return ImagePlanar(px.width, px.height, ch, std::move(out),
                     ValueDomain::UnitInterval);
}

struct PngWriteState {
  Bytes* out;
  char message[200];
};

void png_write_to_memory(png_structp png, png_bytep data, png_size_t len) {
  auto* st = static_cast<PngWriteState*>(png_get_io_ptr(png));
  st->out->insert(st->out->end(), data, data + len);
}

void png_flush_noop(png_structp) {}

void png_on_write_error(png_structp png, png_const_charp msg) {
  auto* st = static_cast<PngWriteState*>(png_get_error_ptr(png));
  std::snprintf(st->message, sizeof(st->message), "%s", msg);
  png_longjmp(png, 1);
}

bool png_encode_raw(png_structp png, png_infop info, std::size_t width,
                    std::size_t height, std::size_t channels,
                    std::vector<png_bytep>& rows) {
  if (setjmp(png_jmpbuf(png))) return false;
  png_set_IHDR(png, info, static_cast<png_uint_32>(width),
               static_cast<png_uint_32>(height), 8,
               channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  return true;
}

struct PngWriter {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngWriter() { png_destroy_write_struct(&png, &info); }
};

/// `interleaved` holds width*height*channels bytes.
Bytes write_png8(std::size_t width, std::size_t height, std::size_t channels,
                 std::vector<std::uint8_t>& interleaved) {
  Bytes out;
  PngWriteState st{&out, {}};
  PngWriter writer;
  writer.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &st,
                                       png_on_write_error, png_on_warning);
  if (writer.png == nullptr) throw Error("libpng: out of memory");
  writer.info = png_create_info_struct(writer.png);
  if (writer.info == nullptr) throw Error("libpng: out of memory");
  png_set_write_fn(writer.png, &st, png_write_to_memory, png_flush_noop);

  std::vector<png_bytep> rows(height);
  for (std::size_t y = 0; y < height; ++y) {
    rows[y] = interleaved.data() + y * width * channels;
  }
  if (!png_encode_raw(writer.png, writer.info, width, height, channels, rows)) {
    throw Error(std::string("PNG encode failed: ") + st.message);
  }
  return out;
}

std::uint8_t unit_to_byte(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::round(v * 255.0), 0.0, 255.0));
}

template <typename ToByte>
std::vector<std::uint8_t> interleave_bytes(const ImagePlanar& img, ToByte to_byte) {
  const std::size_t n = img.pixel_count();
  const std::size_t ch = img.channels();
  std::vector<std::uint8_t> out(n * ch);
  for (std::size_t c = 0; c < ch; ++c) {
    const auto plane = img.plane(c);
    for (std::size_t p = 0; p < n; ++p) out[p * ch + c] = to_byte(plane[p]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Netpbm-style headers: whitespace separated ASCII tokens, '#' comments.

class HeaderCursor {
 public:
  explicit HeaderCursor(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t offset() const { return pos_; }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const auto c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(c) != 0) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string token(const char* what) {
    skip_space_and_comments();
    const std::size_t start = pos_;
    while (pos_ < bytes_.size() && std::isspace(bytes_[pos_]) == 0) ++pos_;
    if (start == pos_) throw DecodeError(std::string("missing ") + what, start);
    return std::string(bytes_.begin() + start, bytes_.begin() + pos_);
  }

  unsigned long unsigned_token(const char* what, unsigned long lo, unsigned long hi) {
    const std::size_t start = (skip_space_and_comments(), pos_);
    const std::string t = token(what);
    if (!std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(c); })) {
      throw DecodeError(std::string("invalid ") + what + " '" + t + "'", start);
    }
    unsigned long v = 0;
    try {
      v = std::stoul(t);
    } catch (const std::exception&) {
      throw DecodeError(std::string("invalid ") + what + " '" + t + "'", start);
    }
    if (v < lo || v > hi) {
      throw DecodeError(std::string(what) + " " + t + " out of range", start);
    }
    return v;
  }

  /// Exactly one whitespace byte separates the header from the payload.
  void end_of_header() {
    if (pos_ >= bytes_.size() || std::isspace(bytes_[pos_]) == 0) {
      throw DecodeError("expected a single whitespace byte after the header", pos_);
    }
    ++pos_;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

constexpr unsigned long kMaxDimension = 1UL << 20;

ImagePlanar decode_pnm(std::span<const std::uint8_t> bytes) {
  HeaderCursor cur(bytes);
  const std::string magic = cur.token("magic");
  std::size_t channels = 0;
  if (magic == "P5") {
    channels = 1;
  } else if (magic == "P6") {
    channels = 3;
  } else {
    throw DecodeError("unsupported Netpbm magic '" + magic + "'", 0);
  }
  const std::size_t width = cur.unsigned_token("width", 1, kMaxDimension);
  const std::size_t height = cur.unsigned_token("height", 1, kMaxDimension);
  const unsigned long maxval = cur.unsigned_token("maxval", 1, 65535);
  cur.end_of_header();

  const std::size_t n = width * height;
  const std::size_t sample_bytes = maxval > 255 ? 2 : 1;
  const std::size_t need = n * channels * sample_bytes;
  const std::size_t start = cur.offset();
  if (bytes.size() - start < need) {
    throw DecodeError("payload truncated: need " + std::to_string(need) +
                          " bytes, have " + std::to_string(bytes.size() - start),
                      bytes.size());
  }
  const double scale = static_cast<double>(maxval);
  std::vector<double> out(n * channels);
  const std::uint8_t* data = bytes.data() + start;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t c = 0; c < channels; ++c) {
      const std::size_t i = p * channels + c;
      unsigned v = sample_bytes == 2 ? (data[2 * i] << 8) | data[2 * i + 1] : data[i];
      if (v > maxval) {
        throw DecodeError("sample exceeds maxval", start + i * sample_bytes);
      }
      out[c * n + p] = static_cast<double>(v) / scale;
    }
  }
  return ImagePlanar(width, height, channels, std::move(out),
                     ValueDomain::UnitInterval);
}

ImagePlanar decode_pfm(std::span<const std::uint8_t> bytes) {
  HeaderCursor cur(bytes);
  const std::string magic = cur.token("magic");
  std::size_t channels = 0;
  if (magic == "PF") {
    channels = 3;
  } else if (magic == "Pf") {
    channels = 1;
  } else {
    throw DecodeError("unsupported PFM magic '" + magic + "'", 0);
  }
  const std::size_t width = cur.unsigned_token("width", 1, kMaxDimension);
  const std::size_t height = cur.unsigned_token("height", 1, kMaxDimension);
  cur.skip_space_and_comments();
  const std::size_t scale_at = cur.offset();
  const std::string scale_tok = cur.token("scale");
  double scale = 0.0;
  try {
    std::size_t used = 0;
    scale = std::stod(scale_tok, &used);
    if (used != scale_tok.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw DecodeError("invalid PFM scale '" + scale_tok + "'", scale_at);
  }
  if (scale == 0.0 || !std::isfinite(scale)) {
    throw DecodeError("PFM scale must be finite and non-zero", scale_at);
  }
  cur.end_of_header();
  const bool little = scale < 0.0;

  const std::size_t n = width * height;
  const std::size_t need = n * channels * 4;
  const std::size_t start = cur.offset();
  if (bytes.size() - start < need) {
    throw DecodeError("payload truncated: need " + std::to_string(need) +
                          " bytes, have " + std::to_string(bytes.size() - start),
                      bytes.size());
  }
  std::vector<double> out(n * channels);
  const std::uint8_t* data = bytes.data() + start;
  for (std::size_t row = 0; row < height; ++row) {
    const std::size_t y = height - 1 - row;  // stored bottom to top
    for (std::size_t x = 0; x < width; ++x) {
      for (std::size_t c = 0; c < channels; ++c) {
        const std::uint8_t* b = data + ((row * width + x) * channels + c) * 4;
        const std::uint32_t bits =
            little ? (std::uint32_t{b[0]} | std::uint32_t{b[1]} << 8 |
                      std::uint32_t{b[2]} << 16 | std::uint32_t{b[3]} << 24)
                   : (std::uint32_t{b[3]} | std::uint32_t{b[2]} << 8 |
                      std::uint32_t{b[1]} << 16 | std::uint32_t{b[0]} << 24);
        out[c * n + y * width + x] = std::bit_cast<float>(bits);
      }
    }
  }
  return ImagePlanar(width, height, channels, std::move(out),
                     ValueDomain::UnitInterval);
}

}  // namespace

std::optional<ImageFormat> format_from_extension(const std::filesystem::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (ext == ".png") return ImageFormat::PNG;
  if (ext == ".ppm" || ext == ".pgm" || ext == ".pnm") return ImageFormat::PPM;
  if (ext == ".pfm") return ImageFormat::PFM;
  return std::nullopt;
}

std::optional<ImageFormat> sniff_format(std::span<const std::uint8_t> bytes) {
  if (bytes.size() >= 8 && png_sig_cmp(bytes.data(), 0, 8) == 0) {
    return ImageFormat::PNG;
  }
  if (bytes.size() >= 2 && bytes[0] == 'P') {
    if (bytes[1] == '5' || bytes[1] == '6') return ImageFormat::PPM;
    if (bytes[1] == 'F' || bytes[1] == 'f') return ImageFormat::PFM;
  }
  return std::nullopt;
}

ImagePlanar decode_image(std::span<const std::uint8_t> bytes, ImageFormat format) {
  switch (format) {
    case ImageFormat::PNG:
      return png_to_planar(read_png(bytes));
    case ImageFormat::PPM:
      return decode_pnm(bytes);
    case ImageFormat::PFM:
      return decode_pfm(bytes);
  }
  throw Error("unknown image format");
}

std::uint8_t visualization_level(double v) {
  const double level = std::round((v * -0.5 + 0.5) * 255.0);
  return static_cast<std::uint8_t>(std::clamp(level, 0.0, 255.0));
}

Bytes encode_visualization(const ImagePlanar& img) {
  if (img.domain() != ValueDomain::Signed) {
    throw DomainError("visualization expects a Signed image");
  }
  auto bytes = interleave_bytes(img, visualization_level);
  return write_png8(img.width(), img.height(), img.channels(), bytes);
}

Bytes encode_png8(const ImagePlanar& img) {
  if (img.domain() != ValueDomain::UnitInterval) {
    throw DomainError("8-bit PNG export expects a UnitInterval image");
  }
  auto bytes = interleave_bytes(img, unit_to_byte);
  return write_png8(img.width(), img.height(), img.channels(), bytes);
}

Bytes encode_ppm(const ImagePlanar& img) {
  if (img.domain() != ValueDomain::UnitInterval) {
    throw DomainError("PPM export expects a UnitInterval image");
  }
  const std::string header = std::string(img.channels() == 1 ? "P5" : "P6") +
                             "\n" + std::to_string(img.width()) + " " +
                             std::to_string(img.height()) + "\n255\n";
  Bytes out(header.begin(), header.end());
  const auto body = interleave_bytes(img, unit_to_byte);
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

Bytes encode_pfm(const ImagePlanar& img) {
  const std::string header = std::string(img.channels() == 1 ? "Pf" : "PF") +
                             "\n" + std::to_string(img.width()) + " " +
                             std::to_string(img.height()) + "\n-1.0\n";
  Bytes out(header.begin(), header.end());
  const std::size_t w = img.width();
  const std::size_t h = img.height();
  const std::size_t ch = img.channels();
  out.reserve(out.size() + w * h * ch * 4);
  for (std::size_t row = 0; row < h; ++row) {
    const std::size_t y = h - 1 - row;
    for (std::size_t x = 0; x < w; ++x) {
      for (std::size_t c = 0; c < ch; ++c) {
        const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(img.at(c, x, y)));
        for (int k = 0; k < 4; ++k) out.push_back(static_cast<std::uint8_t>(bits >> (8 * k)));
      }
    }
  }
  return out;
}

LabelImage decode_label_png(std::span<const std::uint8_t> bytes) {
  const PngPixels px = read_png(bytes);
  if (px.channels != 1 || px.bit_depth != 8) {
    throw UnsupportedFormatError("label maps must be 8-bit single-channel PNGs");
  }
  LabelImage out{px.width, px.height, {}};
  out.labels.resize(px.width * px.height);
  for (std::size_t y = 0; y < px.height; ++y) {
    std::memcpy(out.labels.data() + y * px.width, px.rows[y], px.width);
  }
  return out;
}

Bytes encode_label_png(const LabelImage& img) {
  auto bytes = img.labels;
  return write_png8(img.width, img.height, 1, bytes);
}

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("short write to " + path.string());
}

ImagePlanar load_image(const std::filesystem::path& path) {
  const Bytes bytes = read_file(path);
  auto format = format_from_extension(path);
  if (!format) format = sniff_format(bytes);
  if (!format) throw UnsupportedFormatError("unrecognized image format: " + path.string());
  return decode_image(bytes, *format);
}

}  // namespace retina

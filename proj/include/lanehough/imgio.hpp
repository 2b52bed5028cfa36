/*
 * Copyright 2026 The lanehough Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LANEHOUGH_IMGIO_HPP
#define LANEHOUGH_IMGIO_HPP

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "lanehough/errors.hpp"
#include "lanehough/image.hpp"

namespace lanehough {

enum class ImageFormat { pgm, png };

namespace detail {

inline std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Cursor over a PNM header: whitespace-separated decimal fields, '#' comments.
class PnmHeaderReader {
 public:
  PnmHeaderReader(const std::vector<std::uint8_t>& buf, const std::string& name)
      : buf_(buf), name_(name) {}

  std::size_t next_uint() {
    skip_space_and_comments();
    if (pos_ >= buf_.size() || !std::isdigit(buf_[pos_])) fail("expected a decimal field");
    std::size_t v = 0;
    while (pos_ < buf_.size() && std::isdigit(buf_[pos_])) {
      v = v * 10 + static_cast<std::size_t>(buf_[pos_++] - '0');
      if (v > (std::size_t{1} << 31)) fail("header field out of range");
    }
    return v;
  }

  /// Consumes the single whitespace byte that separates header from payload.
  std::size_t payload_offset() {
    if (pos_ >= buf_.size() || !std::isspace(buf_[pos_])) fail("missing separator after header");
    return pos_ + 1;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw FormatError("'" + name_ + "': " + what);
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < buf_.size()) {
      if (std::isspace(buf_[pos_])) {
        ++pos_;
      } else if (buf_[pos_] == '#') {
        while (pos_ < buf_.size() && buf_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<std::uint8_t>& buf_;
  const std::string& name_;
  std::size_t pos_ = 2;
};

inline GrayImage decode_pgm(const std::vector<std::uint8_t>& buf, const std::string& name) {
  PnmHeaderReader header(buf, name);
  const std::size_t width = header.next_uint();
  const std::size_t height = header.next_uint();
  const std::size_t maxval = header.next_uint();
  if (width == 0 || height == 0) header.fail("zero image dimension");
  if (maxval != 255) header.fail("maxval " + std::to_string(maxval) + " is not 255");
  const std::size_t offset = header.payload_offset();
  const std::size_t count = width * height;
  if (buf.size() - offset < count) header.fail("truncated pixel payload");
  std::vector<std::uint8_t> data(buf.begin() + static_cast<std::ptrdiff_t>(offset),
                                 buf.begin() + static_cast<std::ptrdiff_t>(offset + count));
  return GrayImage(width, height, std::move(data));
}

/// Integer-rounded BT.601 luma.
constexpr std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept {
  return static_cast<std::uint8_t>((299u * r + 587u * g + 114u * b + 500u) / 1000u);
}

inline GrayImage decode_png(const std::vector<std::uint8_t>& buf, const std::string& name) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, buf.data(), buf.size())) {
    throw FormatError("'" + name + "': " + image.message);
  }
  if (image.format & PNG_FORMAT_FLAG_LINEAR) {
    png_image_free(&image);
    throw FormatError("'" + name + "': only 8-bit PNG is supported");
  }
  const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
  image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  std::vector<std::uint8_t> raw(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, raw.data(), 0, nullptr)) {
    throw FormatError("'" + name + "': " + image.message);
  }
  const std::size_t width = image.width;
  const std::size_t height = image.height;
  if (!color) return GrayImage(width, height, std::move(raw));
  std::vector<std::uint8_t> gray(width * height);
  for (std::size_t i = 0; i < gray.size(); ++i) {
    gray[i] = luma(raw[3 * i], raw[3 * i + 1], raw[3 * i + 2]);
  }
  return GrayImage(width, height, std::move(gray));
}

inline void write_bytes(const std::filesystem::path& path, const std::string& header,
                        std::span<const std::uint8_t> payload) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  out.write(reinterpret_cast<const char*>(payload.data()),
            static_cast<std::streamsize>(payload.size()));
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

inline void write_png(const std::filesystem::path& path, std::size_t width, std::size_t height,
                      bool color, std::span<const std::uint8_t> bytes) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  // libpng reports failure through image.message; a missing directory is the common case.
  if (!png_image_write_to_file(&image, path.string().c_str(), 0, bytes.data(), 0, nullptr)) {
    throw IoError("cannot write '" + path.string() + "': " + image.message);
  }
}

}  // namespace detail

/// Reads a binary PGM (P5, maxval 255) or an 8-bit PNG. Color PNGs are
/// reduced to luma.
inline GrayImage load_gray(const std::filesystem::path& path) {
  const auto buf = detail::read_file(path);
  const std::string name = path.string();
  if (buf.size() >= 2 && buf[0] == 'P' && buf[1] == '5') return detail::decode_pgm(buf, name);
  static constexpr std::uint8_t png_sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (buf.size() >= 8 && std::memcmp(buf.data(), png_sig, 8) == 0) {
    return detail::decode_png(buf, name);
  }
  throw FormatError("'" + name + "': unrecognized image format (expected P5 PGM or PNG)");
}

/// Saves any 8-bit plane (gray, edge or binary stage).
template <typename Tag>
void save_image(const Plane<std::uint8_t, Tag>& img, const std::filesystem::path& path,
                ImageFormat format) {
  if (format == ImageFormat::pgm) {
    const std::string header =
        "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
    detail::write_bytes(path, header, img.pixels());
  } else {
    detail::write_png(path, img.width(), img.height(), false, img.pixels());
  }
}

inline void save_image(const RgbImage& img, const std::filesystem::path& path,
                       ImageFormat format) {
  if (format == ImageFormat::pgm) throw UsageError("RGB images cannot be saved as PGM");
  detail::write_png(path, img.width(), img.height(), true, img.bytes());
}

/// Picks the format from the extension: ".pgm" gives PGM, anything else PNG.
inline ImageFormat format_for(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext == ".pgm" ? ImageFormat::pgm : ImageFormat::png;
}

/// Surrounds the image with a ring of zeros `border` pixels wide.
template <typename T, typename Tag>
Plane<T, Tag> zero_pad(const Plane<T, Tag>& img, std::size_t border) {
  if (border == 0) return img;
  Plane<T, Tag> out(img.width() + 2 * border, img.height() + 2 * border);
  for (std::size_t y = 0; y < img.height(); ++y) {
    auto src = img.row(y);
    std::copy(src.begin(), src.end(), &out(border, y + border));
  }
  return out;
}

/// Surrounds the image with copies of its outermost pixels, `border` deep.
template <typename T, typename Tag>
Plane<T, Tag> replicate_pad(const Plane<T, Tag>& img, std::size_t border) {
  if (border == 0) return img;
  Plane<T, Tag> out(img.width() + 2 * border, img.height() + 2 * border);
  const std::size_t last_x = img.width() - 1;
  const std::size_t last_y = img.height() - 1;
  for (std::size_t y = 0; y < out.height(); ++y) {
    const std::size_t sy = std::min(y < border ? 0 : y - border, last_y);
    for (std::size_t x = 0; x < out.width(); ++x) {
      const std::size_t sx = std::min(x < border ? 0 : x - border, last_x);
      out(x, y) = img(sx, sy);
    }
  }
  return out;
}

}  // namespace lanehough

#endif  // LANEHOUGH_IMGIO_HPP

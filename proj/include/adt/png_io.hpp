// Copyright 2026 the ADT authors
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

#pragma once

#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include <png.h>

#include "adt/errors.hpp"

namespace adt {

/// Interleaved 8-bit RGB raster, row-major.
struct Image {
  uint32_t width = 0;
  uint32_t height = 0;
  std::vector<uint8_t> pixels;  // width * height * 3

  static Image zeros(uint32_t w, uint32_t h) {
    Image im;
    im.width = w;
    im.height = h;
    im.pixels.assign(static_cast<size_t>(w) * h * 3, 0);
    return im;
  }
};

/// Decodes a PNG file to RGB8, converting other color types on the fly.
inline Image read_png(const std::string& path) {
  png_image png;
  std::memset(&png, 0, sizeof(png));
  png.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&png, path.c_str())) {
    throw IoError("read " + path + ": " + png.message);
  }
  png.format = PNG_FORMAT_RGB;
  Image im;
  im.width = png.width;
  im.height = png.height;
  im.pixels.resize(PNG_IMAGE_SIZE(png));
  if (!png_image_finish_read(&png, nullptr, im.pixels.data(), 0, nullptr)) {
    const std::string msg = png.message;
    png_image_free(&png);
    throw ParseError("decode " + path + ": " + msg);
  }
  return im;
}

inline void write_png(const std::string& path, const Image& im) {
  if (im.pixels.size() != static_cast<size_t>(im.width) * im.height * 3) {
    throw ShapeError("write " + path + ": pixel buffer does not match dimensions");
  }
  png_image png;
  std::memset(&png, 0, sizeof(png));
  png.version = PNG_IMAGE_VERSION;
  png.width = im.width;
  png.height = im.height;
  png.format = PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&png, path.c_str(), 0, im.pixels.data(), 0, nullptr)) {
    throw IoError("write " + path + ": " + png.message);
  }
}

/// Copies the window [x, x+w) x [y, y+h) out of a source raster. The window
/// must lie inside the source.
inline Image crop(const Image& src, uint32_t x, uint32_t y, uint32_t w, uint32_t h) {
  if (x + w > src.width || y + h > src.height) {
    throw ShapeError("crop window exceeds source raster");
  }
  Image out = Image::zeros(w, h);
  const size_t src_stride = static_cast<size_t>(src.width) * 3;
  const size_t out_stride = static_cast<size_t>(w) * 3;
  for (uint32_t row = 0; row < h; ++row) {
    const uint8_t* from = src.pixels.data() + (static_cast<size_t>(y) + row) * src_stride +
                          static_cast<size_t>(x) * 3;
    std::memcpy(out.pixels.data() + row * out_stride, from, out_stride);
  }
  return out;
}

}  // namespace adt

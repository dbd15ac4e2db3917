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

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "litho/raster.hpp"

namespace litho {

enum class ImageFormat { png, jpeg };

/// Decodes a PNG (8/16-bit gray, gray+alpha, palette, RGB, RGBA) or a
/// baseline/progressive JPEG (8-bit gray/RGB) into a luminance raster.
/// Color inputs are reduced with to_grayscale; alpha is ignored; 8-bit
/// samples map v/255 and 16-bit samples v/65535.
///
/// Throws MalformedFile on bad magic or truncated streams,
/// UnsupportedFormat for color spaces outside the contract (e.g. CMYK
/// JPEG), and ZeroDimension when either dimension is zero.
RasterImage decode(std::span<const std::uint8_t> bytes, ImageFormat format);

/// Decodes a file, picking the format from its magic bytes.
RasterImage decode_file(const std::string& path);

/// Encodes an 8-bit grayscale PNG. Values round-trip exactly through
/// decode (k/255 quantization is the identity on 8-bit data).
std::vector<std::uint8_t> encode_gray8_png(int width, int height,
                                           std::span<const std::uint8_t> gray);

void write_gray8_png(const std::string& path, int width, int height,
                     std::span<const std::uint8_t> gray);

}  // namespace litho

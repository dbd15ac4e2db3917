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

#include "litho/raster.hpp"

#include <algorithm>
#include <cmath>

#include "litho/errors.hpp"
#include "litho/parallel.hpp"

namespace litho {

void RasterImage::validate() const {
  if (width < 1 || height < 1) throw ZeroDimension("raster has zero dimension");
  if (pixels.size() != static_cast<std::size_t>(width) * height)
    throw Error("raster pixel count does not match dimensions");
  for (double v : pixels)
    if (!(v >= 0.0 && v <= 1.0))
      throw Error("raster pixel outside [0,1]");
  if (micrometers_per_pixel &&
      !(*micrometers_per_pixel > 0.0 && std::isfinite(*micrometers_per_pixel)))
    throw Error("micrometers_per_pixel must be positive and finite");
  if (source_bit_depth != 8 && source_bit_depth != 16)
    throw Error("source_bit_depth must be 8 or 16");
}

double to_grayscale(double r, double g, double b) {
  return 0.299 * r + 0.587 * g + 0.114 * b;
}

RasterImage invert(const RasterImage& img) {
  RasterImage out = img;
  for (double& v : out.pixels) v = 1.0 - v;
  return out;
}

RasterImage brightness_contrast(const RasterImage& img, double brightness,
                                double contrast) {
  if (!(brightness >= -1.0 && brightness <= 1.0))
    throw ParameterOutOfRange("brightness must be in [-1, 1]");
  if (!(contrast >= 0.0) || !std::isfinite(contrast))
    throw ParameterOutOfRange("contrast must be >= 0 and finite");
  RasterImage out = img;
  // Same map as (v - 0.5) * contrast + 0.5 + brightness, arranged so the
  // neutral parameters (0, 1) are an exact identity.
  for (double& v : out.pixels)
    v = std::clamp(v + (v - 0.5) * (contrast - 1.0) + brightness, 0.0, 1.0);
  return out;
}

RasterImage gamma(const RasterImage& img, double g) {
  if (!(g > 0.0) || !std::isfinite(g))
    throw ParameterOutOfRange("gamma must be > 0 and finite");
  RasterImage out = img;
  for (double& v : out.pixels) v = std::pow(v, g);
  return out;
}

std::vector<double> gaussian_kernel(double sigma_px) {
  if (!(sigma_px > 0.0) || !std::isfinite(sigma_px))
    throw ParameterOutOfRange("blur sigma must be > 0 and finite");
  const int radius = static_cast<int>(std::ceil(3.0 * sigma_px));
  std::vector<double> w(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    w[i + radius] = std::exp(-(static_cast<double>(i) * i) /
                             (2.0 * sigma_px * sigma_px));
    sum += w[i + radius];
  }
  for (double& x : w) x /= sum;
  return w;
}

RasterImage gaussian_blur(const RasterImage& img, double sigma_px) {
  const std::vector<double> kernel = gaussian_kernel(sigma_px);
  const int radius = static_cast<int>(kernel.size() / 2);
  const int w = img.width;
  const int h = img.height;

  // Horizontal pass, then vertical. Rows (then columns) are independent,
  // so worker count cannot change the result. The sum is taken relative
  // to the center sample: with a unit-sum kernel the two forms agree, and
  // the relative form makes constant neighborhoods exact fixpoints.
  std::vector<double> tmp(img.pixels.size());
  parallel_for(0, static_cast<std::size_t>(h), [&](std::size_t r) {
    const double* src = img.pixels.data() + r * w;
    double* dst = tmp.data() + r * w;
    for (int c = 0; c < w; ++c) {
      double acc = src[c];
      for (int i = -radius; i <= radius; ++i) {
        const int cc = std::clamp(c + i, 0, w - 1);
        acc += kernel[i + radius] * (src[cc] - src[c]);
      }
      dst[c] = acc;
    }
  });

  RasterImage out = img;
  parallel_for(0, static_cast<std::size_t>(h), [&](std::size_t r) {
    const double* col = tmp.data() + r * w;
    double* dst = out.pixels.data() + r * w;
    for (int c = 0; c < w; ++c) {
      double acc = col[c];
      for (int i = -radius; i <= radius; ++i) {
        const int rr = std::clamp(static_cast<int>(r) + i, 0, h - 1);
        acc += kernel[i + radius] *
               (tmp[static_cast<std::size_t>(rr) * w + c] - col[c]);
      }
      // Convex combination of [0,1] values; clamp shaves rounding spill.
      dst[c] = std::clamp(acc, 0.0, 1.0);
    }
  });
  return out;
}

RasterImage posterize(const RasterImage& img, int levels) {
  if (levels < 2) throw ParameterOutOfRange("posterize levels must be >= 2");
  RasterImage out = img;
  const double n = static_cast<double>(levels - 1);
  for (double& v : out.pixels) v = std::round(v * n) / n;
  return out;
}

}  // namespace litho

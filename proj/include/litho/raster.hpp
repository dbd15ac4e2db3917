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

#include <optional>
#include <vector>

namespace litho {

/// A decoded 2D intensity grid. Pixels are row-major luminance values in
/// [0, 1], stored in double precision regardless of the source bit depth
/// (16-bit sources keep their full precision through the pipeline).
struct RasterImage {
  int width = 0;
  int height = 0;
  std::vector<double> pixels;  // row-major, size == width * height
  int source_bit_depth = 8;    // 8 or 16
  // Physical calibration of the source micrograph, when known (> 0).
  std::optional<double> micrometers_per_pixel;

  double at(int row, int col) const {
    return pixels[static_cast<std::size_t>(row) * width + col];
  }
  double& at(int row, int col) {
    return pixels[static_cast<std::size_t>(row) * width + col];
  }

  /// Throws if dimensions, pixel count, value range, or calibration violate
  /// the type's invariants.
  void validate() const;
};

/// BT.601 luma. Weights 0.299/0.587/0.114 are fixed, not configurable.
double to_grayscale(double r, double g, double b);

/// v -> 1 - v per pixel. Involution; dimensions and calibration unchanged.
RasterImage invert(const RasterImage& img);

/// v -> clamp((v - 0.5) * contrast + 0.5 + brightness, 0, 1).
/// brightness in [-1, 1], contrast >= 0.
RasterImage brightness_contrast(const RasterImage& img, double brightness,
                                double contrast);

/// v -> v^g for g > 0. Endpoints 0 and 1 are fixed for any g.
RasterImage gamma(const RasterImage& img, double g);

/// Separable Gaussian convolution. Discrete kernel w(i) ~ exp(-i^2/(2*s^2))
/// truncated at |i| <= ceil(3*s) and renormalized to sum exactly 1 per axis,
/// so constant images are exact fixpoints. Boundary handling clamps to the
/// edge pixel. Bit-identical output for any worker count.
RasterImage gaussian_blur(const RasterImage& img, double sigma_px);

/// v -> round(v * (levels-1)) / (levels-1); at most `levels` distinct
/// output values. levels >= 2. Idempotent.
RasterImage posterize(const RasterImage& img, int levels);

/// The normalized 1D blur kernel for a given sigma (offsets -R..R,
/// R = ceil(3*sigma)). Exposed for verification.
std::vector<double> gaussian_kernel(double sigma_px);

}  // namespace litho

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

#include "litho/raster.hpp"

namespace litho {

/// external: brighter prints taller (tactile relief convention).
/// internal: brighter prints thinner (backlit lithophane convention);
/// equal to running external on the inverted image.
enum class ReliefMode { external, internal };

struct ReliefParams {
  ReliefMode mode = ReliefMode::external;
  double base_mm = 2.0;    // solid plate under the relief
  double relief_mm = 3.0;  // maximum relief above the base
  double target_width_mm = 100.0;

  void validate() const;
};

/// A regular grid of physical heights (mm). Row-major, row 0 at the bottom
/// edge of the printed plate (image rows are flipped on ingest so the plate
/// reads correctly from above). Grid vertices sit at pixel centers; the
/// physical width spans (cols-1) * pitch_mm.
struct Heightfield {
  int cols = 0;
  int rows = 0;
  std::vector<double> heights;  // row-major z in mm
  double pitch_mm = 0.0;
  double base_mm = 0.0;
  double relief_mm = 0.0;
  // mm of print per micrometer of specimen, when the source was calibrated.
  std::optional<double> mm_per_micrometer;

  double at(int row, int col) const {
    return heights[static_cast<std::size_t>(row) * cols + col];
  }
  double& at(int row, int col) {
    return heights[static_cast<std::size_t>(row) * cols + col];
  }
  double width_mm() const { return (cols - 1) * pitch_mm; }
  double depth_mm() const { return (rows - 1) * pitch_mm; }

  void validate() const;
};

/// Maps a raster to a heightfield, one grid vertex per pixel.
/// external: h = base + v * relief; internal: h = base + (1-v) * relief.
/// pitch = target_width / (width - 1). Throws ImageTooSmall below 2x2.
Heightfield from_image(const RasterImage& img, const ReliefParams& params);

/// Block-average pooling over k x k vertex blocks (partial edge blocks
/// average their members). The physical width is preserved by rescaling
/// the pitch. Throws ResultTooSmall if the result would drop below 2x2.
Heightfield downsample(const Heightfield& hf, int k);

/// Volume in mm^3 under the tessellated surface, computed as the sum of
/// triangular prisms using the same cell diagonal as the mesher, so it
/// matches the mesh's signed volume exactly up to accumulation error.
double column_volume(const Heightfield& hf);

}  // namespace litho

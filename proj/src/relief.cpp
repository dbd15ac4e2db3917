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

#include "litho/relief.hpp"

#include <cmath>

#include "litho/errors.hpp"

namespace litho {

void ReliefParams::validate() const {
  if (!(base_mm > 0.0) || !std::isfinite(base_mm))
    throw ParameterOutOfRange("base_mm must be > 0");
  if (!(relief_mm > 0.0) || !std::isfinite(relief_mm))
    throw ParameterOutOfRange("relief_mm must be > 0");
  if (!(target_width_mm > 0.0) || !std::isfinite(target_width_mm))
    throw ParameterOutOfRange("target_width_mm must be > 0");
}

void Heightfield::validate() const {
  if (cols < 2 || rows < 2) throw Error("heightfield must be at least 2x2");
  if (heights.size() != static_cast<std::size_t>(cols) * rows)
    throw Error("heightfield size does not match dimensions");
  if (!(pitch_mm > 0.0) || !std::isfinite(pitch_mm))
    throw Error("heightfield pitch must be > 0");
  const double lo = base_mm;
  const double hi = base_mm + relief_mm;
  for (double h : heights)
    if (!(h >= lo && h <= hi)) throw Error("height outside [base, base+relief]");
  if (mm_per_micrometer && !(*mm_per_micrometer > 0.0))
    throw Error("mm_per_micrometer must be > 0");
}

Heightfield from_image(const RasterImage& img, const ReliefParams& params) {
  params.validate();
  if (img.width < 2 || img.height < 2)
    throw ImageTooSmall("relief needs at least a 2x2 image");

  Heightfield hf;
  hf.cols = img.width;
  hf.rows = img.height;
  hf.pitch_mm = params.target_width_mm / (img.width - 1);
  hf.base_mm = params.base_mm;
  hf.relief_mm = params.relief_mm;
  if (img.micrometers_per_pixel)
    hf.mm_per_micrometer = hf.pitch_mm / *img.micrometers_per_pixel;

  hf.heights.resize(static_cast<std::size_t>(hf.cols) * hf.rows);
  const bool external = params.mode == ReliefMode::external;
  for (int r = 0; r < hf.rows; ++r) {
    // Grid row 0 is the bottom image row; see Heightfield docs.
    const int img_row = img.height - 1 - r;
    for (int c = 0; c < hf.cols; ++c) {
      const double v = img.at(img_row, c);
      hf.at(r, c) = params.base_mm +
                    (external ? v : 1.0 - v) * params.relief_mm;
    }
  }
  return hf;
}

Heightfield downsample(const Heightfield& hf, int k) {
  if (k < 1) throw ParameterOutOfRange("downsample factor must be >= 1");
  if (k == 1) return hf;

  const int cols_out = (hf.cols + k - 1) / k;
  const int rows_out = (hf.rows + k - 1) / k;
  if (cols_out < 2 || rows_out < 2)
    throw ResultTooSmall("downsample would leave fewer than 2x2 vertices");

  Heightfield out;
  out.cols = cols_out;
  out.rows = rows_out;
  out.base_mm = hf.base_mm;
  out.relief_mm = hf.relief_mm;
  // Physical footprint is preserved; mm per specimen micrometer with it.
  out.pitch_mm = hf.width_mm() / (cols_out - 1);
  out.mm_per_micrometer = hf.mm_per_micrometer;
  out.heights.resize(static_cast<std::size_t>(cols_out) * rows_out);

  for (int br = 0; br < rows_out; ++br) {
    const int r0 = br * k;
    const int r1 = std::min(r0 + k, hf.rows);
    for (int bc = 0; bc < cols_out; ++bc) {
      const int c0 = bc * k;
      const int c1 = std::min(c0 + k, hf.cols);
      double sum = 0.0;
      for (int r = r0; r < r1; ++r)
        for (int c = c0; c < c1; ++c) sum += hf.at(r, c);
      out.at(br, bc) = sum / ((r1 - r0) * (c1 - c0));
    }
  }
  return out;
}

double column_volume(const Heightfield& hf) {
  hf.validate();
  // Two prisms per cell, split along the (r,c) -> (r+1,c+1) diagonal to
  // mirror tessellate()'s decomposition.
  const double cell_area = hf.pitch_mm * hf.pitch_mm;
  double volume = 0.0;
  for (int r = 0; r + 1 < hf.rows; ++r) {
    for (int c = 0; c + 1 < hf.cols; ++c) {
      const double h00 = hf.at(r, c);
      const double h01 = hf.at(r, c + 1);
      const double h10 = hf.at(r + 1, c);
      const double h11 = hf.at(r + 1, c + 1);
      volume += cell_area / 6.0 * ((h00 + h01 + h11) + (h00 + h11 + h10));
    }
  }
  return volume;
}

}  // namespace litho

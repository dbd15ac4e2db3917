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

#include "litho/relief.hpp"

namespace litho {

/// Raised rim around the plate for edge-finding by touch. The height is
/// clamped to the plate's relief ceiling.
struct FrameSpec {
  double width_mm = 2.0;
  double height_mm = 1.5;
};

/// One embossed full-relief bar per plate whose printed length equals the
/// given specimen length at the plate's magnification.
struct ScaleBarSpec {
  double specimen_length_um = 0.0;
  double bar_thickness_mm = 1.0;
  double margin_mm = 5.0;  // height of the base-level strip holding the bar
};

struct PanelPlacement {
  Heightfield field;
  int grid_row = 0;  // row 0 renders at the top of the plate
  int grid_col = 0;
};

struct PlateLayout {
  std::vector<PanelPlacement> panels;
  double gutter_mm = 0.0;
  std::optional<FrameSpec> frame;
  std::optional<ScaleBarSpec> scale_bar;
};

/// Printed bar length for a specimen length:
/// specimen_length_um * pitch_mm / um_per_px.
double scale_bar_length_mm(double specimen_length_um, double pitch_mm,
                           double um_per_px);

/// Flattens the layout onto one plate: panels in their grid cells separated
/// by base-height gutters, an optional raised frame ring, and an optional
/// scale-bar strip appended below the panel area. All panels must share
/// base_mm; mixed pitches are resampled (bilinear) to the finest pitch, so
/// exact panel copies are only guaranteed for uniform-pitch layouts. The
/// result feeds tessellate() unchanged.
Heightfield compose(const PlateLayout& layout);

}  // namespace litho

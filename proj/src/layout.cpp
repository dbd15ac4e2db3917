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

#include "litho/layout.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "litho/errors.hpp"

namespace litho {

namespace {

long long cells_for(double mm, double pitch) {
  return std::llround(mm / pitch);
}

// Bilinear resample onto a finer pitch, preserving the physical footprint.
Heightfield resample(const Heightfield& hf, double pitch_out) {
  if (hf.pitch_mm == pitch_out) return hf;
  Heightfield out;
  out.base_mm = hf.base_mm;
  out.relief_mm = hf.relief_mm;
  out.pitch_mm = pitch_out;
  out.mm_per_micrometer = hf.mm_per_micrometer;
  out.cols = static_cast<int>(cells_for(hf.width_mm(), pitch_out)) + 1;
  out.rows = static_cast<int>(cells_for(hf.depth_mm(), pitch_out)) + 1;
  out.heights.resize(static_cast<std::size_t>(out.cols) * out.rows);
  for (int r = 0; r < out.rows; ++r) {
    const double gy = std::min(r * pitch_out / hf.pitch_mm,
                               static_cast<double>(hf.rows - 1));
    const int r0 = std::min(static_cast<int>(gy), hf.rows - 2);
    const double fy = gy - r0;
    for (int c = 0; c < out.cols; ++c) {
      const double gx = std::min(c * pitch_out / hf.pitch_mm,
                                 static_cast<double>(hf.cols - 1));
      const int c0 = std::min(static_cast<int>(gx), hf.cols - 2);
      const double fx = gx - c0;
      const double h =
          (1 - fy) * ((1 - fx) * hf.at(r0, c0) + fx * hf.at(r0, c0 + 1)) +
          fy * ((1 - fx) * hf.at(r0 + 1, c0) + fx * hf.at(r0 + 1, c0 + 1));
      out.at(r, c) = h;
    }
  }
  return out;
}

}  // namespace

double scale_bar_length_mm(double specimen_length_um, double pitch_mm,
                           double um_per_px) {
  if (!(specimen_length_um > 0.0) || !(pitch_mm > 0.0) || !(um_per_px > 0.0))
    throw ParameterOutOfRange("scale bar inputs must be positive");
  return specimen_length_um * pitch_mm / um_per_px;
}

Heightfield compose(const PlateLayout& layout) {
  if (layout.panels.empty()) throw EmptyLayout("layout has no panels");
  if (!(layout.gutter_mm >= 0.0))
    throw ParameterOutOfRange("gutter must be >= 0");
  if (layout.frame && !(layout.frame->width_mm > 0.0))
    throw ParameterOutOfRange("frame width must be > 0");
  if (layout.scale_bar) {
    const auto& sb = *layout.scale_bar;
    if (!(sb.specimen_length_um > 0.0) || !(sb.bar_thickness_mm > 0.0))
      throw ParameterOutOfRange("scale bar lengths must be > 0");
    if (!(sb.margin_mm >= sb.bar_thickness_mm))
      throw ParameterOutOfRange("scale bar margin must cover the bar");
  }

  const double base = layout.panels.front().field.base_mm;
  double relief = 0.0;
  double pitch = layout.panels.front().field.pitch_mm;
  for (const auto& p : layout.panels) {
    p.field.validate();
    if (p.field.base_mm != base)
      throw MixedBaseHeights("panels disagree on base thickness");
    relief = std::max(relief, p.field.relief_mm);
    pitch = std::min(pitch, p.field.pitch_mm);
  }

  // Scale-bar calibration: every panel must know its magnification and all
  // panels must agree, otherwise a single bar would lie for some panel.
  double mm_per_um = 0.0;
  if (layout.scale_bar) {
    for (const auto& p : layout.panels) {
      if (!p.field.mm_per_micrometer)
        throw CalibrationMissing(
            "scale bar requested but a panel has no calibration");
      const double v = *p.field.mm_per_micrometer;
      if (mm_per_um == 0.0)
        mm_per_um = v;
      else if (std::fabs(v - mm_per_um) > 1e-12 * mm_per_um)
        throw CalibrationMissing("panels disagree on magnification");
    }
  }

  // Resample mixed pitches onto the finest one.
  std::vector<Heightfield> fields;
  fields.reserve(layout.panels.size());
  int grid_rows = 0, grid_cols = 0;
  for (const auto& p : layout.panels) {
    if (p.grid_row < 0 || p.grid_col < 0)
      throw ParameterOutOfRange("panel grid position must be non-negative");
    grid_rows = std::max(grid_rows, p.grid_row + 1);
    grid_cols = std::max(grid_cols, p.grid_col + 1);
    fields.push_back(resample(p.field, pitch));
  }

  // Cell extents per grid row/column (in grid cells, not mm).
  std::vector<long long> row_cells(grid_rows, 0), col_cells(grid_cols, 0);
  std::vector<int> cell_owner(static_cast<std::size_t>(grid_rows) * grid_cols,
                              -1);
  for (std::size_t i = 0; i < layout.panels.size(); ++i) {
    const auto& p = layout.panels[i];
    auto& owner =
        cell_owner[static_cast<std::size_t>(p.grid_row) * grid_cols + p.grid_col];
    if (owner >= 0)
      throw ParameterOutOfRange("two panels share one grid cell");
    owner = static_cast<int>(i);
    row_cells[p.grid_row] =
        std::max(row_cells[p.grid_row], static_cast<long long>(fields[i].rows - 1));
    col_cells[p.grid_col] =
        std::max(col_cells[p.grid_col], static_cast<long long>(fields[i].cols - 1));
  }

  const long long gutter_cells = cells_for(layout.gutter_mm, pitch);
  const long long frame_cells =
      layout.frame ? std::max(1ll, cells_for(layout.frame->width_mm, pitch)) : 0;
  const long long margin_cells =
      layout.scale_bar
          ? std::max(1ll, cells_for(layout.scale_bar->margin_mm, pitch))
          : 0;

  long long panel_block_rows = 0;
  for (long long rc : row_cells) panel_block_rows += rc;
  panel_block_rows += gutter_cells * (grid_rows - 1);
  long long panel_block_cols = 0;
  for (long long cc : col_cells) panel_block_cols += cc;
  panel_block_cols += gutter_cells * (grid_cols - 1);

  const long long total_rows_cells =
      panel_block_rows + margin_cells + 2 * frame_cells;
  const long long total_cols_cells = panel_block_cols + 2 * frame_cells;

  Heightfield out;
  out.cols = static_cast<int>(total_cols_cells) + 1;
  out.rows = static_cast<int>(total_rows_cells) + 1;
  out.pitch_mm = pitch;
  out.base_mm = base;
  out.relief_mm = relief;
  out.heights.assign(static_cast<std::size_t>(out.cols) * out.rows, base);

  // Shared magnification propagates to the plate.
  bool uniform_cal = true;
  std::optional<double> cal = fields.front().mm_per_micrometer;
  for (const auto& f : fields)
    uniform_cal = uniform_cal && f.mm_per_micrometer == cal;
  if (uniform_cal) out.mm_per_micrometer = cal;

  // Panels, anchored at the top-left of their grid cell. Grid row 0 is the
  // top of the plate; heightfield row 0 is the bottom.
  for (std::size_t i = 0; i < layout.panels.size(); ++i) {
    const auto& p = layout.panels[i];
    const Heightfield& f = fields[i];
    long long top_offset = frame_cells;
    for (int r = 0; r < p.grid_row; ++r)
      top_offset += row_cells[r] + gutter_cells;
    long long left_offset = frame_cells;
    for (int c = 0; c < p.grid_col; ++c)
      left_offset += col_cells[c] + gutter_cells;
    const long long base_row = total_rows_cells - top_offset - (f.rows - 1);
    for (int r = 0; r < f.rows; ++r)
      for (int c = 0; c < f.cols; ++c)
        out.at(static_cast<int>(base_row) + r,
               static_cast<int>(left_offset) + c) = f.at(r, c);
  }

  // Frame ring, raised and clamped to the relief ceiling. The shared
  // boundary vertex stays at content height, so the inner wall slopes
  // over one cell instead of clobbering panel edges.
  if (layout.frame) {
    const double frame_h =
        base + std::min(layout.frame->height_mm, relief);
    for (int r = 0; r < out.rows; ++r)
      for (int c = 0; c < out.cols; ++c)
        if (r < frame_cells || r > total_rows_cells - frame_cells ||
            c < frame_cells || c > total_cols_cells - frame_cells)
          out.at(r, c) = frame_h;
  }

  // Scale bar: a full-relief rectangle on the base-height strip below the
  // panels, inset one bar thickness from the left content edge.
  if (layout.scale_bar) {
    const auto& sb = *layout.scale_bar;
    const double bar_mm = sb.specimen_length_um * mm_per_um;
    const long long bar_cells = std::max(1ll, cells_for(bar_mm, pitch));
    const long long thick_cells =
        std::max(1ll, cells_for(sb.bar_thickness_mm, pitch));
    const long long x0 = frame_cells + thick_cells;
    const long long y0 = frame_cells + (margin_cells - thick_cells) / 2;
    if (x0 + bar_cells > total_cols_cells - frame_cells)
      throw ParameterOutOfRange("scale bar does not fit the plate width");
    const double bar_h = base + relief;
    for (long long r = y0; r <= y0 + thick_cells; ++r)
      for (long long c = x0; c <= x0 + bar_cells; ++c)
        out.at(static_cast<int>(r), static_cast<int>(c)) = bar_h;
  }

  return out;
}

}  // namespace litho

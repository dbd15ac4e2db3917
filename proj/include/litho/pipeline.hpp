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
#include <optional>
#include <string>
#include <vector>

#include "litho/fab.hpp"
#include "litho/layout.hpp"
#include "litho/mesh.hpp"
#include "litho/relief.hpp"

namespace litho {

enum class FilterKind { blur, brightness_contrast, gamma, posterize, invert };

struct FilterStep {
  FilterKind kind;
  double a = 0.0;  // sigma / brightness / gamma / levels
  double b = 1.0;  // contrast (brightness_contrast only)
};

/// Parses an ordered filter chain like "blur:1.0,posterize:8,invert".
/// Entries: blur:S, brightness:B, contrast:C, gamma:G, posterize:N, invert.
std::vector<FilterStep> parse_filter_chain(const std::string& spec);

/// Renders a chain back to its textual form (round-trips parse).
std::string filter_chain_to_string(const std::vector<FilterStep>& steps);

RasterImage apply_filters(const RasterImage& img,
                          const std::vector<FilterStep>& steps);

struct LayoutConfig {
  int grid_cols = 0;  // panels per row; 0 = single row
  double gutter_mm = 5.0;
  bool frame_on = false;
  FrameSpec frame;
  double scale_bar_um = 0.0;  // 0 = no scale bar
  double bar_thickness_mm = 1.0;
  double bar_margin_mm = 5.0;
};

/// One reproducible job: same config + same inputs = byte-identical
/// outputs, regardless of the worker count.
struct JobConfig {
  std::vector<std::string> inputs;
  std::string output;
  std::optional<double> micrometers_per_pixel;
  std::vector<FilterStep> filters;
  ReliefParams relief;
  std::uint64_t budget_bytes = 100'000'000;
  bool decimate_enabled = true;
  double decimate_eps_mm = 0.0;
  LayoutConfig layout;

  void validate() const;
};

struct ConvertSummary {
  std::vector<std::string> inputs;
  std::string output;
  std::string filters;
  int grid_cols = 0;
  int grid_rows = 0;
  double pitch_mm = 0.0;
  int downsample_k = 1;
  std::uint64_t triangles_tessellated = 0;
  std::uint64_t triangles = 0;
  std::uint64_t budget_bytes = 0;
  std::uint64_t predicted_bytes = 0;
  std::uint64_t actual_bytes = 0;
  bool budget_met = true;
  double volume_mm3 = 0.0;
  bool watertight = false;

  /// Versioned machine-readable form (schema_version 1).
  std::string to_json() const;
};

/// The mesh a config produces, before serialization: decode -> filters ->
/// relief -> compose -> budget-driven downsample -> tessellate ->
/// planar decimation. Summary fields that describe the file are left zero.
struct BuiltMesh {
  TriMesh mesh;
  ConvertSummary summary;
};
BuiltMesh build_mesh(const JobConfig& config);

/// Full convert: build_mesh + binary STL to config.output. The emitted
/// mesh is verified watertight before returning.
ConvertSummary run_convert(const JobConfig& config);

/// Writes the normalized heightmap ((h - base) / relief as 8-bit gray) and
/// a hillshade (light azimuth 315 degrees, elevation 45) of the composed
/// plate. No mesh is built and no downsampling is applied.
struct PreviewPaths {
  std::string heightmap;
  std::string hillshade;
};
PreviewPaths run_preview(const JobConfig& config);

/// Derives preview file names from an output path ("x.stl" ->
/// "x_height.png", "x_hillshade.png").
PreviewPaths preview_paths_for(const std::string& output);

/// Renders the preview bytes without touching the filesystem.
std::vector<std::uint8_t> render_heightmap_png(const Heightfield& hf);
std::vector<std::uint8_t> render_hillshade_png(const Heightfield& hf);

/// Estimates for the named profiles (rank_by_cost order). Unknown names
/// throw ConfigError naming the profile. An empty selection means all.
std::vector<FabEstimate> run_estimate(const TriMesh& mesh,
                                      const std::vector<std::string>& names,
                                      const std::vector<PrinterProfile>& pool);

}  // namespace litho

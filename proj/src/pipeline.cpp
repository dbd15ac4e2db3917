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

#include "litho/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "litho/decimate.hpp"
#include "litho/errors.hpp"
#include "litho/image_io.hpp"
#include "litho/stl.hpp"

namespace litho {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_value(const std::string& entry, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad filter parameter in '" + entry + "'");
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<FilterStep> parse_filter_chain(const std::string& spec) {
  std::vector<FilterStep> steps;
  if (trim(spec).empty()) return steps;
  for (const std::string& raw : split(spec, ',')) {
    const std::string entry = trim(raw);
    if (entry.empty()) throw ConfigError("empty entry in filter chain");
    const auto colon = entry.find(':');
    const std::string name = trim(entry.substr(0, colon));
    const std::string arg =
        colon == std::string::npos ? "" : trim(entry.substr(colon + 1));

    if (name == "invert") {
      if (!arg.empty()) throw ConfigError("invert takes no parameter");
      steps.push_back({FilterKind::invert});
    } else if (name == "blur") {
      steps.push_back({FilterKind::blur, parse_value(entry, arg)});
    } else if (name == "brightness") {
      steps.push_back(
          {FilterKind::brightness_contrast, parse_value(entry, arg), 1.0});
    } else if (name == "contrast") {
      steps.push_back(
          {FilterKind::brightness_contrast, 0.0, parse_value(entry, arg)});
    } else if (name == "gamma") {
      steps.push_back({FilterKind::gamma, parse_value(entry, arg)});
    } else if (name == "posterize") {
      const double levels = parse_value(entry, arg);
      if (levels != std::floor(levels))
        throw ConfigError("posterize levels must be an integer");
      steps.push_back({FilterKind::posterize, levels});
    } else {
      throw ConfigError("unknown filter '" + name + "'");
    }
  }
  return steps;
}

std::string filter_chain_to_string(const std::vector<FilterStep>& steps) {
  std::ostringstream out;
  bool first = true;
  for (const auto& s : steps) {
    if (!first) out << ",";
    first = false;
    switch (s.kind) {
      case FilterKind::blur:
        out << "blur:" << s.a;
        break;
      case FilterKind::brightness_contrast:
        if (s.b == 1.0)
          out << "brightness:" << s.a;
        else if (s.a == 0.0)
          out << "contrast:" << s.b;
        else
          out << "brightness:" << s.a << ",contrast:" << s.b;
        break;
      case FilterKind::gamma:
        out << "gamma:" << s.a;
        break;
      case FilterKind::posterize:
        out << "posterize:" << static_cast<long long>(s.a);
        break;
      case FilterKind::invert:
        out << "invert";
        break;
    }
  }
  return out.str();
}

RasterImage apply_filters(const RasterImage& img,
                          const std::vector<FilterStep>& steps) {
  RasterImage out = img;
  for (const auto& s : steps) {
    switch (s.kind) {
      case FilterKind::blur:
        out = gaussian_blur(out, s.a);
        break;
      case FilterKind::brightness_contrast:
        out = brightness_contrast(out, s.a, s.b);
        break;
      case FilterKind::gamma:
        out = gamma(out, s.a);
        break;
      case FilterKind::posterize:
        out = posterize(out, static_cast<int>(s.a));
        break;
      case FilterKind::invert:
        out = invert(out);
        break;
    }
  }
  return out;
}

void JobConfig::validate() const {
  if (inputs.empty()) throw ConfigError("no input image given");
  relief.validate();
  if (!(decimate_eps_mm >= 0.0))
    throw ConfigError("decimation epsilon must be >= 0");
  if (micrometers_per_pixel && !(*micrometers_per_pixel > 0.0))
    throw ConfigError("micrometers per pixel must be > 0");
  if (layout.grid_cols < 0) throw ConfigError("grid columns must be >= 0");
}

std::string ConvertSummary::to_json() const {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["inputs"] = inputs;
  j["output"] = output;
  j["filters"] = filters;
  j["grid"] = {{"cols", grid_cols}, {"rows", grid_rows}, {"pitch_mm", pitch_mm}};
  j["downsample_k"] = downsample_k;
  j["triangles_tessellated"] = triangles_tessellated;
  j["triangles"] = triangles;
  j["budget_bytes"] = budget_bytes;
  j["predicted_bytes"] = predicted_bytes;
  j["actual_bytes"] = actual_bytes;
  j["budget_met"] = budget_met;
  j["volume_mm3"] = volume_mm3;
  j["watertight"] = watertight;
  return j.dump(2);
}

namespace {

Heightfield compose_plate(const JobConfig& config) {
  PlateLayout plate;
  plate.gutter_mm = config.layout.gutter_mm;
  if (config.layout.frame_on) plate.frame = config.layout.frame;
  if (config.layout.scale_bar_um > 0.0)
    plate.scale_bar = ScaleBarSpec{config.layout.scale_bar_um,
                                   config.layout.bar_thickness_mm,
                                   config.layout.bar_margin_mm};

  const int per_row = config.layout.grid_cols > 0
                          ? config.layout.grid_cols
                          : static_cast<int>(config.inputs.size());
  for (std::size_t i = 0; i < config.inputs.size(); ++i) {
    RasterImage img = decode_file(config.inputs[i]);
    if (config.micrometers_per_pixel)
      img.micrometers_per_pixel = config.micrometers_per_pixel;
    img = apply_filters(img, config.filters);
    PanelPlacement p;
    p.field = from_image(img, config.relief);
    p.grid_row = static_cast<int>(i) / per_row;
    p.grid_col = static_cast<int>(i) % per_row;
    plate.panels.push_back(std::move(p));
  }
  return compose(plate);
}

}  // namespace

BuiltMesh build_mesh(const JobConfig& config) {
  config.validate();

  const Heightfield plate = compose_plate(config);
  const int k = solve_budget(plate.cols, plate.rows, config.budget_bytes);
  const Heightfield grid = k > 1 ? downsample(plate, k) : plate;

  BuiltMesh out;
  out.mesh = tessellate(grid);
  out.summary.inputs = config.inputs;
  out.summary.output = config.output;
  out.summary.filters = filter_chain_to_string(config.filters);
  out.summary.grid_cols = grid.cols;
  out.summary.grid_rows = grid.rows;
  out.summary.pitch_mm = grid.pitch_mm;
  out.summary.downsample_k = k;
  out.summary.triangles_tessellated = out.mesh.triangle_count();
  out.summary.budget_bytes = config.budget_bytes;
  out.summary.budget_met = true;

  if (config.decimate_enabled) {
    DecimateResult dec =
        decimate_planar(out.mesh, config.decimate_eps_mm,
                        triangle_budget_for_bytes(config.budget_bytes));
    out.mesh = std::move(dec.mesh);
    out.summary.budget_met = dec.budget_met;
  }
  out.summary.triangles = out.mesh.triangle_count();
  out.summary.volume_mm3 = signed_volume(out.mesh);
  out.summary.watertight = check_watertight(out.mesh).ok;
  return out;
}

ConvertSummary run_convert(const JobConfig& config) {
  if (config.output.empty()) throw ConfigError("no output path given");
  BuiltMesh built = build_mesh(config);
  if (!built.summary.watertight)
    throw NotWatertight("refusing to write a non-watertight mesh");
  built.summary.predicted_bytes =
      predicted_size_bytes(built.mesh.triangle_count());
  built.summary.actual_bytes = write_binary_file(built.mesh, config.output);
  return built.summary;
}

PreviewPaths preview_paths_for(const std::string& output) {
  std::string stem = output;
  const auto dot = stem.find_last_of('.');
  const auto slash = stem.find_last_of('/');
  if (dot != std::string::npos &&
      (slash == std::string::npos || dot > slash))
    stem.erase(dot);
  return {stem + "_height.png", stem + "_hillshade.png"};
}

std::vector<std::uint8_t> render_heightmap_png(const Heightfield& hf) {
  std::vector<std::uint8_t> gray(static_cast<std::size_t>(hf.cols) * hf.rows);
  for (int r = 0; r < hf.rows; ++r) {
    for (int c = 0; c < hf.cols; ++c) {
      const double v =
          std::clamp((hf.at(r, c) - hf.base_mm) / hf.relief_mm, 0.0, 1.0);
      // Heightfield rows run bottom-up; PNG rows top-down.
      gray[static_cast<std::size_t>(hf.rows - 1 - r) * hf.cols + c] =
          static_cast<std::uint8_t>(std::lround(255.0 * v));
    }
  }
  return encode_gray8_png(hf.cols, hf.rows, gray);
}

std::vector<std::uint8_t> render_hillshade_png(const Heightfield& hf) {
  // Lambertian shade, light from azimuth 315 deg / elevation 45 deg
  // (upper left of the rendered image).
  const double s = std::sqrt(0.5);
  const Vec3 light{-0.5, 0.5, s};
  std::vector<std::uint8_t> gray(static_cast<std::size_t>(hf.cols) * hf.rows);
  for (int r = 0; r < hf.rows; ++r) {
    for (int c = 0; c < hf.cols; ++c) {
      const int r0 = std::max(r - 1, 0);
      const int r1 = std::min(r + 1, hf.rows - 1);
      const int c0 = std::max(c - 1, 0);
      const int c1 = std::min(c + 1, hf.cols - 1);
      const double gx = (hf.at(r, c1) - hf.at(r, c0)) / ((c1 - c0) * hf.pitch_mm);
      const double gy = (hf.at(r1, c) - hf.at(r0, c)) / ((r1 - r0) * hf.pitch_mm);
      const Vec3 n = normalized(Vec3{-gx, -gy, 1.0});
      const double shade = std::clamp(dot(n, light), 0.0, 1.0);
      gray[static_cast<std::size_t>(hf.rows - 1 - r) * hf.cols + c] =
          static_cast<std::uint8_t>(std::lround(255.0 * shade));
    }
  }
  return encode_gray8_png(hf.cols, hf.rows, gray);
}

PreviewPaths run_preview(const JobConfig& config) {
  if (config.output.empty()) throw ConfigError("no output path given");
  config.validate();
  const Heightfield plate = compose_plate(config);
  const PreviewPaths paths = preview_paths_for(config.output);

  const auto save = [](const std::string& path,
                       const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoFailure("cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoFailure("short write to " + path);
  };
  save(paths.heightmap, render_heightmap_png(plate));
  save(paths.hillshade, render_hillshade_png(plate));
  return paths;
}

std::vector<FabEstimate> run_estimate(const TriMesh& mesh,
                                      const std::vector<std::string>& names,
                                      const std::vector<PrinterProfile>& pool) {
  std::vector<PrinterProfile> selected;
  if (names.empty()) {
    selected = pool;
  } else {
    for (const std::string& name : names) {
      const auto it =
          std::find_if(pool.begin(), pool.end(),
                       [&](const PrinterProfile& p) { return p.name == name; });
      if (it == pool.end())
        throw ConfigError("unknown profile '" + name + "'");
      selected.push_back(*it);
    }
  }
  return rank_by_cost(mesh, selected);
}

}  // namespace litho

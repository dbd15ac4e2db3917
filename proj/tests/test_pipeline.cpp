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

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include <doctest.h>

#include "litho/errors.hpp"
#include "litho/image_io.hpp"
#include "litho/parallel.hpp"
#include "litho/pipeline.hpp"
#include "litho/stl.hpp"

using namespace litho;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path dir;
  TempDir() {
    dir = fs::temp_directory_path() /
          ("lithoforge_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~TempDir() { std::error_code ec; fs::remove_all(dir, ec); }
  std::string path(const std::string& name) const {
    return (dir / name).string();
  }
};

// Deterministic blobby test image written as an 8-bit gray PNG.
std::string write_test_png(const TempDir& tmp, const std::string& name,
                           int w, int h, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<std::uint8_t> gray(static_cast<std::size_t>(w) * h);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c)
      gray[static_cast<std::size_t>(r) * w + c] = static_cast<std::uint8_t>(
          (r * 5 + c * 3 + static_cast<int>(rng() % 32)) % 256);
  const std::string path = tmp.path(name);
  write_gray8_png(path, w, h, gray);
  return path;
}

std::vector<std::uint8_t> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("filter chain parsing round-trips and rejects junk") {
  const auto steps = parse_filter_chain("blur:1.5,posterize:8,invert");
  REQUIRE(steps.size() == 3);
  CHECK(steps[0].kind == FilterKind::blur);
  CHECK(steps[0].a == 1.5);
  CHECK(steps[1].kind == FilterKind::posterize);
  CHECK(steps[1].a == 8.0);
  CHECK(steps[2].kind == FilterKind::invert);
  CHECK(filter_chain_to_string(steps) == "blur:1.5,posterize:8,invert");

  CHECK(parse_filter_chain("").empty());
  CHECK_THROWS_AS(parse_filter_chain("sharpen:1"), ConfigError);
  CHECK_THROWS_AS(parse_filter_chain("blur:abc"), ConfigError);
  CHECK_THROWS_AS(parse_filter_chain("posterize:2.5"), ConfigError);
  CHECK_THROWS_AS(parse_filter_chain("invert:1"), ConfigError);
  CHECK_THROWS_AS(parse_filter_chain("blur:1,,invert"), ConfigError);
}

TEST_CASE("filter order matters and is preserved") {
  RasterImage img;
  img.width = 2;
  img.height = 1;
  img.pixels = {0.4, 0.8};
  const auto a = apply_filters(img, parse_filter_chain("posterize:2,invert"));
  const auto b = apply_filters(img, parse_filter_chain("invert,posterize:2"));
  CHECK(a.pixels[0] == 1.0);  // 0.4 -> 0 -> 1
  CHECK(b.pixels[0] == 1.0);  // 0.4 -> 0.6 -> 1
  CHECK(a.pixels[1] == 0.0);  // 0.8 -> 1 -> 0
  CHECK(b.pixels[1] == 0.0);
  const auto c = apply_filters(img, parse_filter_chain("gamma:2,brightness:0.1"));
  const auto d = apply_filters(img, parse_filter_chain("brightness:0.1,gamma:2"));
  CHECK(c.pixels[0] == doctest::Approx(0.26).epsilon(1e-12));
  CHECK(d.pixels[0] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("convert writes the predicted bytes and a watertight mesh") {
  TempDir tmp;
  JobConfig cfg;
  cfg.inputs = {write_test_png(tmp, "in.png", 64, 48, 101)};
  cfg.output = tmp.path("out.stl");

  const ConvertSummary s = run_convert(cfg);
  CHECK(s.downsample_k == 1);
  CHECK(s.watertight);
  CHECK(s.budget_met);
  CHECK(s.predicted_bytes == predicted_size_bytes(s.triangles));
  CHECK(s.actual_bytes == s.predicted_bytes);
  CHECK(fs::file_size(cfg.output) == s.actual_bytes);

  const TriMesh mesh = read_binary_file(cfg.output);
  CHECK(mesh.triangle_count() == s.triangles);

  // The summary is valid, versioned JSON.
  const std::string json = s.to_json();
  CHECK(json.find("\"schema_version\": 1") != std::string::npos);
}

TEST_CASE("convert is byte-identical across runs and worker counts") {
  TempDir tmp;
  JobConfig cfg;
  cfg.inputs = {write_test_png(tmp, "in.png", 80, 60, 202)};
  cfg.filters = parse_filter_chain("blur:1.0,posterize:6");
  cfg.output = tmp.path("a.stl");
  set_thread_count(1);
  run_convert(cfg);
  const auto a = slurp(cfg.output);

  cfg.output = tmp.path("b.stl");
  set_thread_count(6);
  run_convert(cfg);
  const auto b = slurp(cfg.output);
  set_thread_count(0);

  CHECK(a == b);
}

TEST_CASE("solve_budget drives the downsample factor in convert") {
  TempDir tmp;
  JobConfig cfg;
  cfg.inputs = {write_test_png(tmp, "in.png", 120, 90, 303)};
  cfg.output = tmp.path("out.stl");
  // Budget that forces k=2: F(120,90) = 2*119*89 + 3*(2*119+2*89) - 2.
  const std::uint64_t f_full = tessellation_triangle_count(120, 90);
  cfg.budget_bytes = predicted_size_bytes(f_full) - 1;
  const ConvertSummary s = run_convert(cfg);
  CHECK(s.downsample_k == 2);
  CHECK(s.actual_bytes <= cfg.budget_bytes);
}

TEST_CASE("convert surfaces BudgetTooSmall for sub-minimal budgets") {
  TempDir tmp;
  JobConfig cfg;
  cfg.inputs = {write_test_png(tmp, "in.png", 16, 16, 404)};
  cfg.output = tmp.path("out.stl");
  cfg.budget_bytes = 683;
  CHECK_THROWS_AS(run_convert(cfg), BudgetTooSmall);
}

TEST_CASE("config validation catches empty jobs") {
  JobConfig cfg;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.inputs = {"x.png"};
  cfg.decimate_eps_mm = -0.5;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("preview writes complementary heightmaps for inverted inputs") {
  TempDir tmp;
  JobConfig cfg;
  cfg.inputs = {write_test_png(tmp, "in.png", 32, 20, 505)};
  cfg.output = tmp.path("plain.stl");

  const PreviewPaths plain = run_preview(cfg);
  cfg.filters = parse_filter_chain("invert");
  cfg.output = tmp.path("flipped.stl");
  const PreviewPaths flipped = run_preview(cfg);

  const RasterImage a = decode_file(plain.heightmap);
  const RasterImage b = decode_file(flipped.heightmap);
  REQUIRE(a.pixels.size() == b.pixels.size());
  for (std::size_t i = 0; i < a.pixels.size(); ++i) {
    const int av = static_cast<int>(std::lround(a.pixels[i] * 255.0));
    const int bv = static_cast<int>(std::lround(b.pixels[i] * 255.0));
    CHECK(av + bv == 255);
  }
}

TEST_CASE("external-mode heightmap reproduces the filtered raster") {
  TempDir tmp;
  const std::string input = write_test_png(tmp, "in.png", 24, 16, 606);
  JobConfig cfg;
  cfg.inputs = {input};
  cfg.output = tmp.path("x.stl");
  cfg.filters = parse_filter_chain("posterize:8");
  const PreviewPaths paths = run_preview(cfg);

  const RasterImage expected =
      apply_filters(decode_file(input), cfg.filters);
  const RasterImage heightmap = decode_file(paths.heightmap);
  REQUIRE(heightmap.pixels.size() == expected.pixels.size());
  for (std::size_t i = 0; i < expected.pixels.size(); ++i)
    CHECK(std::lround(heightmap.pixels[i] * 255.0) ==
          std::lround(expected.pixels[i] * 255.0));
}

TEST_CASE("preview of a constant image is uniform") {
  TempDir tmp;
  std::vector<std::uint8_t> gray(30 * 20, 200);
  const std::string input = tmp.path("const.png");
  write_gray8_png(input, 30, 20, gray);
  JobConfig cfg;
  cfg.inputs = {input};
  cfg.output = tmp.path("c.stl");
  const PreviewPaths paths = run_preview(cfg);
  for (const std::string& p : {paths.heightmap, paths.hillshade}) {
    const RasterImage img = decode_file(p);
    for (double v : img.pixels) CHECK(v == img.pixels[0]);
  }
}

TEST_CASE("estimate selection reports unknown profiles") {
  TempDir tmp;
  JobConfig cfg;
  cfg.inputs = {write_test_png(tmp, "in.png", 16, 16, 707)};
  cfg.output = tmp.path("e.stl");
  const BuiltMesh built = build_mesh(cfg);
  CHECK_THROWS_WITH_AS(
      run_estimate(built.mesh, {"nope"}, builtin_profiles()),
      "unknown profile 'nope'", ConfigError);
  const auto all = run_estimate(built.mesh, {}, builtin_profiles());
  CHECK(all.size() == 3);
}

TEST_CASE("multi-panel convert composes panels onto one plate") {
  TempDir tmp;
  JobConfig cfg;
  // 41 px across 50 mm puts the pitch at 1.25 mm, dividing the gutter.
  cfg.inputs = {write_test_png(tmp, "a.png", 41, 31, 808),
                write_test_png(tmp, "b.png", 41, 31, 809)};
  cfg.output = tmp.path("panels.stl");
  cfg.layout.gutter_mm = 10.0;
  cfg.relief.target_width_mm = 50.0;
  const ConvertSummary s = run_convert(cfg);
  CHECK(s.watertight);
  // Two 50 mm panels and a 10 mm gutter.
  const double width = (s.grid_cols - 1) * s.pitch_mm;
  CHECK(width == doctest::Approx(110.0).epsilon(1e-9));
}

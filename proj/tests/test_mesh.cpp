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

#include <algorithm>
#include <cmath>
#include <random>

#include <doctest.h>

#include "helpers.hpp"
#include "litho/errors.hpp"
#include "litho/mesh.hpp"
#include "litho/parallel.hpp"

using namespace litho;

namespace {

Heightfield flat_box(int cols, int rows, double pitch, double h) {
  Heightfield hf;
  hf.cols = cols;
  hf.rows = rows;
  hf.pitch_mm = pitch;
  hf.base_mm = h;
  hf.relief_mm = 1.0;
  hf.heights.assign(static_cast<std::size_t>(cols) * rows, h);
  return hf;
}

}  // namespace

TEST_CASE("tessellation triangle count formula") {
  CHECK(tessellation_triangle_count(2, 2) == 12);
  CHECK(tessellation_triangle_count(3, 3) == 30);  // 8 + 24 - 2
  CHECK(tessellation_triangle_count(1000, 1000) == 2'007'988);
}

TEST_CASE("tessellate builds the cuboid for a flat 2x2 field") {
  const TriMesh box = tessellate(flat_box(2, 2, 10.0, 5.0));
  CHECK(box.vertices.size() == 8);
  CHECK(box.triangles.size() == 12);
  CHECK(signed_volume(box) == doctest::Approx(500.0).epsilon(1e-12));
  CHECK(check_watertight(box).ok);
}

TEST_CASE("tessellate matches the count formula") {
  std::mt19937 rng(47);
  for (int i = 0; i < 10; ++i) {
    const Heightfield hf = test::random_heightfield(rng, 2, 24);
    const TriMesh m = tessellate(hf);
    CHECK(m.triangles.size() ==
          tessellation_triangle_count(hf.cols, hf.rows));
    CHECK(m.vertices.size() ==
          static_cast<std::size_t>(hf.cols) * hf.rows +
              2 * (hf.cols - 1) + 2 * (hf.rows - 1));
  }
}

TEST_CASE("tessellate outputs are watertight with Euler characteristic 2") {
  std::mt19937 rng(53);
  for (int i = 0; i < 50; ++i) {
    const Heightfield hf = test::random_heightfield(rng, 2, 40);
    const WatertightReport rep = check_watertight(tessellate(hf));
    CHECK(rep.ok);
    CHECK(rep.euler_characteristic == 2);
  }
}

TEST_CASE("tessellate ordering is independent of the worker count") {
  std::mt19937 rng(59);
  const Heightfield hf = test::random_heightfield(rng, 16, 40);
  set_thread_count(1);
  const TriMesh a = tessellate(hf);
  set_thread_count(5);
  const TriMesh b = tessellate(hf);
  set_thread_count(0);
  CHECK(a.vertices == b.vertices);
  CHECK(a.triangles == b.triangles);
}

TEST_CASE("signed_volume of the unit box is 1") {
  const TriMesh box = tessellate(flat_box(2, 2, 1.0, 1.0));
  CHECK(signed_volume(box) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("signed_volume is translation-invariant for closed meshes") {
  std::mt19937 rng(61);
  for (int i = 0; i < 10; ++i) {
    const Heightfield hf = test::random_heightfield(rng);
    TriMesh m = tessellate(hf);
    const double v0 = signed_volume(m);
    for (Vec3& p : m.vertices) p = p + Vec3{17.0, -3.0, 100.0};
    CHECK(signed_volume(m) == doctest::Approx(v0).epsilon(1e-9));
  }
}

TEST_CASE("signed_volume equals the prism-sum oracle") {
  std::mt19937 rng(67);
  for (int i = 0; i < 50; ++i) {
    const Heightfield hf = test::random_heightfield(rng, 2, 40);
    const double oracle = column_volume(hf);
    const double mesh_v = signed_volume(tessellate(hf));
    CHECK(std::fabs(mesh_v - oracle) <= 1e-9 * std::fabs(oracle));
  }
}

TEST_CASE("signed_volume rejects open meshes") {
  TriMesh box = tessellate(flat_box(2, 2, 1.0, 1.0));
  box.triangles.pop_back();
  CHECK_THROWS_AS(signed_volume(box), NotWatertight);
}

TEST_CASE("check_watertight counts boundary edges of a punctured box") {
  TriMesh box = tessellate(flat_box(2, 2, 1.0, 1.0));
  box.triangles.pop_back();
  const WatertightReport rep = check_watertight(box);
  CHECK_FALSE(rep.ok);
  CHECK(rep.boundary_edges == 3);
}

TEST_CASE("check_watertight flags a flipped triangle") {
  TriMesh box = tessellate(flat_box(2, 2, 1.0, 1.0));
  std::swap(box.triangles[0][0], box.triangles[0][1]);
  const WatertightReport rep = check_watertight(box);
  CHECK_FALSE(rep.ok);
  CHECK(rep.misoriented_edges == 3);
}

TEST_CASE("triangle budget inverts the binary STL size formula") {
  CHECK(triangle_budget_for_bytes(100'000'000) == 1'999'998);
  CHECK(triangle_budget_for_bytes(684) == 12);
  CHECK_THROWS_AS(triangle_budget_for_bytes(683), BudgetTooSmall);
  CHECK_THROWS_AS(triangle_budget_for_bytes(83), BudgetTooSmall);
}

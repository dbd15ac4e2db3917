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

#include <cmath>
#include <cstring>
#include <random>

#include <doctest.h>

#include "helpers.hpp"
#include "litho/errors.hpp"
#include "litho/mesh.hpp"
#include "litho/stl.hpp"

using namespace litho;

namespace {

TriMesh unit_box() {
  Heightfield hf;
  hf.cols = 2;
  hf.rows = 2;
  hf.pitch_mm = 1.0;
  hf.base_mm = 1.0;
  hf.relief_mm = 1.0;
  hf.heights.assign(4, 1.0);
  return tessellate(hf);
}

}  // namespace

TEST_CASE("predicted sizes") {
  CHECK(predicted_size_bytes(0) == 84);
  CHECK(predicted_size_bytes(12) == 684);
  CHECK(predicted_size_bytes(1'999'998) == 99'999'984);
}

TEST_CASE("a 12-facet box serializes to exactly 684 bytes") {
  const auto bytes = write_binary(unit_box());
  CHECK(bytes.size() == 684);
  // Header must not impersonate ASCII STL.
  CHECK(std::memcmp(bytes.data(), "solid", 5) != 0);
}

TEST_CASE("an empty mesh is a valid 84-byte file") {
  TriMesh empty;
  const auto bytes = write_binary(empty);
  CHECK(bytes.size() == 84);
  const TriMesh back = read_binary(bytes);
  CHECK(back.triangles.empty());
}

TEST_CASE("binary round-trip reproduces the soup after one float rounding") {
  std::mt19937 rng(79);
  const TriMesh m = tessellate(test::random_heightfield(rng));
  const auto bytes = write_binary(m);
  const TriMesh back = read_binary(bytes);
  REQUIRE(back.triangles.size() == m.triangles.size());
  for (std::size_t i = 0; i < m.triangles.size(); ++i) {
    for (int v = 0; v < 3; ++v) {
      const Vec3& orig = m.vertices[m.triangles[i][v]];
      const Vec3& got = back.vertices[back.triangles[i][v]];
      CHECK(got.x == static_cast<double>(static_cast<float>(orig.x)));
      CHECK(got.y == static_cast<double>(static_cast<float>(orig.y)));
      CHECK(got.z == static_cast<double>(static_cast<float>(orig.z)));
    }
  }
}

TEST_CASE("write-read-write is byte-identical") {
  std::mt19937 rng(83);
  for (int i = 0; i < 10; ++i) {
    const TriMesh m = tessellate(test::random_heightfield(rng));
    const auto first = write_binary(m);
    const auto second = write_binary(read_binary(first));
    CHECK(first == second);
  }
}

TEST_CASE("facet normals are unit length and outward") {
  std::mt19937 rng(89);
  const TriMesh m = tessellate(test::random_heightfield(rng));
  const auto bytes = write_binary(m);
  for (std::size_t i = 0; i < m.triangles.size(); ++i) {
    const std::uint8_t* rec = bytes.data() + 84 + 50 * i;
    float n[3];
    std::memcpy(n, rec, 12);
    const double len = std::sqrt(double(n[0]) * n[0] + double(n[1]) * n[1] +
                                 double(n[2]) * n[2]);
    CHECK(std::fabs(len - 1.0) <= 1e-6);
    const auto& t = m.triangles[i];
    const Vec3 geo = cross(m.vertices[t[1]] - m.vertices[t[0]],
                           m.vertices[t[2]] - m.vertices[t[0]]);
    CHECK(n[0] * geo.x + n[1] * geo.y + n[2] * geo.z > 0.0);
  }
}

TEST_CASE("size mismatch raises MalformedStl") {
  std::vector<std::uint8_t> bogus(100, 0);
  bogus[80] = 5;  // claims 5 facets; 84 + 250 != 100
  CHECK_THROWS_AS(read_binary(bogus), MalformedStl);
}

TEST_CASE("ASCII content on the binary path is diagnosed") {
  const std::string text = write_ascii(unit_box(), "box");
  std::vector<std::uint8_t> bytes(text.begin(), text.end());
  CHECK_THROWS_AS(read_binary(bytes), AsciiDetected);
}

TEST_CASE("degenerate facets are rejected at write time") {
  TriMesh bad = unit_box();
  bad.triangles.push_back({0, 0, 1});
  CHECK_THROWS_AS(write_binary(bad), NotWatertight);
  CHECK_THROWS_AS(write_ascii(bad, "bad"), NotWatertight);
}

TEST_CASE("ASCII STL structure and round trip") {
  TriMesh empty;
  const std::string none = write_ascii(empty, "empty");
  CHECK(none == "solid empty\nendsolid empty\n");

  const TriMesh box = unit_box();
  const std::string text = write_ascii(box, "box");
  std::size_t facets = 0;
  for (std::size_t pos = text.find("facet normal"); pos != std::string::npos;
       pos = text.find("facet normal", pos + 1))
    ++facets;
  CHECK(facets == 12);

  const TriMesh back = read_ascii(text);
  CHECK(back.triangles.size() == 12);
  const double ascii_volume = signed_volume(back);
  const double binary_volume = signed_volume(read_binary(write_binary(box)));
  CHECK(std::fabs(ascii_volume - binary_volume) <=
        1e-6 * std::fabs(binary_volume));
}

TEST_CASE("ASCII reader rejects malformed text") {
  CHECK_THROWS_AS(read_ascii("nonsense"), MalformedStl);
  CHECK_THROWS_AS(read_ascii("solid x\nfacet oops"), MalformedStl);
  CHECK_THROWS_AS(read_ascii("solid x\n"), MalformedStl);  // no endsolid
  CHECK_THROWS_AS(write_ascii(TriMesh{}, "two words"), ParameterOutOfRange);
}

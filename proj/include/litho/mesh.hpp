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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "litho/geom.hpp"
#include "litho/relief.hpp"

namespace litho {

/// Indexed triangle mesh. Triangles are counter-clockwise seen from
/// outside; a valid mesh is a closed genus-0 surface with positive
/// signed volume.
struct TriMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles;

  std::size_t triangle_count() const { return triangles.size(); }
};

struct WatertightReport {
  bool ok = false;
  std::size_t boundary_edges = 0;     // undirected edges seen only once
  std::size_t overshared_edges = 0;   // undirected edges seen more than twice
  std::size_t misoriented_edges = 0;  // seen twice but in the same direction
  bool euler_ok = false;              // V - E + F == 2
  long long euler_characteristic = 0;
  std::vector<std::string> defects;   // human-readable, capped at a few
};

/// Closed-form facet count of tessellate() for a W x H vertex grid:
/// 2(W-1)(H-1) top + 3P - 2 for walls and bottom, P = 2(W-1) + 2(H-1).
constexpr std::uint64_t tessellation_triangle_count(std::uint64_t w,
                                                    std::uint64_t h) {
  const std::uint64_t p = 2 * (w - 1) + 2 * (h - 1);
  return 2 * (w - 1) * (h - 1) + 3 * p - 2;
}

/// Builds the closed solid under a heightfield: per-cell top triangles
/// split along the (r,c)->(r+1,c+1) diagonal, perimeter walls down to
/// z = 0, and a bottom fan anchored under grid vertex (0,0). Vertex and
/// triangle ordering is fixed and independent of the worker count.
TriMesh tessellate(const Heightfield& hf);

/// Signed volume by the divergence theorem: (1/6) sum of det[a,b,c].
/// Positive for outward orientation. Throws NotWatertight when the
/// edge-pairing check fails.
double signed_volume(const TriMesh& m);

/// Diagnostic edge-pairing / orientation / Euler-characteristic check.
WatertightReport check_watertight(const TriMesh& m);

/// Largest facet count whose binary STL fits the byte budget:
/// floor((budget - 84) / 50). Throws BudgetTooSmall below 684 bytes
/// (the smallest closed mesh this pipeline emits is the 12-facet box).
std::uint64_t triangle_budget_for_bytes(std::uint64_t budget_bytes);

}  // namespace litho

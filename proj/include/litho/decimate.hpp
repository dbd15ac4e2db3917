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

#include "litho/mesh.hpp"

namespace litho {

struct DecimateResult {
  TriMesh mesh;
  // False only when a triangle budget was given and the fixpoint still
  // exceeds it; the mesh is then the best effort, not an error.
  bool budget_met = true;
  std::size_t removed_vertices = 0;
  std::size_t passes = 0;
};

/// Planarity-driven vertex removal. A vertex is removed when its ring lies
/// within eps_mm of the best-fit plane of its star (or, for a vertex on a
/// straight crease between two planar sectors, within eps_mm per sector),
/// removal keeps the mesh manifold, and the ring polygon re-triangulates by
/// ear clipping (strictly convex ears, first eligible wins). Vertices are
/// visited in ascending index order; each pass removes an independent set
/// (a removal defers its ring neighbors to the next pass, which keeps ring
/// sizes bounded on large plateaus) and passes repeat to fixpoint or until
/// the triangle count drops to `budget`. With eps_mm = 0 only exactly flat
/// neighborhoods collapse, so the signed volume is preserved up to
/// accumulation error. Output is watertight and fully deterministic.
///
/// Throws NotWatertight when the input fails the edge-pairing check.
DecimateResult decimate_planar(const TriMesh& mesh, double eps_mm,
                               std::optional<std::uint64_t> budget = {});

}  // namespace litho

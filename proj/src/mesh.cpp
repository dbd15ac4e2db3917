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

#include "litho/mesh.hpp"

#include <unordered_map>
#include <unordered_set>

#include "litho/errors.hpp"
#include "litho/parallel.hpp"

namespace litho {

namespace {

std::uint64_t edge_key(std::uint32_t a, std::uint32_t b) {
  const std::uint32_t lo = a < b ? a : b;
  const std::uint32_t hi = a < b ? b : a;
  return (static_cast<std::uint64_t>(lo) << 32) | hi;
}

struct EdgeUse {
  int forward = 0;   // traversed lo -> hi
  int backward = 0;  // traversed hi -> lo
};

std::unordered_map<std::uint64_t, EdgeUse> collect_edges(const TriMesh& m) {
  std::unordered_map<std::uint64_t, EdgeUse> edges;
  edges.reserve(m.triangles.size() * 3 / 2 + 1);
  for (const auto& t : m.triangles) {
    for (int i = 0; i < 3; ++i) {
      const std::uint32_t a = t[i];
      const std::uint32_t b = t[(i + 1) % 3];
      EdgeUse& use = edges[edge_key(a, b)];
      if (a < b)
        ++use.forward;
      else
        ++use.backward;
    }
  }
  return edges;
}

bool edges_paired(const std::unordered_map<std::uint64_t, EdgeUse>& edges) {
  for (const auto& [key, use] : edges)
    if (use.forward != 1 || use.backward != 1) return false;
  return true;
}

}  // namespace

TriMesh tessellate(const Heightfield& hf) {
  hf.validate();
  const int w = hf.cols;
  const int h = hf.rows;
  const double pitch = hf.pitch_mm;
  const std::size_t top_count = static_cast<std::size_t>(w) * h;
  const std::size_t perimeter = 2 * (w - 1) + 2 * (h - 1);

  TriMesh m;
  m.vertices.resize(top_count + perimeter);

  // Top vertices, one per grid point. x east, y north, z up.
  parallel_for(0, static_cast<std::size_t>(h), [&](std::size_t r) {
    for (int c = 0; c < w; ++c)
      m.vertices[r * w + c] =
          Vec3{c * pitch, static_cast<double>(r) * pitch,
               hf.at(static_cast<int>(r), c)};
  });

  // Perimeter ring, counter-clockwise from (0,0) viewed from above.
  std::vector<std::uint32_t> ring_top;
  ring_top.reserve(perimeter);
  for (int c = 0; c < w; ++c) ring_top.push_back(c);                   // south
  for (int r = 1; r < h; ++r) ring_top.push_back(r * w + (w - 1));     // east
  for (int c = w - 2; c >= 0; --c) ring_top.push_back((h - 1) * w + c);  // north
  for (int r = h - 2; r >= 1; --r) ring_top.push_back(r * w);          // west

  const auto bottom_of = [&](std::size_t ring_pos) {
    return static_cast<std::uint32_t>(top_count + ring_pos);
  };
  for (std::size_t i = 0; i < perimeter; ++i) {
    const Vec3& t = m.vertices[ring_top[i]];
    m.vertices[bottom_of(i)] = Vec3{t.x, t.y, 0.0};
  }

  const std::size_t top_tris = 2 * static_cast<std::size_t>(w - 1) * (h - 1);
  m.triangles.resize(top_tris + 2 * perimeter + (perimeter - 2));

  // Top surface: fixed slots keep ordering independent of worker count.
  parallel_for(0, static_cast<std::size_t>(h - 1), [&](std::size_t r) {
    for (int c = 0; c < w - 1; ++c) {
      const std::uint32_t v00 = static_cast<std::uint32_t>(r * w + c);
      const std::uint32_t v01 = v00 + 1;
      const std::uint32_t v10 = v00 + w;
      const std::uint32_t v11 = v10 + 1;
      const std::size_t slot = 2 * (r * (w - 1) + c);
      m.triangles[slot] = {v00, v01, v11};
      m.triangles[slot + 1] = {v00, v11, v10};
    }
  });

  // Walls: two triangles per perimeter edge, outward-facing.
  std::size_t slot = top_tris;
  for (std::size_t i = 0; i < perimeter; ++i) {
    const std::size_t j = (i + 1) % perimeter;
    const std::uint32_t ti = ring_top[i];
    const std::uint32_t tj = ring_top[j];
    const std::uint32_t bi = bottom_of(i);
    const std::uint32_t bj = bottom_of(j);
    m.triangles[slot++] = {ti, bi, bj};
    m.triangles[slot++] = {ti, bj, tj};
  }

  // Bottom: P-2 downward-facing triangles over the perimeter ring alone
  // (no interior vertices). A plain corner-anchored fan would emit
  // zero-area facets along the runs collinear with the anchor, so the
  // ring is covered by two corner fans and a column ladder instead.
  const auto ring_pos = [&](int r, int c) -> std::uint32_t {
    if (r == 0) return bottom_of(c);
    if (c == w - 1) return bottom_of((w - 1) + r);
    if (r == h - 1) return bottom_of(2 * (w - 1) + (h - 1) - c);
    return bottom_of(2 * (w - 1) + 2 * (h - 1) - r);  // west, 0 < r < h-1
  };
  const auto emit = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    m.triangles[slot++] = {a, b, c};
  };

  if (w >= 3) {
    // West fan from (0,1): up the west edge, then across to (h-1,1).
    std::vector<std::uint32_t> chain;
    chain.push_back(ring_pos(0, 0));
    for (int r = 1; r < h - 1; ++r) chain.push_back(ring_pos(r, 0));
    chain.push_back(ring_pos(h - 1, 0));
    chain.push_back(ring_pos(h - 1, 1));
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
      emit(ring_pos(0, 1), chain[i], chain[i + 1]);

    // East fan from (0, w-2), mirrored.
    chain.clear();
    chain.push_back(ring_pos(h - 1, w - 2));
    chain.push_back(ring_pos(h - 1, w - 1));
    for (int r = h - 2; r >= 1; --r) chain.push_back(ring_pos(r, w - 1));
    chain.push_back(ring_pos(0, w - 1));
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
      emit(ring_pos(0, w - 2), chain[i], chain[i + 1]);

    // Ladder of column strips between the two fans.
    for (int c = 1; c + 2 < w; ++c) {
      emit(ring_pos(0, c), ring_pos(h - 1, c + 1), ring_pos(0, c + 1));
      emit(ring_pos(0, c), ring_pos(h - 1, c), ring_pos(h - 1, c + 1));
    }
  } else {
    // Two-column grid: ladder between the west and east edges.
    const auto west = [&](int r) { return ring_pos(r, 0); };
    const auto east = [&](int r) { return ring_pos(r, 1); };
    for (int r = 0; r + 1 < h; ++r) {
      emit(west(r), east(r + 1), east(r));
      emit(west(r), west(r + 1), east(r + 1));
    }
  }

  return m;
}

double signed_volume(const TriMesh& m) {
  if (!edges_paired(collect_edges(m)))
    throw NotWatertight("signed_volume requires a closed, oriented mesh");
  KahanSum sum;
  for (const auto& t : m.triangles) {
    const Vec3& a = m.vertices[t[0]];
    const Vec3& b = m.vertices[t[1]];
    const Vec3& c = m.vertices[t[2]];
    sum.add(dot(a, cross(b, c)));
  }
  return sum.value() / 6.0;
}

WatertightReport check_watertight(const TriMesh& m) {
  WatertightReport rep;
  const auto edges = collect_edges(m);

  for (const auto& [key, use] : edges) {
    const int total = use.forward + use.backward;
    if (total == 1)
      ++rep.boundary_edges;
    else if (total > 2)
      ++rep.overshared_edges;
    else if (use.forward != 1 || use.backward != 1)
      ++rep.misoriented_edges;
  }

  std::unordered_set<std::uint32_t> referenced;
  referenced.reserve(m.vertices.size());
  for (const auto& t : m.triangles)
    for (std::uint32_t v : t) referenced.insert(v);

  rep.euler_characteristic =
      static_cast<long long>(referenced.size()) -
      static_cast<long long>(edges.size()) +
      static_cast<long long>(m.triangles.size());
  rep.euler_ok = !m.triangles.empty() && rep.euler_characteristic == 2;

  if (rep.boundary_edges)
    rep.defects.push_back(std::to_string(rep.boundary_edges) +
                          " boundary edge(s)");
  if (rep.overshared_edges)
    rep.defects.push_back(std::to_string(rep.overshared_edges) +
                          " edge(s) shared by more than two triangles");
  if (rep.misoriented_edges)
    rep.defects.push_back(std::to_string(rep.misoriented_edges) +
                          " edge(s) traversed twice in the same direction");
  if (!rep.euler_ok)
    rep.defects.push_back("Euler characteristic " +
                          std::to_string(rep.euler_characteristic) +
                          " (expected 2)");

  rep.ok = rep.boundary_edges == 0 && rep.overshared_edges == 0 &&
           rep.misoriented_edges == 0 && rep.euler_ok;
  return rep;
}

std::uint64_t triangle_budget_for_bytes(std::uint64_t budget_bytes) {
  // 684 = 84 + 50 * 12, the smallest closed mesh this pipeline emits.
  if (budget_bytes < 684)
    throw BudgetTooSmall("byte budget below the 684-byte minimum mesh");
  return (budget_bytes - 84) / 50;
}

}  // namespace litho

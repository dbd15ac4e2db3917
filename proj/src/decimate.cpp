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

#include "litho/decimate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "litho/errors.hpp"

namespace litho {

namespace {

using Tri = std::array<std::uint32_t, 3>;

// Crease pair search is quadratic in the ring size; rings past this are
// hubs (fan anchors) that are effectively never removable anyway.
constexpr std::size_t kMaxCreaseRing = 256;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

double cross2(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Boundary-inclusive point-in-triangle for a CCW triangle.
bool point_in_or_on_triangle(const Vec2& a, const Vec2& b, const Vec2& c,
                             const Vec2& p) {
  return cross2(a, b, p) >= 0.0 && cross2(b, c, p) >= 0.0 &&
         cross2(c, a, p) >= 0.0;
}

/// Ear clipping of a CCW simple polygon. Only strictly convex corners whose
/// triangle contains no other active vertex (boundary inclusive) are
/// eligible; the first eligible ear found while walking the ring from the
/// predecessor of the previous clip is taken. Returns index triples, or
/// nothing when clipping would force a degenerate triangle.
std::optional<std::vector<std::array<int, 3>>> ear_clip(
    const std::vector<Vec2>& pts) {
  const int n = static_cast<int>(pts.size());
  if (n < 3) return std::nullopt;

  std::vector<int> next(n), prev(n);
  for (int i = 0; i < n; ++i) {
    next[i] = (i + 1) % n;
    prev[i] = (i + n - 1) % n;
  }
  std::vector<std::array<int, 3>> out;
  out.reserve(n - 2);

  int remaining = n;
  int cursor = 0;
  int stuck = 0;  // consecutive ineligible corners
  while (remaining > 3) {
    const int p = prev[cursor];
    const int q = next[cursor];
    bool eligible = cross2(pts[p], pts[cursor], pts[q]) > 0.0;
    if (eligible) {
      for (int j = next[q]; j != p; j = next[j]) {
        if (point_in_or_on_triangle(pts[p], pts[cursor], pts[q], pts[j])) {
          eligible = false;
          break;
        }
      }
    }
    if (eligible) {
      out.push_back({p, cursor, q});
      next[p] = q;
      prev[q] = p;
      --remaining;
      cursor = p;
      stuck = 0;
    } else {
      cursor = q;
      if (++stuck >= remaining) return std::nullopt;  // no ear anywhere
    }
  }

  const int a = cursor;
  const int b = next[a];
  const int c = next[b];
  if (cross2(pts[a], pts[b], pts[c]) <= 0.0) return std::nullopt;
  out.push_back({a, b, c});
  return out;
}

// Mutable mesh state during decimation.
struct Workset {
  std::vector<Vec3> verts;
  std::vector<Tri> tris;
  std::vector<bool> tri_alive;
  std::vector<bool> vert_alive;
  std::vector<std::vector<std::uint32_t>> incidence;  // vertex -> tri ids
  std::size_t live_tris = 0;

  bool tri_has_vertex(std::uint32_t t, std::uint32_t v) const {
    return tris[t][0] == v || tris[t][1] == v || tris[t][2] == v;
  }

  // Alive incident triangles in ascending id order; drops dead entries.
  void gather_star(std::uint32_t v, std::vector<std::uint32_t>& star) {
    auto& list = incidence[v];
    std::size_t keep = 0;
    for (std::uint32_t id : list)
      if (tri_alive[id]) list[keep++] = id;
    list.resize(keep);
    star.assign(list.begin(), list.end());
    std::sort(star.begin(), star.end());
  }

  // True when an alive triangle outside `star` (sorted) uses edge (a, b).
  bool edge_exists_outside(std::uint32_t a, std::uint32_t b,
                           const std::vector<std::uint32_t>& star) const {
    for (std::uint32_t id : incidence[a]) {
      if (!tri_alive[id]) continue;
      if (std::binary_search(star.begin(), star.end(), id)) continue;
      if (tri_has_vertex(id, b)) return true;
    }
    return false;
  }
};

// Walks the star fan around v. On success ring[k] holds the link vertices
// in winding order and ring_tri[k] the star triangle spanning
// ring[k] -> ring[k+1]. Fails when the star is not a single simple cycle.
bool build_ring(const Workset& ws, std::uint32_t v,
                const std::vector<std::uint32_t>& star,
                std::vector<std::uint32_t>& ring,
                std::vector<std::uint32_t>& ring_tri) {
  const std::size_t n = star.size();
  if (n < 3) return false;

  // Directed opposite edges (a -> b) of each star triangle (v, a, b).
  struct Hop {
    std::uint32_t from, to, tri;
  };
  std::vector<Hop> hops;
  hops.reserve(n);
  for (std::uint32_t id : star) {
    const Tri& t = ws.tris[id];
    std::uint32_t a, b;
    if (t[0] == v) {
      a = t[1];
      b = t[2];
    } else if (t[1] == v) {
      a = t[2];
      b = t[0];
    } else {
      a = t[0];
      b = t[1];
    }
    hops.push_back({a, b, id});
  }

  // Each link vertex must be left exactly once; start at the smallest.
  std::uint32_t start = hops[0].from;
  for (const Hop& h : hops) start = std::min(start, h.from);

  ring.clear();
  ring_tri.clear();
  std::uint32_t cur = start;
  for (std::size_t step = 0; step < n; ++step) {
    const Hop* found = nullptr;
    for (const Hop& h : hops)
      if (h.from == cur) {
        if (found) return false;  // non-manifold: two departures
        found = &h;
      }
    if (!found) return false;
    ring.push_back(cur);
    ring_tri.push_back(found->tri);
    cur = found->to;
  }
  if (cur != start) return false;
  // Simplicity: no vertex may appear twice.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (ring[i] == ring[j]) return false;
  return true;
}

// Area-weighted (unnormalized) normal of star triangles with ids in
// `tri_ids` positions [lo, hi) taken modulo the id count.
Vec3 sector_normal(const Workset& ws, const std::vector<std::uint32_t>& tri_ids,
                   std::size_t lo, std::size_t hi) {
  const std::size_t n = tri_ids.size();
  Vec3 acc{0, 0, 0};
  for (std::size_t i = lo; i < hi; ++i) {
    const Tri& t = ws.tris[tri_ids[i % n]];
    const Vec3& a = ws.verts[t[0]];
    const Vec3& b = ws.verts[t[1]];
    const Vec3& c = ws.verts[t[2]];
    acc = acc + cross(b - a, c - a);
  }
  return acc;
}

// Orthonormal in-plane axes so that (u1, u2, n) is right-handed; the
// choice is deterministic in n.
void plane_axes(const Vec3& n, Vec3& u1, Vec3& u2) {
  const double ax = std::fabs(n.x);
  const double ay = std::fabs(n.y);
  const double az = std::fabs(n.z);
  Vec3 e{1, 0, 0};
  if (ay <= ax && ay <= az)
    e = Vec3{0, 1, 0};
  else if (az < ax && az < ay)
    e = Vec3{0, 0, 1};
  u1 = normalized(e - n * dot(n, e));
  u2 = cross(n, u1);
}

// Ear-clips ring positions [lo, hi] (inclusive, modulo ring size) in the
// plane through `origin` with normal `n`. Emits vertex-id triangles.
std::optional<std::vector<Tri>> triangulate_sector(
    const Workset& ws, const Vec3& origin, const Vec3& n,
    const std::vector<std::uint32_t>& ring, std::size_t lo, std::size_t hi) {
  Vec3 u1, u2;
  plane_axes(n, u1, u2);
  const std::size_t size = ring.size();
  const std::size_t count = hi - lo + 1;
  std::vector<Vec2> pts;
  pts.reserve(count);
  for (std::size_t i = lo; i <= hi; ++i) {
    const Vec3 d = ws.verts[ring[i % size]] - origin;
    pts.push_back({dot(d, u1), dot(d, u2)});
  }
  const auto tris2d = ear_clip(pts);
  if (!tris2d) return std::nullopt;
  std::vector<Tri> out;
  out.reserve(tris2d->size());
  for (const auto& t : *tris2d)
    out.push_back({ring[(lo + t[0]) % size], ring[(lo + t[1]) % size],
                   ring[(lo + t[2]) % size]});
  return out;
}

// Validates that replacement triangles keep the mesh manifold. Ring-adjacent
// edges must be used exactly once (they pair with the surviving outside
// triangle); chords must be used exactly twice in opposite directions and
// must not already exist elsewhere in the mesh.
bool replacement_is_manifold(const Workset& ws,
                             const std::vector<std::uint32_t>& ring,
                             const std::vector<std::uint32_t>& star,
                             const std::vector<Tri>& new_tris,
                             std::vector<std::uint32_t>& ring_pos_scratch) {
  const std::size_t n = ring.size();
  auto& ring_pos = ring_pos_scratch;  // vertex id -> ring position + 1
  for (std::size_t i = 0; i < n; ++i) ring_pos[ring[i]] = static_cast<std::uint32_t>(i + 1);

  struct Use {
    std::uint32_t a, b;
    int forward, backward;
  };
  std::vector<Use> uses;
  uses.reserve(new_tris.size() * 3);
  bool ok = true;
  for (const Tri& t : new_tris) {
    for (int e = 0; e < 3 && ok; ++e) {
      std::uint32_t a = t[e];
      std::uint32_t b = t[(e + 1) % 3];
      const bool fwd = a < b;
      if (!fwd) std::swap(a, b);
      Use* found = nullptr;
      for (auto& u : uses)
        if (u.a == a && u.b == b) {
          found = &u;
          break;
        }
      if (found)
        (fwd ? found->forward : found->backward)++;
      else
        uses.push_back({a, b, fwd ? 1 : 0, fwd ? 0 : 1});
    }
  }

  for (const Use& u : uses) {
    if (!ok) break;
    const std::uint32_t pa = ring_pos[u.a];
    const std::uint32_t pb = ring_pos[u.b];
    if (pa == 0 || pb == 0) {
      ok = false;  // edge leaves the ring
      break;
    }
    const std::size_t d = pa > pb ? pa - pb : pb - pa;
    const bool ring_adjacent = d == 1 || d + 1 == n;
    const int total = u.forward + u.backward;
    if (ring_adjacent) {
      if (total != 1) ok = false;
    } else {
      if (total != 2 || u.forward != 1 || u.backward != 1)
        ok = false;
      else if (ws.edge_exists_outside(u.a, u.b, star))
        ok = false;
    }
  }

  for (std::size_t i = 0; i < n; ++i) ring_pos[ring[i]] = 0;
  return ok;
}

// Whole star within eps of its best-fit plane (anchored at v, area-weighted
// normal): re-triangulate the full ring in that plane.
std::optional<std::vector<Tri>> try_plane_removal(
    const Workset& ws, std::uint32_t v,
    const std::vector<std::uint32_t>& star,
    const std::vector<std::uint32_t>& ring,
    const std::vector<std::uint32_t>& ring_tri, double eps,
    std::vector<std::uint32_t>& ring_pos_scratch) {
  const Vec3 nsum = sector_normal(ws, ring_tri, 0, ring_tri.size());
  const double len = norm(nsum);
  if (!(len > 0.0)) return std::nullopt;
  const Vec3 n = nsum / len;
  for (std::uint32_t r : ring) {
    const double d = std::fabs(dot(n, ws.verts[r] - ws.verts[v]));
    if (!(d <= eps)) return std::nullopt;
  }
  auto tris = triangulate_sector(ws, ws.verts[v], n, ring, 0, ring.size() - 1);
  if (!tris) return std::nullopt;
  if (!replacement_is_manifold(ws, ring, star, *tris, ring_pos_scratch))
    return std::nullopt;
  return tris;
}

// v lies on the straight crease between two planar sectors: split the ring
// at the two crease neighbors u = ring[i], w = ring[j], re-triangulate each
// sector in its own plane. Both sectors contain the new edge (u, w) once,
// in opposite directions, so the result stays manifold.
std::optional<std::vector<Tri>> try_crease_removal(
    const Workset& ws, std::uint32_t v,
    const std::vector<std::uint32_t>& star,
    const std::vector<std::uint32_t>& ring,
    const std::vector<std::uint32_t>& ring_tri, double eps,
    std::vector<std::uint32_t>& ring_pos_scratch) {
  const std::size_t n = ring.size();
  if (n < 4 || n > kMaxCreaseRing) return std::nullopt;
  const Vec3& pv = ws.verts[v];

  for (std::size_t i = 0; i + 2 < n; ++i) {
    // j runs so that both sectors keep at least one interior vertex.
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j + 1 == n) continue;  // adjacent across the wrap
      const Vec3 du = ws.verts[ring[i]] - pv;
      const Vec3 dw = ws.verts[ring[j]] - pv;
      if (!(dot(du, dw) < 0.0)) continue;  // v not between u and w
      const Vec3 uw = dw - du;
      const double uw_len = norm(uw);
      if (!(uw_len > 0.0)) continue;
      if (!(norm(cross(du, dw)) / uw_len <= eps)) continue;

      // Sector A spans ring positions [i, j], sector B [j, i + n].
      const Vec3 na_sum = sector_normal(ws, ring_tri, i, j);
      const Vec3 nb_sum = sector_normal(ws, ring_tri, j, i + n);
      const double la = norm(na_sum);
      const double lb = norm(nb_sum);
      if (!(la > 0.0) || !(lb > 0.0)) continue;
      const Vec3 na = na_sum / la;
      const Vec3 nb = nb_sum / lb;

      bool planar = true;
      for (std::size_t k = i; k <= j && planar; ++k)
        planar = std::fabs(dot(na, ws.verts[ring[k % n]] - pv)) <= eps;
      for (std::size_t k = j; k <= i + n && planar; ++k)
        planar = std::fabs(dot(nb, ws.verts[ring[k % n]] - pv)) <= eps;
      if (!planar) continue;

      auto tris_a = triangulate_sector(ws, pv, na, ring, i, j);
      if (!tris_a) continue;
      auto tris_b = triangulate_sector(ws, pv, nb, ring, j, i + n);
      if (!tris_b) continue;

      std::vector<Tri> merged = std::move(*tris_a);
      merged.insert(merged.end(), tris_b->begin(), tris_b->end());
      if (!replacement_is_manifold(ws, ring, star, merged, ring_pos_scratch))
        continue;
      return merged;
    }
  }
  return std::nullopt;
}

}  // namespace

DecimateResult decimate_planar(const TriMesh& mesh, double eps_mm,
                               std::optional<std::uint64_t> budget) {
  if (!(eps_mm >= 0.0))
    throw ParameterOutOfRange("decimation epsilon must be >= 0");
  {
    const WatertightReport rep = check_watertight(mesh);
    if (!mesh.triangles.empty() &&
        (rep.boundary_edges || rep.overshared_edges || rep.misoriented_edges))
      throw NotWatertight("decimate_planar requires a watertight input");
  }

  Workset ws;
  ws.verts = mesh.vertices;
  ws.tris = mesh.triangles;
  ws.tri_alive.assign(ws.tris.size(), true);
  ws.vert_alive.assign(ws.verts.size(), true);
  ws.live_tris = ws.tris.size();
  ws.incidence.resize(ws.verts.size());
  for (std::uint32_t id = 0; id < ws.tris.size(); ++id)
    for (std::uint32_t v : ws.tris[id]) ws.incidence[v].push_back(id);

  DecimateResult res;
  const auto budget_reached = [&] {
    return budget && ws.live_tris <= *budget;
  };

  std::vector<std::uint32_t> star, ring, ring_tri;
  std::vector<std::uint32_t> ring_pos(ws.verts.size(), 0);
  // Pass in which a vertex's neighborhood last changed. Each pass removes
  // an independent set: ring vertices of a removal wait for the next pass,
  // which keeps rings small instead of growing around removal fronts. A
  // pass with no removals marks no vertices, so it is a true fixpoint.
  std::vector<std::size_t> touched(ws.verts.size(), 0);

  bool changed = true;
  while (changed && !budget_reached()) {
    changed = false;
    ++res.passes;
    for (std::uint32_t v = 0; v < ws.verts.size() && !budget_reached(); ++v) {
      if (!ws.vert_alive[v]) continue;
      if (touched[v] == res.passes) continue;
      ws.gather_star(v, star);
      if (star.size() < 3) continue;
      if (!build_ring(ws, v, star, ring, ring_tri)) continue;

      auto plan =
          try_plane_removal(ws, v, star, ring, ring_tri, eps_mm, ring_pos);
      if (!plan)
        plan =
            try_crease_removal(ws, v, star, ring, ring_tri, eps_mm, ring_pos);
      if (!plan) continue;

      for (std::uint32_t id : star) ws.tri_alive[id] = false;
      ws.live_tris -= star.size();
      ws.vert_alive[v] = false;
      for (const Tri& t : *plan) {
        const auto id = static_cast<std::uint32_t>(ws.tris.size());
        ws.tris.push_back(t);
        ws.tri_alive.push_back(true);
        for (std::uint32_t tv : t) ws.incidence[tv].push_back(id);
      }
      ws.live_tris += plan->size();
      for (std::uint32_t r : ring) touched[r] = res.passes;
      ++res.removed_vertices;
      changed = true;
    }
  }

  // Compact: surviving vertices keep their relative order, triangles their
  // creation order, so results are reproducible run to run.
  std::vector<std::uint32_t> remap(ws.verts.size(),
                                   std::numeric_limits<std::uint32_t>::max());
  res.mesh.vertices.reserve(ws.verts.size());
  for (std::uint32_t v = 0; v < ws.verts.size(); ++v) {
    if (!ws.vert_alive[v]) continue;
    remap[v] = static_cast<std::uint32_t>(res.mesh.vertices.size());
    res.mesh.vertices.push_back(ws.verts[v]);
  }
  res.mesh.triangles.reserve(ws.live_tris);
  for (std::uint32_t id = 0; id < ws.tris.size(); ++id) {
    if (!ws.tri_alive[id]) continue;
    const Tri& t = ws.tris[id];
    res.mesh.triangles.push_back({remap[t[0]], remap[t[1]], remap[t[2]]});
  }
  res.budget_met = !budget || res.mesh.triangles.size() <= *budget;
  return res;
}

}  // namespace litho

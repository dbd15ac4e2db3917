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

#include "litho/stl.hpp"

#include <bit>
#include <cctype>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "litho/errors.hpp"

namespace litho {

namespace {

constexpr char kHeaderTag[] = "lithoforge binary STL v1";

void put_u32_le(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
  out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xFF));
  out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xFF));
}

void put_f32_le(std::vector<std::uint8_t>& out, float f) {
  if (f == 0.0f) f = 0.0f;  // canonicalize -0.0f
  put_u32_le(out, std::bit_cast<std::uint32_t>(f));
}

std::uint32_t get_u32_le(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

float get_f32_le(const std::uint8_t* p) {
  return std::bit_cast<float>(get_u32_le(p));
}

// Vertices quantize to single precision before normals are derived, so a
// file read back and rewritten is byte-identical (the quantization is
// idempotent and the normal depends only on quantized geometry).
float quantize(double v) {
  float f = static_cast<float>(v);
  if (f == 0.0f) f = 0.0f;  // canonicalize -0.0f
  return f;
}

struct QuantizedTri {
  Vec3 a, b, c;  // double-valued but exactly representable in float
  Vec3 normal;   // unit, derived from the quantized corners
};

QuantizedTri quantize_facet(const TriMesh& m, std::size_t index) {
  const auto& t = m.triangles[index];
  QuantizedTri q;
  const auto snap = [](const Vec3& p) {
    return Vec3{quantize(p.x), quantize(p.y), quantize(p.z)};
  };
  q.a = snap(m.vertices[t[0]]);
  q.b = snap(m.vertices[t[1]]);
  q.c = snap(m.vertices[t[2]]);
  const Vec3 n = cross(q.b - q.a, q.c - q.a);
  const double len = norm(n);
  if (!(len > 0.0))
    throw NotWatertight("degenerate facet " + std::to_string(index) +
                        " rejected at write time");
  q.normal = n / len;
  return q;
}

struct FloatTriple {
  std::uint32_t bits[3];
  bool operator==(const FloatTriple& o) const {
    return bits[0] == o.bits[0] && bits[1] == o.bits[1] && bits[2] == o.bits[2];
  }
};

struct FloatTripleHash {
  std::size_t operator()(const FloatTriple& t) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint32_t b : t.bits) {
      h ^= b;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

// Indexes a triangle soup by welding identical float bit patterns.
TriMesh weld_soup(const std::vector<std::array<float, 9>>& facets) {
  TriMesh m;
  std::unordered_map<FloatTriple, std::uint32_t, FloatTripleHash> index;
  index.reserve(facets.size() * 3);
  for (const auto& f : facets) {
    std::array<std::uint32_t, 3> tri{};
    for (int v = 0; v < 3; ++v) {
      FloatTriple key{{std::bit_cast<std::uint32_t>(f[v * 3 + 0]),
                       std::bit_cast<std::uint32_t>(f[v * 3 + 1]),
                       std::bit_cast<std::uint32_t>(f[v * 3 + 2])}};
      auto [it, inserted] =
          index.try_emplace(key, static_cast<std::uint32_t>(m.vertices.size()));
      if (inserted)
        m.vertices.push_back(Vec3{static_cast<double>(f[v * 3 + 0]),
                                  static_cast<double>(f[v * 3 + 1]),
                                  static_cast<double>(f[v * 3 + 2])});
      tri[v] = it->second;
    }
    m.triangles.push_back(tri);
  }
  return m;
}

}  // namespace

std::vector<std::uint8_t> write_binary(const TriMesh& m) {
  if (m.triangles.size() >= std::numeric_limits<std::uint32_t>::max())
    throw TooManyTriangles("facet count does not fit a 32-bit STL header");

  std::vector<std::uint8_t> out;
  out.reserve(predicted_size_bytes(m.triangles.size()));

  char header[80];
  std::memset(header, ' ', sizeof(header));
  std::memcpy(header, kHeaderTag, sizeof(kHeaderTag) - 1);
  out.insert(out.end(), header, header + 80);
  put_u32_le(out, static_cast<std::uint32_t>(m.triangles.size()));

  for (std::size_t i = 0; i < m.triangles.size(); ++i) {
    const QuantizedTri q = quantize_facet(m, i);
    for (double v : {q.normal.x, q.normal.y, q.normal.z})
      put_f32_le(out, static_cast<float>(v));
    for (const Vec3* p : {&q.a, &q.b, &q.c})
      for (double v : {p->x, p->y, p->z}) put_f32_le(out, static_cast<float>(v));
    out.push_back(0);
    out.push_back(0);
  }
  return out;
}

std::uint64_t write_binary_file(const TriMesh& m, const std::string& path) {
  const std::vector<std::uint8_t> bytes = write_binary(m);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoFailure("short write to " + path);
  return bytes.size();
}

TriMesh read_binary(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 84) {
    if (bytes.size() >= 5 && std::memcmp(bytes.data(), "solid", 5) == 0)
      throw AsciiDetected("stream starts with 'solid'; try the ASCII reader");
    throw MalformedStl("binary STL shorter than its 84-byte preamble");
  }
  const std::uint32_t count = get_u32_le(bytes.data() + 80);
  const std::uint64_t expected = predicted_size_bytes(count);
  if (bytes.size() != expected) {
    if (std::memcmp(bytes.data(), "solid", 5) == 0)
      throw AsciiDetected("size does not match facet count and stream "
                          "starts with 'solid'; try the ASCII reader");
    throw MalformedStl("binary STL size " + std::to_string(bytes.size()) +
                       " does not match facet count " + std::to_string(count) +
                       " (expected " + std::to_string(expected) + ")");
  }

  std::vector<std::array<float, 9>> facets(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::uint8_t* rec = bytes.data() + 84 + 50ull * i;
    // Skip the stored normal; geometry is authoritative.
    for (int k = 0; k < 9; ++k)
      facets[i][k] = get_f32_le(rec + 12 + 4 * k);
  }
  return weld_soup(facets);
}

TriMesh read_binary_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return read_binary(bytes);
}

std::string write_ascii(const TriMesh& m, const std::string& name) {
  if (name.empty() ||
      name.find_first_of(" \t\r\n") != std::string::npos)
    throw ParameterOutOfRange("solid name must be a single token");

  std::string out;
  out.reserve(64 + m.triangles.size() * 220);
  char buf[256];

  out += "solid " + name + "\n";
  for (std::size_t i = 0; i < m.triangles.size(); ++i) {
    const QuantizedTri q = quantize_facet(m, i);
    // 9 significant digits round-trip IEEE single precision exactly.
    const auto f = [](double v) { return static_cast<float>(v); };
    std::snprintf(buf, sizeof(buf), "facet normal %.9g %.9g %.9g\n",
                  f(q.normal.x), f(q.normal.y), f(q.normal.z));
    out += buf;
    out += "  outer loop\n";
    for (const Vec3* p : {&q.a, &q.b, &q.c}) {
      std::snprintf(buf, sizeof(buf), "    vertex %.9g %.9g %.9g\n", f(p->x),
                    f(p->y), f(p->z));
      out += buf;
    }
    out += "  endloop\nendfacet\n";
  }
  out += "endsolid " + name + "\n";
  return out;
}

TriMesh read_ascii(const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  if (!(in >> tok) || tok != "solid")
    throw MalformedStl("ASCII STL must start with 'solid'");
  std::string rest;
  std::getline(in, rest);  // solid name (may be empty)

  std::vector<std::array<float, 9>> facets;
  const auto expect = [&](const char* want) {
    if (!(in >> tok) || tok != want)
      throw MalformedStl(std::string("expected '") + want + "', got '" + tok +
                         "'");
  };
  const auto read_float = [&]() -> float {
    if (!(in >> tok)) throw MalformedStl("unexpected end of ASCII STL");
    char* end = nullptr;
    const float v = std::strtof(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size())
      throw MalformedStl("bad number '" + tok + "' in ASCII STL");
    return v;
  };

  while (in >> tok) {
    if (tok == "endsolid") return weld_soup(facets);
    if (tok != "facet") throw MalformedStl("expected 'facet', got '" + tok + "'");
    expect("normal");
    read_float();
    read_float();
    read_float();
    expect("outer");
    expect("loop");
    std::array<float, 9> f{};
    for (int v = 0; v < 3; ++v) {
      expect("vertex");
      f[v * 3 + 0] = read_float();
      f[v * 3 + 1] = read_float();
      f[v * 3 + 2] = read_float();
    }
    expect("endloop");
    expect("endfacet");
    facets.push_back(f);
  }
  throw MalformedStl("ASCII STL missing 'endsolid'");
}

}  // namespace litho

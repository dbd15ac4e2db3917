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
#include <span>
#include <string>
#include <vector>

#include "litho/mesh.hpp"

namespace litho {

/// Exact byte size of a binary STL with the given facet count:
/// 80-byte comment + 4-byte count + 50 bytes per facet.
constexpr std::uint64_t predicted_size_bytes(std::uint64_t triangle_count) {
  return 84 + 50 * triangle_count;
}

/// Serializes to binary STL. Little-endian IEEE-754 single precision
/// regardless of host; facet normals are the normalized CCW cross product;
/// the attribute word is zero. Coordinates round once from double to
/// single, and -0.0f is canonicalized to +0.0f so welding on re-read is
/// stable. Facets with zero-area geometry are rejected (the writer is the
/// last printability gate). Output length is predicted_size_bytes(F).
std::vector<std::uint8_t> write_binary(const TriMesh& m);

/// write_binary straight to a file; returns bytes written.
std::uint64_t write_binary_file(const TriMesh& m, const std::string& path);

/// Parses a binary STL and welds vertices by exact bit equality into an
/// indexed mesh. Throws MalformedStl on size/count mismatch and
/// AsciiDetected when the payload looks like ASCII STL instead.
TriMesh read_binary(std::span<const std::uint8_t> bytes);
TriMesh read_binary_file(const std::string& path);

/// ASCII STL with 9-significant-digit floats (lossless for single
/// precision), parseable by read_ascii. `name` must be a single token.
std::string write_ascii(const TriMesh& m, const std::string& name);
TriMesh read_ascii(const std::string& text);

}  // namespace litho

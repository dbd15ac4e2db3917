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

#include <random>

#include "litho/raster.hpp"
#include "litho/relief.hpp"

namespace litho::test {

// Pixel values are drawn from the dyadic lattice k / 2^20 so that exact
// filter identities (1 - (1 - v) == v) hold bit-for-bit, as they do for
// any value of the form n / 2^53.
inline RasterImage random_image(std::mt19937& rng, int min_dim = 1,
                                int max_dim = 32) {
  std::uniform_int_distribution<int> dim(min_dim, max_dim);
  std::uniform_int_distribution<int> val(0, 1 << 20);
  RasterImage img;
  img.width = dim(rng);
  img.height = dim(rng);
  img.pixels.resize(static_cast<std::size_t>(img.width) * img.height);
  for (double& v : img.pixels) v = val(rng) / 1048576.0;
  return img;
}

inline Heightfield random_heightfield(std::mt19937& rng, int min_dim = 2,
                                      int max_dim = 40, double base = 2.0,
                                      double relief = 3.0) {
  std::uniform_int_distribution<int> dim(min_dim, max_dim);
  std::uniform_real_distribution<double> val(0.0, 1.0);
  Heightfield hf;
  hf.cols = dim(rng);
  hf.rows = dim(rng);
  hf.pitch_mm = 0.25 + val(rng);
  hf.base_mm = base;
  hf.relief_mm = relief;
  hf.heights.resize(static_cast<std::size_t>(hf.cols) * hf.rows);
  for (double& h : hf.heights) h = base + val(rng) * relief;
  return hf;
}

}  // namespace litho::test

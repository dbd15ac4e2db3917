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
#include <random>

#include <doctest.h>

#include "helpers.hpp"
#include "litho/errors.hpp"
#include "litho/parallel.hpp"
#include "litho/raster.hpp"

using namespace litho;

namespace {

RasterImage single_pixel(double v) {
  RasterImage img;
  img.width = 1;
  img.height = 1;
  img.pixels = {v};
  return img;
}

}  // namespace

TEST_CASE("to_grayscale BT.601 weights") {
  CHECK(to_grayscale(1, 1, 1) == doctest::Approx(1.0).epsilon(1e-15));
  for (double g : {0.0, 0.125, 0.5, 0.875, 1.0})
    CHECK(to_grayscale(g, g, g) == doctest::Approx(g).epsilon(1e-15));
  // Hand-evaluated: 0.299*1 + 0.587*0 + 0.114*0.
  CHECK(to_grayscale(1, 0, 0) == doctest::Approx(0.299).epsilon(1e-15));
  CHECK(to_grayscale(0, 1, 0) == doctest::Approx(0.587).epsilon(1e-15));
  CHECK(to_grayscale(0, 0, 1) == doctest::Approx(0.114).epsilon(1e-15));
}

TEST_CASE("invert endpoints and involution") {
  CHECK(invert(single_pixel(0.0)).pixels[0] == 1.0);
  CHECK(invert(single_pixel(1.0)).pixels[0] == 0.0);

  RasterImage img;
  img.width = 2;
  img.height = 1;
  img.pixels = {0.25, 0.75};
  const RasterImage inv = invert(img);
  CHECK(inv.pixels[0] == 0.75);
  CHECK(inv.pixels[1] == 0.25);

  std::mt19937 rng(7);
  for (int i = 0; i < 20; ++i) {
    const RasterImage x = test::random_image(rng);
    CHECK(invert(invert(x)).pixels == x.pixels);  // bit-for-bit
  }
}

TEST_CASE("brightness_contrast mapping and clamping") {
  RasterImage img;
  img.width = 3;
  img.height = 1;
  img.pixels = {0.1, 0.5, 0.9};

  const RasterImage id = brightness_contrast(img, 0.0, 1.0);
  CHECK(id.pixels == img.pixels);

  CHECK(brightness_contrast(single_pixel(0.5), 0.2, 1.0).pixels[0] ==
        doctest::Approx(0.7).epsilon(1e-15));
  CHECK(brightness_contrast(single_pixel(0.9), 0.5, 1.0).pixels[0] == 1.0);
  CHECK(brightness_contrast(single_pixel(0.5), -1.0, 1.0).pixels[0] == 0.0);

  CHECK_THROWS_AS(brightness_contrast(img, 1.5, 1.0), ParameterOutOfRange);
  CHECK_THROWS_AS(brightness_contrast(img, 0.0, -0.1), ParameterOutOfRange);
}

TEST_CASE("gamma endpoints and square root case") {
  RasterImage img;
  img.width = 2;
  img.height = 1;
  img.pixels = {0.0, 1.0};
  for (double g : {0.1, 0.5, 1.0, 2.4}) {
    const RasterImage out = gamma(img, g);
    CHECK(out.pixels[0] == 0.0);
    CHECK(out.pixels[1] == 1.0);
  }
  CHECK(gamma(single_pixel(0.25), 0.5).pixels[0] ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(gamma(single_pixel(0.3), 1.0).pixels[0] == 0.3);
  CHECK_THROWS_AS(gamma(img, 0.0), ParameterOutOfRange);
  CHECK_THROWS_AS(gamma(img, -1.0), ParameterOutOfRange);
}

TEST_CASE("gaussian kernel normalization") {
  for (double sigma : {0.5, 1.0, 2.0, 5.0}) {
    const auto k = gaussian_kernel(sigma);
    CHECK(k.size() == 2 * static_cast<std::size_t>(std::ceil(3 * sigma)) + 1);
    double sum = 0.0;
    for (double w : k) sum += w;
    CHECK(std::fabs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("gaussian blur of a centered impulse matches the kernel oracle") {
  // Independent oracle: the 7-tap sigma=1 kernel squared at the center.
  double weights[7];
  double sum = 0.0;
  for (int i = -3; i <= 3; ++i) {
    weights[i + 3] = std::exp(-i * i / 2.0);
    sum += weights[i + 3];
  }
  const double center_expected = (weights[3] / sum) * (weights[3] / sum);
  CHECK(center_expected == doctest::Approx(0.159241).epsilon(1e-4));

  RasterImage img;
  img.width = 7;
  img.height = 7;
  img.pixels.assign(49, 0.0);
  img.at(3, 3) = 1.0;
  const RasterImage out = gaussian_blur(img, 1.0);
  CHECK(out.at(3, 3) == doctest::Approx(center_expected).epsilon(1e-12));
}

TEST_CASE("gaussian blur is a fixpoint on constant images") {
  for (double c : {0.0, 0.3, 1.0}) {
    RasterImage img;
    img.width = 9;
    img.height = 5;
    img.pixels.assign(45, c);
    const RasterImage out = gaussian_blur(img, 1.7);
    for (double v : out.pixels) CHECK(v == c);
  }
}

TEST_CASE("gaussian blur commutes with invert and stays in range") {
  std::mt19937 rng(11);
  for (int i = 0; i < 15; ++i) {
    const RasterImage img = test::random_image(rng, 2, 24);
    const double sigma = 0.4 + (i % 5) * 0.6;
    const RasterImage a = gaussian_blur(invert(img), sigma);
    const RasterImage b = invert(gaussian_blur(img, sigma));
    REQUIRE(a.pixels.size() == b.pixels.size());
    for (std::size_t p = 0; p < a.pixels.size(); ++p) {
      CHECK(std::fabs(a.pixels[p] - b.pixels[p]) <= 1e-12);
      CHECK(a.pixels[p] >= 0.0);
      CHECK(a.pixels[p] <= 1.0);
    }
  }
}

TEST_CASE("gaussian blur is bit-identical across runs and worker counts") {
  std::mt19937 rng(13);
  const RasterImage img = test::random_image(rng, 16, 48);
  set_thread_count(1);
  const RasterImage serial = gaussian_blur(img, 1.3);
  set_thread_count(7);
  const RasterImage threaded = gaussian_blur(img, 1.3);
  set_thread_count(0);
  const RasterImage again = gaussian_blur(img, 1.3);
  CHECK(serial.pixels == threaded.pixels);
  CHECK(serial.pixels == again.pixels);
  set_thread_count(0);
}

TEST_CASE("posterize quantization, idempotence, and 8-bit identity") {
  CHECK(posterize(single_pixel(0.4), 2).pixels[0] == 0.0);
  CHECK(posterize(single_pixel(0.6), 2).pixels[0] == 1.0);

  // Values decoded from 8-bit data are fixpoints of 256-level posterize.
  RasterImage eight;
  eight.width = 256;
  eight.height = 1;
  eight.pixels.resize(256);
  for (int k = 0; k < 256; ++k) eight.pixels[k] = k / 255.0;
  CHECK(posterize(eight, 256).pixels == eight.pixels);

  std::mt19937 rng(17);
  for (int i = 0; i < 10; ++i) {
    const RasterImage img = test::random_image(rng);
    const int levels = 2 + static_cast<int>(rng() % 12);
    const RasterImage once = posterize(img, levels);
    CHECK(posterize(once, levels).pixels == once.pixels);
  }
  CHECK_THROWS_AS(posterize(eight, 1), ParameterOutOfRange);
}

TEST_CASE("all filters keep pixels inside the unit interval") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> b(-1.0, 1.0);
  std::uniform_real_distribution<double> c(0.0, 4.0);
  std::uniform_real_distribution<double> g(0.05, 5.0);
  for (int i = 0; i < 25; ++i) {
    const RasterImage img = test::random_image(rng);
    for (const RasterImage& out :
         {invert(img), brightness_contrast(img, b(rng), c(rng)),
          gamma(img, g(rng)), gaussian_blur(img, 0.3 + c(rng)),
          posterize(img, 2 + static_cast<int>(rng() % 20))}) {
      for (double v : out.pixels) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
      }
    }
  }
}

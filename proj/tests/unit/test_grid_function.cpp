// Copyright 2026 The starbody Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "starbody/grid_function.hpp"
#include "starbody/quad.hpp"

using namespace starbody;
using starbody::testing::random_unit;

TEST_CASE("stencils reproduce node values exactly") {
  const SphereGrid g = build_sphere_grid(3, 400, 1);
  const GridInterpolator interp(g, 2);
  const Stencil s = interp.stencil(g.node(37));
  REQUIRE(s.nodes.size() == 1);
  CHECK(s.nodes[0] == 37);
  CHECK(s.coefficients[0] == 1.0);
}

TEST_CASE("second-order interpolation of smooth functions") {
  const SphereGrid g = build_sphere_grid(3, 1000, 1);
  auto f = [](const Vec& u) { return 1.0 + 0.3 * u[0] * u[1] - 0.2 * u[2] * u[2]; };
  std::vector<double> values;
  for (std::size_t i = 0; i < g.size(); ++i) values.push_back(f(g.node(i)));
  const GridInterpolator first(g, 1), second(g, 2);
  std::mt19937_64 rng(4);
  double err1 = 0.0, err2 = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Vec u = random_unit(3, rng);
    err1 = std::max(err1, std::abs(first.evaluate(values, u) - f(u)));
    err2 = std::max(err2, std::abs(second.evaluate(values, u) - f(u)));
  }
  CHECK(err2 < 2e-4);
  CHECK(err2 < err1);
}

TEST_CASE("coefficients of a stencil sum to one") {
  const SphereGrid g = build_sphere_grid(4, 800, 2);
  const GridInterpolator interp(g, 2);
  std::mt19937_64 rng(6);
  for (int i = 0; i < 10; ++i) {
    const Stencil s = interp.stencil(random_unit(4, rng));
    double total = 0.0;
    for (double c : s.coefficients) total += c;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("grid bodies interpolate radii") {
  const SphereGrid g = build_sphere_grid(2, 360, 1);
  std::vector<double> radii;
  for (std::size_t i = 0; i < g.size(); ++i) radii.push_back(2.0);
  const StarBody b = grid_body(g, radii, "disc", 2);
  CHECK(b.radial(Vec::Ones(2).normalized()) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(volume(b, g) == doctest::Approx(4.0 * std::acos(-1.0)));
}

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

#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "starbody/body_spec.hpp"
#include "starbody/core.hpp"
#include "starbody/error.hpp"
#include "starbody/quad.hpp"

using namespace starbody;
using starbody::testing::random_rotation;
using starbody::testing::random_unit;

TEST_CASE("ellipsoid radial and support agree with the quadratic form") {
  Mat a(2, 2);
  a << 4.0, 1.0, 1.0, 2.0;
  const Ellipsoid e(a);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const Vec u = random_unit(2, rng);
    CHECK(e.radial(u) == doctest::Approx(1.0 / std::sqrt(u.dot(a.inverse() * u))).epsilon(1e-12));
    CHECK(e.support(u) == doctest::Approx(std::sqrt(u.dot(a * u))).epsilon(1e-12));
    // The boundary point rho(u) u has support value at least its projection.
    CHECK(e.support(u) >= e.radial(u) - 1e-12);
  }
  CHECK(e.volume() == doctest::Approx(std::acos(-1.0) * std::sqrt(a.determinant())));
}

TEST_CASE("ellipsoid rejects non-symmetric and degenerate shapes") {
  Mat bad(2, 2);
  bad << 1.0, 0.5, 0.0, 1.0;
  CHECK_THROWS_AS(Ellipsoid{bad}, Error);
  Mat flat = Mat::Identity(2, 2);
  flat(1, 1) = 1e-14;
  CHECK_THROWS_AS(Ellipsoid{flat}, Error);
}

TEST_CASE("linear images of the ball are ellipsoids") {
  std::mt19937_64 rng(5);
  Mat t(3, 3);
  t << 1.2, 0.3, 0.0, -0.2, 0.8, 0.1, 0.4, 0.0, 1.5;
  const StarBody mapped = apply_map(Ellipsoid::ball(3, 1.0).star(), LinearMap(t));
  const Ellipsoid oracle(t * t.transpose());
  for (int i = 0; i < 50; ++i) {
    const Vec u = random_unit(3, rng);
    CHECK(mapped.radial(u) == doctest::Approx(oracle.radial(u)).epsilon(1e-10));
  }
}

TEST_CASE("dilation, radial sums and unions") {
  const StarBody a = Ellipsoid::ball(3, 1.0).star();
  const StarBody b = make_star(cube_spec(3));
  const Vec u = Vec::Ones(3).normalized();
  CHECK(dilate(b, 2.5).radial(u) == doctest::Approx(2.5 * std::sqrt(3.0)));
  const std::vector<StarBody> parts = {a, b};
  const double rb = b.radial(u);
  CHECK(radial_sum_k(parts, 2).radial(u) == doctest::Approx(std::sqrt(1.0 + rb * rb)));
  CHECK(union_body(parts).radial(u) == doctest::Approx(rb));
}

TEST_CASE("cube and lp ball radial functions") {
  std::mt19937_64 rng(11);
  const StarBody cube = make_star(cube_spec(4, 0.5));
  const StarBody l1 = make_star(lp_ball_spec(4, 1.0));
  const StarBody l3 = make_star(lp_ball_spec(4, 3.0, 2.0));
  for (int i = 0; i < 20; ++i) {
    const Vec u = random_unit(4, rng);
    CHECK(cube.radial(u) == doctest::Approx(0.5 / u.cwiseAbs().maxCoeff()));
    CHECK(l1.radial(u) == doctest::Approx(1.0 / u.lpNorm<1>()));
    const double l3norm = std::cbrt(u.cwiseAbs().array().cube().sum());
    CHECK(l3.radial(u) == doctest::Approx(2.0 / l3norm));
  }
}

TEST_CASE("convexity witness separates convex and non-convex bodies") {
  const SphereGrid grid = build_sphere_grid(3, 800, 1);
  CHECK(check_convexity(make_star(cube_spec(3)), grid).holds);
  CHECK(check_convexity(make_star(lp_ball_spec(3, 4.0)), grid).holds);
  // The l_{1/2} quasi-ball is star-shaped but not convex.
  const auto w = check_convexity(make_star(lp_ball_spec(3, 0.5)), grid);
  CHECK_FALSE(w.holds);
  CHECK(w.worst_violation > 0.01);
}

TEST_CASE("polar of an ellipsoid is the inverse-shape ellipsoid") {
  const SphereGrid grid = build_sphere_grid(3, 500, 2);
  Mat a = Vec(Eigen::Vector3d(4.0, 1.0, 0.25)).asDiagonal();
  const StarBody p = polar(Ellipsoid(a).convex(), grid);
  const Ellipsoid oracle(a.inverse());
  std::mt19937_64 rng(9);
  for (int i = 0; i < 20; ++i) {
    const Vec u = random_unit(3, rng);
    CHECK(p.radial(u) == doctest::Approx(oracle.radial(u)).epsilon(1e-10));
  }
}

TEST_CASE("support of a star body is an inner approximation") {
  auto worst_deficit = [](int nodes) {
    const SphereGrid grid = build_sphere_grid(3, nodes, 4);
    const ConvexBodyH h = support_of_star(make_star(cube_spec(3)), grid);
    std::mt19937_64 rng(21);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const Vec u = random_unit(3, rng);
      const double exact = u.lpNorm<1>();
      CHECK(h.support(u) <= exact + 1e-12);
      worst = std::max(worst, 1.0 - h.support(u) / exact);
    }
    return worst;
  };
  const double coarse = worst_deficit(2000);
  const double fine = worst_deficit(8000);
  CHECK(coarse < 0.1);
  CHECK(fine < coarse);
}

TEST_CASE("rotations preserve the radial distribution") {
  std::mt19937_64 rng(13);
  const Mat q = random_rotation(3, rng);
  const StarBody cube = make_star(cube_spec(3));
  const StarBody turned = apply_map(cube, LinearMap(q));
  for (int i = 0; i < 10; ++i) {
    const Vec u = random_unit(3, rng);
    CHECK(turned.radial(q * u) == doctest::Approx(cube.radial(u)).epsilon(1e-12));
  }
}

TEST_CASE("radial range rejects extreme aspect ratios") {
  const SphereGrid grid = build_sphere_grid(2, 360, 1);
  const StarBody thin(2, [](const Vec& u) { return std::abs(u[0]) > 0.999 ? 1.0 : 1e-7; });
  CHECK_THROWS_AS(radial_range(thin, grid), Error);
  const auto r = radial_range(Ellipsoid::ball(2, 3.0).star(), grid);
  CHECK(r.min == doctest::Approx(3.0));
  CHECK(r.max == doctest::Approx(3.0));
}

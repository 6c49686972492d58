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
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "starbody/approx.hpp"
#include "starbody/body_spec.hpp"
#include "starbody/quad.hpp"

using namespace starbody;
using starbody::testing::omega;

TEST_CASE("covering ellipsoid has the stated semi-axes") {
  const Vec z = Vec(Eigen::Vector3d(3.0, 4.0, 0.0));
  const Ellipsoid e = covering_ellipsoid(z, 0.5);
  const Vec axes = e.semi_axes();
  std::vector<double> s(axes.data(), axes.data() + 3);
  std::sort(s.begin(), s.end());
  CHECK(s[0] == doctest::Approx(std::sqrt(2.0) * 0.5));
  CHECK(s[1] == doctest::Approx(std::sqrt(2.0) * 0.5));
  CHECK(s[2] == doctest::Approx(std::sqrt(2.0) * 5.5));
  CHECK(e.radial(z.normalized()) == doctest::Approx(std::sqrt(2.0) * 5.5));
}

TEST_CASE("covering ellipsoid inclusions hold with nonnegative slack") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  for (int i = 0; i < 20; ++i) {
    Vec z(4);
    for (int j = 0; j < 4; ++j) z[j] = g(rng);
    const auto s = ellipsoid_inclusion_slack(z, 0.2 + 0.1 * i, 500, i);
    CHECK(s.inner >= -1e-9);
    CHECK(s.outer >= -1e-9);
  }
}

TEST_CASE("greedy cover of a probe cloud") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat probes(2, 500);
  for (Eigen::Index i = 0; i < probes.cols(); ++i) probes.col(i) = Vec(Eigen::Vector2d(u(rng), u(rng)));
  const Covering c = greedy_cover(probes, 0.5);
  CHECK(c.complete);
  CHECK(c.centers.col(0).norm() == 0.0);
  for (Eigen::Index i = 0; i < probes.cols(); ++i) {
    double best = 1e300;
    for (Eigen::Index j = 0; j < c.centers.cols(); ++j)
      best = std::min(best, (probes.col(i) - c.centers.col(j)).norm());
    CHECK(best <= 0.5 + 1e-12);
  }
  // Centers after the first are probes at pairwise distance > t.
  for (Eigen::Index a = 1; a < c.centers.cols(); ++a)
    for (Eigen::Index b = a + 1; b < c.centers.cols(); ++b)
      CHECK((c.centers.col(a) - c.centers.col(b)).norm() > 0.5);
  const Covering capped = greedy_cover(probes, 0.2, 3);
  CHECK_FALSE(capped.complete);
  CHECK(capped.count == 3);
}

TEST_CASE("approximant of the ball without normalization") {
  const int n = 4;
  const SphereGrid g = build_sphere_grid(n, 1500, 1);
  BPOptions opts;
  opts.normalize = false;
  opts.probes = 20000;
  const BPApproximant bp = bp_approximant(Ellipsoid::ball(n, 1.0).star(), 2, g, opts);
  CHECK(bp.count == 1);
  CHECK(bp.contains);
  CHECK(bp.ovr == doctest::Approx(std::numbers::e * std::sqrt(2.0)).epsilon(1e-9));
  CHECK(bp.union_distance <= std::numbers::e);
}

TEST_CASE("approximants of the cube contain it and respect the union bound") {
  const SphereGrid g = build_sphere_grid(4, 2000, 1);
  BPOptions opts;
  opts.probes = opts.samples = 20000;
  const auto curve = bp_curve(make_star(cube_spec(4)), {1, 2, 3}, g, opts);
  REQUIRE(curve.size() == 3);
  for (const BPApproximant& bp : curve) {
    CHECK(bp.contains);
    CHECK(bp.containment_margin >= 1.0);
    CHECK(bp.union_distance <= std::numbers::e + 1e-12);
    CHECK(std::log(static_cast<double>(bp.count)) <= bp.k + 1e-12);
    CHECK(bp.bound_shape == doctest::Approx(std::sqrt(4.0 / bp.k * std::log(std::numbers::e * 4.0 / bp.k))));
  }
}

TEST_CASE("parallel volumes of the ball in closed form") {
  const SphereGrid g = build_sphere_grid(3, 1000, 1);
  const auto rows = parallel_volume_check(Ellipsoid::ball(3, 1.0).convex(), {0.5, 1.0}, g);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].volume == doctest::Approx(omega(3) * std::pow(1.5, 3)).epsilon(1e-9));
  CHECK(rows[1].ratio == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("parallel volume of a box by Monte Carlo in four dimensions") {
  const SphereGrid g = build_sphere_grid(4, 3000, 1);
  const auto rows = parallel_volume_check(*make_convex(cube_spec(4)), {1.0}, g, 40000, 3);
  // Steiner polynomial of [-1,1]^4 at t = 1: sum_j C(4,j) 2^{4-j} omega_j.
  double steiner = 0.0;
  const double binom[] = {1, 4, 6, 4, 1};
  for (int j = 0; j <= 4; ++j) steiner += binom[j] * std::pow(2.0, 4 - j) * omega(j);
  CHECK(rows[0].volume == doctest::Approx(steiner).epsilon(5e-2));
}

TEST_CASE("star distance between a body and itself") {
  const SphereGrid g = build_sphere_grid(3, 500, 1);
  const StarBody cube = make_star(cube_spec(3));
  CHECK(star_distance(cube, cube, g) == doctest::Approx(1.0));
}

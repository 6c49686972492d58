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
#include "starbody/body_spec.hpp"
#include "starbody/distances.hpp"
#include "starbody/positions.hpp"
#include "starbody/quad.hpp"

using namespace starbody;
using starbody::testing::random_rotation;

TEST_CASE("radial and geometric distances between balls") {
  const SphereGrid g = build_sphere_grid(3, 500, 1);
  const StarBody b1 = Ellipsoid::ball(3, 1.0).star();
  const StarBody b2 = Ellipsoid::ball(3, 2.0).star();
  CHECK(d_radial(b1, b2, g) == doctest::Approx(1.0));
  CHECK(d_geometric(b1, b2, g) == doctest::Approx(1.0));
  CHECK(d_radial(b1, b1, g) == 0.0);
}

TEST_CASE("geometric distance of the cube to the ball") {
  const SphereGrid g = build_sphere_grid(3, 4000, 1);
  const StarBody cube = make_star(cube_spec(3));
  const StarBody ball = Ellipsoid::ball(3, 1.0).star();
  // The diagonal directions are not grid nodes, so the grid value is a lower bound.
  const double d = d_geometric(cube, ball, g);
  CHECK(d <= std::sqrt(3.0) + 1e-12);
  CHECK(d > std::sqrt(3.0) * 0.98);
}

TEST_CASE("geometric distance is symmetric and scale invariant") {
  const SphereGrid g = build_sphere_grid(3, 800, 1);
  const StarBody a = make_star(cube_spec(3));
  const StarBody b = make_star(lp_ball_spec(3, 1.0));
  const double d = d_geometric(a, b, g);
  CHECK(d_geometric(b, a, g) == doctest::Approx(d));
  CHECK(d_geometric(dilate(a, 3.0), b, g) == doctest::Approx(d));
}

TEST_CASE("Banach-Mazur search maps an ellipsoid to the ball") {
  const SphereGrid g = build_sphere_grid(3, 1000, 1);
  Mat a = Vec(Eigen::Vector3d(4.0, 1.0, 0.25)).asDiagonal();
  std::mt19937_64 rng(11);
  const Mat r = random_rotation(3, rng);
  const StarBody e = Ellipsoid(r * a * r.transpose()).star();
  const DistanceReport rep = d_bm_upper(e, Ellipsoid::ball(3, 1.0).star(), g);
  CHECK(rep.initial > 3.9);
  CHECK(rep.improved);
  CHECK(rep.value < 1.02);
  CHECK(rep.verified >= rep.value);
  CHECK(rep.verified < 1.03);
}

TEST_CASE("Banach-Mazur upper bound for the cube and the ball") {
  const SphereGrid g = build_sphere_grid(3, 1000, 1);
  BMOptions opts;
  opts.restarts = 3;
  const DistanceReport rep = d_bm_upper(make_star(cube_spec(3)), Ellipsoid::ball(3, 1.0).star(), g, opts);
  CHECK(rep.verified <= std::sqrt(3.0) * 1.03);
  CHECK(rep.verified >= std::sqrt(3.0) * 0.97);
  CHECK(rep.verified >= rep.value);
  CHECK(d_geometric_mapped(make_star(cube_spec(3)), Ellipsoid::ball(3, 1.0).star(), rep.witness, g) ==
        doctest::Approx(rep.value).epsilon(1e-9));
}

TEST_CASE("section sandwich for the cube") {
  const SphereGrid g = build_sphere_grid(3, 1000, 1);
  const auto cube = make_convex(cube_spec(3));
  const SectionSandwichResult r = section_sandwich_check(*cube, Vec::Unit(3, 0), g);
  CHECK(r.holds);
  CHECK(r.volume == doctest::Approx(8.0).epsilon(1e-2));
  CHECK(r.upper == doctest::Approx(8.0).epsilon(1e-2));
  CHECK(r.lower <= r.volume);
}

TEST_CASE("section distance check on the ball is tight") {
  const SphereGrid g = build_sphere_grid(3, 1000, 1);
  const StarBody ball = normalize_volume(Ellipsoid::ball(3, 1.0).star(), g);
  const auto sample = sample_grassmannian(3, 2, 50, 3);
  const SectionDistanceResult r = section_distance_check(ball, 2, sample, g);
  CHECK(r.delta == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.d_g == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.holds);
  CHECK(r.pair_ratio == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.chain_holds);
}

TEST_CASE("ik ball distance for the isotropic cube with k = 1") {
  const SphereGrid g = build_sphere_grid(3, 1000, 1);
  const IsotropicData iso = isotropic_position(make_star(cube_spec(3)), g, 50000, 2);
  const IkBallDistanceResult r = ik_ball_distance_check(iso.body, 1, g);
  CHECK(r.hypotheses_met);
  CHECK(r.convex);
  CHECK(r.d_bm <= 5.0);
  // d_bm is re-evaluated on a finer grid, so it may sit slightly above d_g.
  CHECK(r.d_bm <= r.d_g * 1.05);
  CHECK(r.d_bm >= 1.0);
}

TEST_CASE("distance kind names") {
  CHECK(to_string(DistanceKind::kRadial) == "radial");
  CHECK(to_string(DistanceKind::kGeometric) == "geometric");
}

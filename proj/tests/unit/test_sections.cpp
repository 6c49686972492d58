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
#include "starbody/body_spec.hpp"
#include "starbody/distances.hpp"
#include "starbody/error.hpp"
#include "starbody/quad.hpp"
#include "starbody/sections.hpp"

using namespace starbody;
using starbody::testing::ellipsoid_section;
using starbody::testing::omega;

TEST_CASE("central sections of the cube") {
  const StarBody cube = make_star(cube_spec(3));
  // Coordinate square of side 2.
  CHECK(section_volume(cube, Subspace::hyperplane(Vec::Unit(3, 0))) == doctest::Approx(4.0).epsilon(1e-3));
  // Regular hexagon with side sqrt 2.
  CHECK(section_volume(cube, Subspace::hyperplane(Vec::Ones(3).normalized())) ==
        doctest::Approx(3.0 * std::sqrt(3.0)).epsilon(2e-3));
  // A diagonal line meets the cube in a segment of length 2 sqrt 3.
  CHECK(section_volume(cube, Subspace::line(Vec::Ones(3))) == doctest::Approx(2.0 * std::sqrt(3.0)));
}

TEST_CASE("ellipsoid sections match the restricted quadratic form") {
  Mat a(4, 4);
  a << 2.0, 0.3, 0.0, 0.1, 0.3, 1.0, 0.2, 0.0, 0.0, 0.2, 0.7, 0.0, 0.1, 0.0, 0.0, 1.4;
  const StarBody e = Ellipsoid(a).star();
  const auto sample = sample_grassmannian(4, 2, 20, 3);
  for (const Subspace& f : sample.subspaces)
    CHECK(section_volume(e, f) == doctest::Approx(ellipsoid_section(a, f.frame())).epsilon(1e-6));
}

TEST_CASE("radon transform of a constant") {
  const auto sample = sample_grassmannian(4, 3, 5, 1);
  const auto r = radon([](const Vec&) { return 1.0; }, 3, sample);
  for (double v : r) CHECK(v == doctest::Approx(3.0 * omega(3)));
}

TEST_CASE("section function of the ball") {
  const auto sample = sample_grassmannian(5, 2, 10, 2);
  const SectionFunction sf = section_function(Ellipsoid::ball(5, 2.0).star(), sample);
  // |B cap F^perp| for dim F^perp = 3.
  for (double v : sf.values) CHECK(v == doctest::Approx(omega(3) * 8.0).epsilon(1e-6));
}

TEST_CASE("intersection body of the ball") {
  const SphereGrid g = build_sphere_grid(3, 200, 1);
  const StarBody i = intersection_body_lutwak(Ellipsoid::ball(3, 1.0).star(), g);
  CHECK(i.radial(g.node(5)) == doctest::Approx(std::numbers::pi).epsilon(1e-6));
  CHECK(intersection_body_k1(Ellipsoid::ball(3, 1.0).star(), g).radial(g.node(5)) ==
        doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-6));
}

TEST_CASE("k-intersection body of the ball in closed form") {
  for (int n = 3; n <= 6; ++n)
    for (int k = 1; k < n; ++k) {
      const double r = ik_ball(n, k, 1.3);
      // |I_k cap F| = omega_k r^k must equal |B cap F^perp| = omega_{n-k} R^{n-k}.
      CHECK(omega(k) * std::pow(r, k) == doctest::Approx(omega(n - k) * std::pow(1.3, n - k)));
    }
}

TEST_CASE("closed-form ellipsoid k-intersection body has the defining sections") {
  Mat a(4, 4);
  a << 1.5, 0.2, 0.0, 0.0, 0.2, 0.9, 0.1, 0.0, 0.0, 0.1, 1.2, 0.3, 0.0, 0.0, 0.3, 0.6;
  for (int k = 1; k <= 3; ++k) {
    const Ellipsoid ik = ik_ellipsoid(Ellipsoid(a), k);
    const auto sample = sample_grassmannian(4, k, 30, 5 + k);
    for (const Subspace& f : sample.subspaces) {
      const double lhs = ellipsoid_section(ik.shape(), f.frame());
      const double rhs = ellipsoid_section(a, f.complement().frame());
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
  }
}

TEST_CASE("k-intersection body transforms under linear maps") {
  Mat t(3, 3);
  t << 1.1, 0.2, 0.0, 0.0, 0.7, 0.3, 0.1, 0.0, 1.4;
  const int k = 2;
  const Ellipsoid base = Ellipsoid::ball(3, 1.0);
  const Ellipsoid mapped = ik_ellipsoid(Ellipsoid::image_of_ball(t), k);
  const Mat tinv_t = t.inverse().transpose();
  const Mat expect = std::pow(std::abs(t.determinant()), 2.0 / k) * tinv_t *
                     ik_ellipsoid(base, k).shape() * tinv_t.transpose();
  CHECK((mapped.shape() - expect).norm() < 1e-10);
}

TEST_CASE("ik_solve recovers the ball and an ellipsoid") {
  const SphereGrid g = build_sphere_grid(3, 400, 1);
  const int count = static_cast<int>(std::ceil(20.0 * g.size() / 3.0));
  const StarBody ball = Ellipsoid::ball(3, 1.0).star();
  for (int k : {1, 2}) {
    const IkResult r = ik_solve(ball, k, g, sample_grassmannian(3, k, count, 3));
    CHECK(r.exists);
    CHECK(r.body.radial(g.node(11)) == doctest::Approx(ik_ball(3, k)).epsilon(1e-6));
  }
  Mat a = Vec(Eigen::Vector3d(1.69, 1.0, 0.64)).asDiagonal();
  const IkResult r = ik_solve(Ellipsoid(a).star(), 2, g, sample_grassmannian(3, 2, count, 4));
  const StarBody oracle = ik_ellipsoid(Ellipsoid(a), 2).star();
  CHECK(r.residual < 5e-2);
  CHECK(d_radial(r.body, oracle, g) / radial_range(oracle, g).max < 2e-2);
}

TEST_CASE("ik_solve rejects undersampled systems") {
  const SphereGrid g = build_sphere_grid(3, 400, 1);
  CHECK_THROWS_AS(ik_solve(Ellipsoid::ball(3, 1.0).star(), 2, g, sample_grassmannian(3, 2, 50, 1)), Error);
}

TEST_CASE("section ratio extremes") {
  const auto planes = sample_grassmannian(3, 2, 300, 9);
  const SectionRatio ball = section_ratio_extremes(Ellipsoid::ball(3, 1.0).star(), 2, planes);
  CHECK(ball.ratio == doctest::Approx(1.0).epsilon(1e-9));
  const SectionRatio cube = section_ratio_extremes(make_star(cube_spec(3)), 2, planes);
  // Central plane sections of the cube lie between 4 and 4 sqrt 2.
  CHECK(cube.min >= 4.0 * (1.0 - 1e-3));
  CHECK(cube.max <= 4.0 * std::sqrt(2.0) * (1.0 + 1e-3));
  CHECK(cube.ratio > 1.1);
  CHECK(cube.delta == doctest::Approx(std::sqrt(cube.ratio)));
  // Chords through the center lie between 2 and 2 sqrt 3.
  const SectionRatio chords = section_ratio_extremes(make_star(cube_spec(3)), 1, sample_grassmannian(3, 1, 300, 9));
  CHECK(chords.min >= 2.0 - 1e-12);
  CHECK(chords.max <= 2.0 * std::sqrt(3.0) + 1e-12);
}

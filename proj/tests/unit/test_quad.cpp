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
#include "starbody/core.hpp"
#include "starbody/error.hpp"
#include "starbody/quad.hpp"

using namespace starbody;
using starbody::testing::omega;

TEST_CASE("ball volume and sphere area from independent formulas") {
  for (int n = 1; n <= 12; ++n) {
    CHECK(ball_volume(n) == doctest::Approx(omega(n)).epsilon(1e-13));
    CHECK(sphere_area(n) == doctest::Approx(n * omega(n)).epsilon(1e-13));
  }
}

TEST_CASE("grid weights form a probability measure with antipodal pairs") {
  for (int n = 2; n <= 6; ++n) {
    const SphereGrid g = build_sphere_grid(n, 400, 3);
    double total = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      total += g.weight(i);
      CHECK(g.node(i).norm() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK((g.node(i) + g.node(g.antipode(i))).norm() < 1e-12);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("grid integrates low-degree moments of the uniform measure") {
  // E u_1^2 = 1/n and E u_1^4 = 3/(n(n+2)).
  for (int n : {2, 3}) {
    const SphereGrid g = build_sphere_grid(n, 2000, 1);
    double m2 = 0.0, m4 = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double x = g.node(i)[0];
      m2 += g.weight(i) * x * x;
      m4 += g.weight(i) * x * x * x * x;
    }
    CHECK(m2 == doctest::Approx(1.0 / n).epsilon(2e-3));
    CHECK(m4 == doctest::Approx(3.0 / (n * (n + 2.0))).epsilon(5e-3));
  }
}

TEST_CASE("grid volumes of ball, cube and ellipsoid") {
  const SphereGrid g3 = build_sphere_grid(3, 2000, 1);
  CHECK(volume(Ellipsoid::ball(3, 1.0).star(), g3) ==
        doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-6));
  CHECK(volume(make_star(cube_spec(3)), g3) == doctest::Approx(8.0).epsilon(1e-2));
  Mat a = Vec(Eigen::Vector3d(2.0, 1.0, 0.5)).asDiagonal();
  CHECK(volume(Ellipsoid(a).star(), g3) ==
        doctest::Approx(omega(3) * std::sqrt(a.determinant())).epsilon(1e-2));
  const SphereGrid g2 = build_sphere_grid(2, 720, 1);
  CHECK(volume(make_star(cube_spec(2)), g2) == doctest::Approx(4.0).epsilon(1e-4));
}

TEST_CASE("m_p of a scaled ball is the reciprocal radius") {
  const SphereGrid g = build_sphere_grid(4, 500, 2);
  const StarBody b = Ellipsoid::ball(4, 2.5).star();
  for (double p : {-3.0, -1.0, 0.5, 1.0, 4.0}) CHECK(m_p(b, p, g) == doctest::Approx(0.4));
  CHECK_THROWS_AS(m_p(b, 0.0, g), Error);
}

TEST_CASE("m_{-n} of the cube matches its volume") {
  const SphereGrid g = build_sphere_grid(3, 2000, 1);
  const StarBody cube = make_star(cube_spec(3));
  const double expected = std::cbrt(omega(3) / volume(cube, g));
  CHECK(m_p(cube, -3.0, g) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(m_p(cube, -3.0, g) == doctest::Approx(std::cbrt(std::numbers::pi / 6.0)).epsilon(5e-3));
}

TEST_CASE("m_p is nondecreasing in p") {
  const SphereGrid g = build_sphere_grid(3, 1000, 1);
  const StarBody l1 = make_star(lp_ball_spec(3, 1.0));
  double prev = 0.0;
  for (double p : {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0, 3.0}) {
    const double v = m_p(l1, p, g);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("e_p of the unit-volume ball against the radial integral") {
  // E_p(r B) over volume 1: (n/(n+p))^{1/p} r.
  for (int n : {3, 5}) {
    const SphereGrid g = build_sphere_grid(n, 600, 1);
    const double r = std::pow(omega(n), -1.0 / n);
    const StarBody d = Ellipsoid::ball(n, r).star();
    for (double p : {-2.0, -1.0, 1.0, 2.0}) {
      const double oracle = std::pow(n / (n + p), 1.0 / p) * r;
      CHECK(e_p(d, p, g) == doctest::Approx(oracle).epsilon(1e-10));
      CHECK(e_p_unit_volume_ball(n, p) == doctest::Approx(oracle).epsilon(1e-12));
    }
  }
}

TEST_CASE("e_p requires volume one and p > -n") {
  const SphereGrid g = build_sphere_grid(3, 300, 1);
  CHECK_THROWS_AS(e_p(Ellipsoid::ball(3, 1.0).star(), 1.0, g), Error);
  const StarBody d = normalize_volume(Ellipsoid::ball(3, 1.0).star(), g);
  CHECK_THROWS_AS(e_p(d, -3.0, g), Error);
}

TEST_CASE("grassmann samples have orthonormal frames and isotropic projectors") {
  const auto s = sample_grassmannian(5, 2, 4000, 8);
  REQUIRE(s.count() == 4000);
  for (std::size_t i = 0; i < 10; ++i) {
    const Mat& f = s.subspaces[i].frame();
    CHECK((f.transpose() * f - Mat::Identity(2, 2)).norm() < 1e-12);
  }
  const Mat p = mean_projector(s);
  CHECK((p - 0.4 * Mat::Identity(5, 5)).cwiseAbs().maxCoeff() < 0.03);
  const auto c = s.complements();
  CHECK(c.subspaces[0].dim() == 3);
  CHECK((s.subspaces[0].frame().transpose() * c.subspaces[0].frame()).norm() < 1e-12);
}

TEST_CASE("grassmann samples are reproducible from the seed") {
  const auto a = sample_grassmannian(4, 2, 5, 17);
  const auto b = sample_grassmannian(4, 2, 5, 17);
  const auto c = sample_grassmannian(4, 2, 5, 18);
  CHECK((a.subspaces[4].frame() - b.subspaces[4].frame()).norm() == 0.0);
  CHECK((a.subspaces[4].frame() - c.subspaces[4].frame()).norm() > 0.0);
}

TEST_CASE("uniform samples in a body have the ball's second moment") {
  // E |x|^2 over the unit ball is n/(n+2).
  const Mat x = sample_uniform_in_body(Ellipsoid::ball(3, 1.0).star(), 40000, 5);
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.cols(); ++i) {
    CHECK(x.col(i).norm() <= 1.0 + 1e-12);
    s += x.col(i).squaredNorm();
  }
  CHECK(s / x.cols() == doctest::Approx(0.6).epsilon(1e-2));
}

TEST_CASE("grid serialization round trip") {
  const SphereGrid g = build_sphere_grid(3, 150, 4);
  std::stringstream ss;
  write_grid(ss, g);
  const SphereGrid h = read_grid(ss);
  REQUIRE(h.size() == g.size());
  CHECK((h.node(17) - g.node(17)).norm() == 0.0);
  CHECK(h.weight(17) == g.weight(17));
}

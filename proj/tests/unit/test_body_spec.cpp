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

#include <string>

#include "doctest.h"
#include "starbody/body_spec.hpp"
#include "starbody/error.hpp"
#include "starbody/quad.hpp"

using namespace starbody;

namespace {

std::string parse_error(const std::string& text) {
  try {
    parse_body_spec(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("spec round trip through JSON") {
  const BodySpec cube = parse_body_spec(R"({"type":"cube","dim":4,"params":{"half_side":0.5},"label":"c"})");
  CHECK(cube.dim == 4);
  CHECK(cube.label == "c");
  CHECK(cube.type_name() == "cube");
  CHECK(cube.is_convex());
  const BodySpec again = parse_body_spec(to_json(cube));
  CHECK(to_json(again) == to_json(cube));
  CHECK(std::get<CubeParams>(again.params).half_side == 0.5);
}

TEST_CASE("ellipsoids from axes or matrix") {
  const BodySpec a = parse_body_spec(R"({"type":"ellipsoid","dim":2,"params":{"axes":[2,1]}})");
  const Mat& shape = std::get<EllipsoidParams>(a.params).shape;
  CHECK(shape(0, 0) == doctest::Approx(4.0));
  CHECK(shape(1, 1) == doctest::Approx(1.0));
  const BodySpec b = parse_body_spec(R"({"type":"ellipsoid","dim":2,"params":{"matrix":[[4,0],[0,1]]}})");
  CHECK((std::get<EllipsoidParams>(b.params).shape - shape).norm() == 0.0);
  CHECK(b.label == "ellipsoid");
}

TEST_CASE("malformed specs name the offending field") {
  CHECK(parse_error(R"({"dim":3})").find("'type'") != std::string::npos);
  CHECK(parse_error(R"({"type":"cube"})").find("'dim'") != std::string::npos);
  CHECK(parse_error(R"({"type":"cube","dim":1})").find("'dim'") != std::string::npos);
  CHECK(parse_error(R"({"type":"cube","dim":3.5})").find("'dim'") != std::string::npos);
  CHECK(parse_error(R"({"type":"cube","dim":3,"params":{"half_side":-1}})").find("'params.half_side'") !=
        std::string::npos);
  CHECK(parse_error(R"({"type":"cube","dim":3,"params":{"side":1}})").find("'params.side'") !=
        std::string::npos);
  CHECK(parse_error(R"({"type":"lp_ball","dim":3,"params":{}})").find("'params.p'") != std::string::npos);
  CHECK(parse_error(R"({"type":"ellipsoid","dim":2,"params":{"axes":[1]}})").find("'params.axes'") !=
        std::string::npos);
  CHECK(parse_error(R"({"type":"ellipsoid","dim":2,"params":{"matrix":[[1,2],[0,1]]}})")
            .find("'params.matrix'") != std::string::npos);
  CHECK(parse_error(R"({"type":"blob","dim":3})").find("'type'") != std::string::npos);
  CHECK(parse_error(R"({"type":"cube","dim":3,"colour":"red"})").find("'colour'") != std::string::npos);
  CHECK(parse_error(R"({"type":"perturbed_ball","dim":3,"params":{"coefficients":[0.6,0.5]}})")
            .find("'params.coefficients'") != std::string::npos);
  CHECK(parse_error("{not json").find("malformed") != std::string::npos);
}

TEST_CASE("polytope hulls must span the space") {
  CHECK(parse_error(R"({"type":"polytope_hull","dim":2,"params":{"points":[[1,0],[2,0]]}})")
            .find("'params.points'") != std::string::npos);
  const BodySpec sq = parse_body_spec(
      R"({"type":"polytope_hull","dim":2,"params":{"points":[[1,1],[1,-1]]}})");
  const StarBody body = make_star(sq);
  // The symmetric hull of (1,1), (1,-1) is the square [-1,1]^2.
  CHECK(body.radial(Vec::Unit(2, 0)) == doctest::Approx(1.0));
  CHECK(body.radial(Vec::Ones(2).normalized()) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("built-in catalog is fixed and ordered") {
  CHECK(kCatalogVersion == 1);
  const auto cat = builtin_catalog(4);
  REQUIRE(cat.size() == 7);
  const char* labels[] = {"ball", "ellipsoid_axes", "ellipsoid_rotated", "cube",
                          "l1_ball", "l4_ball", "perturbed_ball"};
  for (std::size_t i = 0; i < cat.size(); ++i) {
    CHECK(cat[i].label == labels[i]);
    CHECK(cat[i].dim == 4);
  }
  CHECK_FALSE(cat[6].is_convex());
  CHECK(to_json(builtin_catalog(4)[2]) == to_json(cat[2]));
}

TEST_CASE("convex views exist exactly for convex types") {
  CHECK(make_convex(cube_spec(3)).has_value());
  CHECK(make_convex(lp_ball_spec(3, 4.0)).has_value());
  CHECK_FALSE(make_convex(builtin_catalog(3)[6]).has_value());
  const auto h = make_convex(lp_ball_spec(3, 1.0));
  // The dual of l1 is l_inf.
  CHECK(h->support(Vec::Ones(3).normalized()) == doctest::Approx(1.0 / std::sqrt(3.0)));
}

TEST_CASE("lp ball exact volumes") {
  const SphereGrid g = build_sphere_grid(3, 2000, 1);
  const StarBody l1 = make_star(lp_ball_spec(3, 1.0));
  REQUIRE(l1.exact_volume().has_value());
  CHECK(*l1.exact_volume() == doctest::Approx(4.0 / 3.0));
  CHECK(volume(l1, g) == doctest::Approx(4.0 / 3.0).epsilon(2e-2));
}

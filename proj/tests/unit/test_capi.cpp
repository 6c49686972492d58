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
#include <cstring>
#include <string>

#include "doctest.h"
#include "starbody/starbody.h"

namespace {
const char* kCube = R"({"type":"cube","dim":3,"params":{"half_side":1}})";
}

TEST_CASE("version and status names") {
  CHECK(std::string(sb_version()) == "1.0.0");
  CHECK(std::string(sb_status_name(SB_OK)) == "ok");
  CHECK(std::strlen(sb_status_name(SB_PARSE)) > 0);
}

TEST_CASE("parse errors name the field") {
  sb_body* b = nullptr;
  CHECK(sb_body_parse(R"({"type":"cube","dim":3,"params":{"half_side":"x"}})", &b) == SB_PARSE);
  CHECK(b == nullptr);
  CHECK(std::string(sb_last_error()).find("half_side") != std::string::npos);
  CHECK(sb_body_parse("{", &b) == SB_PARSE);
  CHECK(sb_body_load("/nonexistent/body.json", &b) == SB_IO);
}

TEST_CASE("null arguments are rejected") {
  sb_body* b = nullptr;
  CHECK(sb_body_parse(nullptr, &b) == SB_INVALID_ARGUMENT);
  CHECK(sb_body_parse(kCube, nullptr) == SB_INVALID_ARGUMENT);
  double v = 0.0;
  CHECK(sb_volume(nullptr, nullptr, &v) == SB_INVALID_ARGUMENT);
  sb_body_free(nullptr);
  sb_grid_free(nullptr);
}

TEST_CASE("functionals through the C interface") {
  sb_body* cube = nullptr;
  sb_grid* grid = nullptr;
  REQUIRE(sb_body_parse(kCube, &cube) == SB_OK);
  REQUIRE(sb_grid_create(3, 2000, 1, &grid) == SB_OK);
  CHECK(sb_body_dim(cube) == 3);
  CHECK(sb_grid_dim(grid) == 3);
  CHECK(sb_grid_size(grid) == 2000);

  const double u[3] = {1.0, 0.0, 0.0};
  double r = 0.0;
  CHECK(sb_body_radial(cube, u, &r) == SB_OK);
  CHECK(r == doctest::Approx(1.0));

  double vol = 0.0;
  CHECK(sb_volume(cube, grid, &vol) == SB_OK);
  CHECK(vol == doctest::Approx(8.0).epsilon(1e-2));

  double m = 0.0;
  CHECK(sb_m_p(cube, 0.0, grid, &m) == SB_INVALID_ARGUMENT);

  const double frame[6] = {1, 0, 0, 0, 1, 0};
  double s = 0.0;
  CHECK(sb_section_volume(cube, 2, frame, &s) == SB_OK);
  CHECK(s == doctest::Approx(4.0).epsilon(1e-3));

  double ik = 0.0;
  CHECK(sb_ik_ball_radius(3, 3, 1.0, &ik) == SB_INVALID_ARGUMENT);
  CHECK(sb_ik_ball_radius(3, 1, 1.0, &ik) == SB_OK);
  CHECK(ik == doctest::Approx(M_PI / 2.0));

  char* json = nullptr;
  CHECK(sb_body_spec_json(cube, &json) == SB_OK);
  CHECK(std::string(json).find("cube") != std::string::npos);
  sb_string_free(json);

  sb_body_free(cube);
  sb_grid_free(grid);
}

TEST_CASE("commands report exit codes") {
  int code = -1;
  char* out = nullptr;
  char* err = nullptr;
  CHECK(sb_run_command("nope", "{}", &code, &out, &err) == SB_OK);
  CHECK(code == 2);
  sb_string_free(out);
  sb_string_free(err);
  CHECK(sb_run_command("report", R"({"run_dir":"/nonexistent/dir"})", &code, nullptr, nullptr) == SB_OK);
  CHECK(code == 2);
  // Malformed options are a command outcome, not API misuse.
  CHECK(sb_run_command("body", "[1]", &code, nullptr, nullptr) == SB_OK);
  CHECK(code == 2);
  CHECK(sb_run_command(nullptr, "{}", &code, nullptr, nullptr) == SB_INVALID_ARGUMENT);
}

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
#include <sstream>

#include "doctest.h"
#include "starbody/error.hpp"
#include "starbody/report.hpp"

using namespace starbody;

namespace {
std::string anchor() { return std::string(known_anchors().front()); }
}  // namespace

TEST_CASE("rows need a known anchor") {
  Report r("unit", 3);
  CHECK_THROWS_AS(r.check("x", "not-a-tag", "", 1.0, "<=", 2.0), Error);
  CHECK_FALSE(is_known_anchor("not-a-tag"));
  CHECK(is_known_anchor(anchor()));
}

TEST_CASE("check relations") {
  Report r("unit", 3);
  CHECK(r.check("a", anchor(), "", 1.0, "<=", 2.0).status == RowStatus::kPass);
  CHECK(r.check("b", anchor(), "", 3.0, "<=", 2.0).status == RowStatus::kFail);
  CHECK(r.check("c", anchor(), "", 3.0, ">=", 2.0).status == RowStatus::kPass);
  CHECK(r.check("d", anchor(), "", 1.0 + 1e-7, "==", 1.0, 1e-6).status == RowStatus::kPass);
  CHECK(r.check("e", anchor(), "", 1.0 + 1e-5, "==", 1.0, 1e-6).status == RowStatus::kFail);
  CHECK(r.check("f", anchor(), "", std::nan(""), "<=", 1.0).status == RowStatus::kFail);
  CHECK(r.info("g", anchor(), "", 5.0).status == RowStatus::kInfo);
  CHECK(r.failures() == 3);
}

TEST_CASE("json round trip is byte identical") {
  Report r("unit", 11);
  r.check("z/row", anchor(), "n=3;k=1", 0.125, "<=", 1.0);
  auto& row = r.info("a/row", anchor(), "n=4", 2.5, "with \"quotes\", commas");
  row.error_bar = 1e-3;
  r.sort_rows();
  std::ostringstream first;
  r.write_json(first);
  std::istringstream in(first.str());
  const Report back = Report::read_json(in);
  std::ostringstream second;
  back.write_json(second);
  CHECK(first.str() == second.str());
  CHECK(back.rows().front().id == "a/row");
  CHECK(back.seed() == 11);
  CHECK(std::isnan(back.rows().back().error_bar));
}

TEST_CASE("csv quotes fields that need it") {
  Report r("unit", 1);
  r.info("id", anchor(), "a=1;b=2", 1.0, "x, \"y\"");
  std::ostringstream out;
  r.write_csv(out);
  const std::string text = out.str();
  CHECK(text.find("\"x, \"\"y\"\"\"") != std::string::npos);
  CHECK(text.substr(0, 3) == "id,");
}

TEST_CASE("number formatting") {
  CHECK(format_number(std::nan("")) == format_number(kNone));
  CHECK(format_number(0.5) == format_number(0.5));
  CHECK(format_number(1.0 / 3.0).size() > 5);
}

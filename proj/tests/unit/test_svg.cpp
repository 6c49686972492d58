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

#include <sstream>

#include "detail/svg.hpp"
#include "doctest.h"

using starbody::detail::SvgPlot;

TEST_CASE("empty plot still renders a document") {
  SvgPlot p("t", "x", "y");
  CHECK(p.empty());
  std::ostringstream out;
  p.write(out);
  CHECK(out.str().find("<svg") != std::string::npos);
  CHECK(out.str().find("</svg>") != std::string::npos);
}

TEST_CASE("series, legend and escaping") {
  SvgPlot p("a < b", "k", "ratio");
  p.line("measured", {1, 2, 3}, {1.0, 1.5, 1.25});
  p.line("bound", {1, 2, 3}, {2, 2, 2}, true);
  p.scatter("points", {1, 2}, {0.5, 0.7});
  p.histogram("hist", {0.1, 0.2, 0.2, 0.9}, 4);
  CHECK_FALSE(p.empty());
  std::ostringstream out;
  p.write(out);
  const std::string s = out.str();
  CHECK(s.find("a &lt; b") != std::string::npos);
  CHECK(s.find("measured") != std::string::npos);
  CHECK(s.find("stroke-dasharray") != std::string::npos);
  CHECK(s.find("<circle") != std::string::npos);
  CHECK(s.find("<rect") != std::string::npos);
}

TEST_CASE("rendering is deterministic") {
  auto make = [] {
    SvgPlot p("t", "x", "y");
    p.line("l", {0, 1}, {0, 1.0 / 3.0});
    std::ostringstream out;
    p.write(out);
    return out.str();
  };
  CHECK(make() == make());
}

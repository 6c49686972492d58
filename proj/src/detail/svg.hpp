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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace starbody::detail {

// Minimal static SVG chart: polylines, scatter markers, or a histogram.
class SvgPlot {
 public:
  SvgPlot(std::string title, std::string x_label, std::string y_label)
      : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

  void line(std::string name, std::vector<double> xs, std::vector<double> ys, bool dashed = false);
  void scatter(std::string name, std::vector<double> xs, std::vector<double> ys);
  void histogram(std::string name, const std::vector<double>& values, int bins = 20);
  bool empty() const { return series_.empty(); }

  void write(std::ostream& out) const;

 private:
  enum class Kind { kLine, kDashed, kScatter, kBars };
  struct Series {
    std::string name;
    Kind kind;
    std::vector<double> xs, ys;
    double bar_width = 0.0;
  };
  std::string title_, x_label_, y_label_;
  std::vector<Series> series_;
};

}  // namespace starbody::detail

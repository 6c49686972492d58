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

// Off-grid evaluation of functions sampled on a SphereGrid by moving least
// squares: a weighted local polynomial fit (order 1 or 2) in tangent
// coordinates over the nearest nodes. Order 1 reproduces linear functions,
// order 2 quadratics.

#pragma once

#include <memory>
#include <vector>

#include "starbody/core.hpp"

namespace starbody {

struct Stencil {
  std::vector<std::size_t> nodes;
  std::vector<double> coefficients;
};

class GridInterpolator {
 public:
  // neighbors = 0 selects twice the number of fitted terms (at least 3n).
  explicit GridInterpolator(const SphereGrid& grid, int order = 1, int neighbors = 0);

  int order() const;

  const SphereGrid& grid() const;
  Stencil stencil(const Vec& unit) const;
  double evaluate(const std::vector<double>& values, const Vec& unit) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

// Star body with the given radii at the grid nodes; exact at nodes and
// interpolated elsewhere.
StarBody grid_body(const SphereGrid& grid, std::vector<double> radii,
                   std::string label = {}, int order = 1);

}  // namespace starbody

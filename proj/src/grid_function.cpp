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

#include "starbody/grid_function.hpp"

#include <algorithm>
#include <cmath>

#include "detail/kdtree.hpp"
#include "starbody/error.hpp"

namespace starbody {

namespace {

int term_count(int n, int order) {
  const int d = n - 1;
  return order == 1 ? 1 + d : 1 + d + d * (d + 1) / 2;
}

}  // namespace

struct GridInterpolator::Impl {
  SphereGrid grid;
  detail::KdTree tree;
  int order;
  std::size_t neighbors;

  Impl(const SphereGrid& g, int o, std::size_t m)
      : grid(g), tree(g.node_matrix()), order(o), neighbors(m) {}
};

GridInterpolator::GridInterpolator(const SphereGrid& grid, int order, int neighbors) {
  require(order == 1 || order == 2, ErrorCode::kInvalidArgument,
          "GridInterpolator: order must be 1 or 2");
  const int terms = term_count(grid.dim(), order);
  const int m = neighbors > 0 ? neighbors : std::max(2 * terms, 3 * grid.dim());
  require(m >= terms, ErrorCode::kInvalidArgument,
          "GridInterpolator: fewer neighbors than fitted terms");
  impl_ = std::make_shared<const Impl>(grid, order, static_cast<std::size_t>(m));
}

const SphereGrid& GridInterpolator::grid() const { return impl_->grid; }
int GridInterpolator::order() const { return impl_->order; }

Stencil GridInterpolator::stencil(const Vec& unit) const {
  const auto near = impl_->tree.nearest(unit, impl_->neighbors);
  Stencil out;
  if (near.front().first < 1e-28) {
    out.nodes = {near.front().second};
    out.coefficients = {1.0};
    return out;
  }
  const int n = impl_->grid.dim();
  const int d = n - 1;
  const std::size_t m = near.size();
  const double h2 = 1.0201 * near.back().first;
  // Orthonormal basis of the tangent space at unit.
  Mat basis = Mat::Identity(n, n);
  basis.col(0) = unit;
  const Mat q = basis.householderQr().householderQ();
  const Mat tangent = q.rightCols(d);
  const int terms = term_count(n, impl_->order);
  Mat design(static_cast<Eigen::Index>(m), terms);
  Vec sqrt_w(static_cast<Eigen::Index>(m));
  for (std::size_t j = 0; j < m; ++j) {
    const auto row = static_cast<Eigen::Index>(j);
    const Vec t = tangent.transpose() * impl_->grid.node(near[j].second);
    const double s = 1.0 - near[j].first / h2;
    sqrt_w[row] = s;
    design(row, 0) = s;
    design.row(row).segment(1, d) = s * t.transpose();
    if (impl_->order == 2) {
      int c = 1 + d;
      for (int a = 0; a < d; ++a)
        for (int b = a; b < d; ++b) design(row, c++) = s * t[a] * t[b];
    }
  }
  // First row of the pseudo-inverse: D (D^T D)^{-1} e_0, with a
  // rank-revealing fallback.
  Vec row0;
  const Mat gram = design.transpose() * design;
  const Eigen::LDLT<Mat> ldlt(gram);
  const Vec e0 = Vec::Unit(terms, 0);
  if (ldlt.info() == Eigen::Success && ldlt.isPositive() &&
      ldlt.vectorD().minCoeff() > 1e-12 * ldlt.vectorD().maxCoeff()) {
    row0 = design * ldlt.solve(e0);
  } else {
    row0 = design.completeOrthogonalDecomposition().pseudoInverse().row(0).transpose();
  }
  out.nodes.resize(m);
  out.coefficients.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    out.nodes[j] = near[j].second;
    out.coefficients[j] = row0[static_cast<Eigen::Index>(j)] * sqrt_w[static_cast<Eigen::Index>(j)];
  }
  return out;
}

double GridInterpolator::evaluate(const std::vector<double>& values, const Vec& unit) const {
  const Stencil s = stencil(unit);
  double total = 0.0;
  for (std::size_t j = 0; j < s.nodes.size(); ++j) total += s.coefficients[j] * values[s.nodes[j]];
  return total;
}

StarBody grid_body(const SphereGrid& grid, std::vector<double> radii, std::string label,
                   int order) {
  require(radii.size() == grid.size(), ErrorCode::kInvalidArgument,
          "grid_body: one radius per node required");
  for (double r : radii)
    require(r > 0.0 && std::isfinite(r), ErrorCode::kInvalidArgument,
            "grid_body: radii must be positive");
  const double floor = *std::min_element(radii.begin(), radii.end());
  auto values = std::make_shared<const std::vector<double>>(std::move(radii));
  GridInterpolator interp(grid, order);
  StarBody body(
      grid.dim(),
      [interp, values, floor](const Vec& u) {
        return std::max(interp.evaluate(*values, u), 0.5 * floor);
      },
      std::move(label));
  return body.cached_on(grid);
}

}  // namespace starbody

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

#include "detail/lp.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "starbody/error.hpp"

namespace starbody::detail {

namespace {

constexpr double kEps = 1e-11;

struct Tableau {
  Mat t;
  std::vector<Eigen::Index> basis;
  Eigen::Index rows;
  Eigen::Index rhs;

  void pivot(Eigen::Index r, Eigen::Index c) {
    t.row(r) /= t(r, c);
    for (Eigen::Index i = 0; i <= rows; ++i) {
      if (i != r && t(i, c) != 0.0) t.row(i) -= t(i, c) * t.row(r);
    }
    basis[static_cast<std::size_t>(r)] = c;
  }

  // Runs simplex iterations with entering columns restricted to [0, limit).
  void optimize(Eigen::Index limit) {
    for (int iter = 0; iter < 100000; ++iter) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < limit; ++j) {
        if (t(rows, j) < -kEps) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return;
      Eigen::Index leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < rows; ++i) {
        if (t(i, enter) > kEps) {
          const double ratio = t(i, rhs) / t(i, enter);
          if (ratio < best - kEps ||
              (std::abs(ratio - best) <= kEps && leave >= 0 &&
               basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
            best = ratio;
            leave = i;
          }
        }
      }
      require(leave >= 0, ErrorCode::kNumerical, "simplex: unbounded objective");
      pivot(leave, enter);
    }
    fail(ErrorCode::kNumerical, "simplex: iteration limit reached");
  }
};

}  // namespace

double simplex_min(Mat a, Vec b, const Vec& c) {
  const Eigen::Index m = a.rows();
  const Eigen::Index nv = a.cols();
  for (Eigen::Index i = 0; i < m; ++i) {
    if (b[i] < 0.0) {
      a.row(i) *= -1.0;
      b[i] = -b[i];
    }
  }
  Tableau tab;
  tab.rows = m;
  tab.rhs = nv + m;
  tab.t = Mat::Zero(m + 1, nv + m + 1);
  tab.t.topLeftCorner(m, nv) = a;
  tab.t.block(0, nv, m, m) = Mat::Identity(m, m);
  tab.t.col(tab.rhs).head(m) = b;
  tab.basis.resize(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) tab.basis[static_cast<std::size_t>(i)] = nv + i;

  // Phase I: minimize the sum of artificials.
  for (Eigen::Index j = 0; j < nv; ++j) tab.t(m, j) = -a.col(j).sum();
  tab.t(m, tab.rhs) = -b.sum();
  tab.optimize(nv);
  require(-tab.t(m, tab.rhs) <= 1e-9 * std::max(1.0, b.sum()), ErrorCode::kNumerical,
          "simplex: infeasible system");
  for (Eigen::Index i = 0; i < m; ++i) {
    if (tab.basis[static_cast<std::size_t>(i)] < nv) continue;
    for (Eigen::Index j = 0; j < nv; ++j) {
      if (std::abs(tab.t(i, j)) > 1e-9) {
        tab.pivot(i, j);
        break;
      }
    }
  }

  // Phase II on the original cost.
  tab.t.row(m).setZero();
  tab.t.row(m).head(nv) = c.transpose();
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index bi = tab.basis[static_cast<std::size_t>(i)];
    if (bi < nv) tab.t.row(m) -= c[bi] * tab.t.row(i);
  }
  tab.optimize(nv);
  return -tab.t(m, tab.rhs);
}

double symmetric_hull_gauge(const Mat& vertices, const Vec& x) {
  const Eigen::Index n = vertices.rows();
  const Eigen::Index m = vertices.cols();
  Mat a(n, 2 * m);
  a.leftCols(m) = vertices;
  a.rightCols(m) = -vertices;
  return simplex_min(std::move(a), x, Vec::Ones(2 * m));
}

}  // namespace starbody::detail

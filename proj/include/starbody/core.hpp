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

// Body representations: sphere grids, star bodies given by radial functions,
// convex bodies given by support functions, ellipsoids, linear maps, and the
// elementary body algebra (linear images, k-radial sums, unions, polars).

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace starbody {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Volume of the Euclidean unit ball B_2^n.
double ball_volume(int n);

// Surface area |S^{n-1}| = n * ball_volume(n).
double sphere_area(int n);

// Unit-norm tolerance used by every direction-taking entry point.
inline constexpr double kUnitTolerance = 1e-12;

// Quadrature nodes and weights on S^{n-1}.
//
// Nodes are stored in antipodal pairs: node(2i+1) == -node(2i) and both carry
// the same weight. Weights sum to one, so sums approximate integrals against
// the rotation-invariant probability measure.
class SphereGrid {
 public:
  SphereGrid(int dim, std::vector<Vec> nodes, std::vector<double> weights);

  int dim() const { return dim_; }
  std::size_t size() const { return nodes_.size(); }
  const Vec& node(std::size_t i) const { return nodes_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<Vec>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t antipode(std::size_t i) const { return i ^ std::size_t{1}; }

  // Nodes as columns of a dim x size matrix.
  const Mat& node_matrix() const { return matrix_; }

 private:
  int dim_;
  std::vector<Vec> nodes_;
  std::vector<double> weights_;
  Mat matrix_;
};

// Symmetric star body given by its radial function.
//
// The evaluator receives unit vectors. Bodies are immutable and cheap to copy;
// a body may carry a cache of its values on the nodes of one grid, which is
// consulted before the evaluator.
class StarBody {
 public:
  using RadialFn = std::function<double(const Vec&)>;

  StarBody(int dim, RadialFn radial, std::string label = {},
           std::optional<double> exact_volume = std::nullopt);

  int dim() const { return dim_; }
  const std::string& label() const { return label_; }
  std::optional<double> exact_volume() const { return exact_volume_; }

  double radial(const Vec& unit) const;
  // Radial function along x / |x| for any nonzero x.
  double radial_at(const Vec& x) const;
  // Minkowski functional ||x||_K.
  double gauge(const Vec& x) const;

  std::vector<double> radii(const SphereGrid& grid) const;

  // Same body with its values precomputed on the grid nodes.
  StarBody cached_on(const SphereGrid& grid) const;
  StarBody relabeled(std::string label) const;

 private:
  struct Cache;
  int dim_;
  std::shared_ptr<const RadialFn> radial_;
  std::shared_ptr<const Cache> cache_;
  std::string label_;
  std::optional<double> exact_volume_;
};

// Symmetric convex body given by its support function on unit vectors. May
// carry an exact radial view of the same body.
class ConvexBodyH {
 public:
  using SupportFn = std::function<double(const Vec&)>;

  ConvexBodyH(int dim, SupportFn support, std::string label = {},
              std::optional<StarBody> radial_view = std::nullopt);

  int dim() const { return dim_; }
  const std::string& label() const { return label_; }
  double support(const Vec& unit) const { return (*support_)(unit); }
  // Positively homogeneous extension h(x) = |x| h(x/|x|).
  double support_at(const Vec& x) const;

  const std::optional<StarBody>& radial_view() const { return radial_view_; }

  // Radial function: the exact view when present, otherwise recovered from the
  // support function as rho(u) = min over nodes v with <u,v> > 0 of
  // h(v) / <u,v> (an outer approximation).
  StarBody star(const SphereGrid& grid) const;

 private:
  int dim_;
  std::shared_ptr<const SupportFn> support_;
  std::string label_;
  std::optional<StarBody> radial_view_;
};

// Centered ellipsoid E = {x : x^T A^{-1} x <= 1} with A symmetric positive
// definite.
class Ellipsoid {
 public:
  explicit Ellipsoid(Mat shape);
  static Ellipsoid ball(int n, double radius);
  // Image of the unit ball under T, i.e. shape T T^T.
  static Ellipsoid image_of_ball(const Mat& t);

  int dim() const { return static_cast<int>(shape_.rows()); }
  const Mat& shape() const { return shape_; }
  const Mat& inverse_shape() const { return inverse_; }

  double radial(const Vec& unit) const;
  double support(const Vec& unit) const;
  double volume() const;
  // Semi-axis lengths in ascending order.
  Vec semi_axes() const;

  StarBody star(std::string label = {}) const;
  ConvexBodyH convex(std::string label = {}) const;

 private:
  Mat shape_;
  Mat inverse_;
  double det_;
};

class LinearMap {
 public:
  explicit LinearMap(Mat matrix);
  static LinearMap identity(int n);
  static LinearMap scaling(int n, double t);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Mat& matrix() const { return matrix_; }
  const Mat& inverse() const { return inverse_; }
  double det() const { return det_; }
  // this o inner.
  LinearMap after(const LinearMap& inner) const;

 private:
  Mat matrix_;
  Mat inverse_;
  double det_;
};

// rho_{TK}(u) = 1 / ||T^{-1} u||_K.
StarBody apply_map(const StarBody& body, const LinearMap& map);
// h_{TC}(u) = h_C(T^T u).
ConvexBodyH apply_map(const ConvexBodyH& body, const LinearMap& map);
StarBody dilate(const StarBody& body, double factor);

// rho = (sum_i rho_i^k)^{1/k}.
StarBody radial_sum_k(std::span<const StarBody> bodies, int k);
// rho = max_i rho_i.
StarBody union_body(std::span<const StarBody> bodies);

struct WitnessOptions {
  std::size_t pairs = 2000;
  std::uint64_t seed = 0x5bd1e995ULL;
  double rel_tol = 1e-9;
};

struct ConvexityWitness {
  bool holds = true;
  // Largest relative excess of the left side over the right side; <= 0 when
  // every tested pair satisfies the inequality.
  double worst_violation = 0.0;
  std::size_t pairs_checked = 0;
};

// Sublinearity of h on node pairs: |u+v| h((u+v)/|u+v|) <= h(u) + h(v).
// Half of the pairs are random node pairs, half join a node to a nearby
// direction so that local failures of convexity are seen.
ConvexityWitness check_convexity(const ConvexBodyH& body, const SphereGrid& grid,
                                 const WitnessOptions& opts = {});
// The same test applied to the Minkowski functional of a star body.
ConvexityWitness check_convexity(const StarBody& body, const SphereGrid& grid,
                                 const WitnessOptions& opts = {});

// rho_{C°} = 1 / h_C. Rejects bodies whose convexity witness fails.
StarBody polar(const ConvexBodyH& body, const SphereGrid& grid,
               const WitnessOptions& opts = {});
// h(u) = max over nodes x of rho_K(x) <x,u> (inner approximation).
ConvexBodyH support_of_star(const StarBody& body, const SphereGrid& grid);

struct RadialRange {
  double min = 0.0;
  double max = 0.0;
};
// Extremes of the radial function over the grid; rejects R/r > 1e6.
RadialRange radial_range(const StarBody& body, const SphereGrid& grid);

inline constexpr double kMaxRadialRatio = 1e6;

}  // namespace starbody

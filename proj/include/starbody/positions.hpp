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

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <vector>

#include "starbody/core.hpp"
#include "starbody/quad.hpp"

namespace starbody {

inline constexpr int kDefaultMonteCarloSamples = 200000;
inline constexpr int kErrorBatches = 10;

// L of the Euclidean ball, omega_n^{-1/n} / sqrt(n+2).
double isotropic_constant_ball(int n);

struct IsotropicData {
  LinearMap transform;
  // The transformed body T K, cached on the grid; grid volume exactly 1.
  StarBody body;
  double isotropic_constant = 0.0;
  // Standard error of the isotropic constant over batch re-samples.
  double isotropic_constant_stderr = 0.0;
  // Sample covariance of K before the transform.
  Mat covariance;
  // Sample covariance of T K.
  Mat covariance_after;
  int samples = 0;
  std::uint64_t seed = 0;
};

// T = s Cov^{-1/2} with s fixing the grid volume of T K to 1;
// L_K = E_2(T K) / sqrt(n).
IsotropicData isotropic_position(const StarBody& body, const SphereGrid& grid,
                                 int samples = kDefaultMonteCarloSamples,
                                 std::uint64_t seed = 1);

void write_isotropic(std::ostream& out, const IsotropicData& data);

// Empirical L_p-centroid body of a uniform point cloud:
//   h(theta) = (mean_i |<x_i, theta>|^p)^{1/p}.
class CentroidBody {
 public:
  CentroidBody(std::shared_ptr<const Mat> points, double p);

  int dim() const { return static_cast<int>(points_->rows()); }
  double p() const { return p_; }
  const Mat& points() const { return *points_; }

  double support(const Vec& unit) const;
  // Support values for each column of dirs.
  Vec support_many(const Mat& dirs) const;
  ConvexBodyH convex(std::string label = {}) const;
  // Same cloud, another exponent.
  CentroidBody with_p(double p) const;
  // P_F Z_p, a centroid body in dimension dim F.
  CentroidBody project(const Subspace& f) const;

 private:
  std::shared_ptr<const Mat> points_;
  double p_;
  Mat second_moment_;
};

// Z_p(K) for a volume-1 body from `samples` uniform points.
CentroidBody centroid_body(const StarBody& body, double p, const SphereGrid& grid,
                           int samples = kDefaultMonteCarloSamples, std::uint64_t seed = 1);

struct CentroidInclusionResult {
  int k = 0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  // max_ratio / k.
  double measured_c = 0.0;
  bool lower_holds = false;
};

// Ratios h_{Z_k} / h_{Z_2} over the grid nodes.
CentroidInclusionResult centroid_inclusion_check(const StarBody& body, int k,
                                                 const SphereGrid& grid,
                                                 int samples = kDefaultMonteCarloSamples,
                                                 std::uint64_t seed = 1, double tol = 1e-9);

ConvexBodyH project_body(const ConvexBodyH& body, const Subspace& f);
// Volume of a convex body of dimension k <= 3 by radial recovery from its
// support function on a sub-sphere grid.
double volume_lowdim(const ConvexBodyH& body, int resolution = 0);
// Same, from support values already sampled on a grid of dimension k.
double volume_from_support(const SphereGrid& grid, const std::vector<double>& support);

struct ProjectionSectionResult {
  int k = 0;
  std::vector<double> products;
  double min = 0.0;
  double max = 0.0;
  double ratio = 0.0;
};

// |K ∩ F^⊥|^{1/k} |P_F Z_k(K)|^{1/k} over the sample; K isotropic of volume 1.
ProjectionSectionResult projection_section_check(const StarBody& body, int k,
                                                 const GrassmannSample& sample,
                                                 const SphereGrid& grid,
                                                 int samples = kDefaultMonteCarloSamples,
                                                 std::uint64_t seed = 1);

struct SantaloResult {
  double value = 0.0;
  // n omega_n^{2/n}: the ball value.
  double upper = 0.0;
  // n ((pi/4)^{n-1} 4^n / n!)^{1/n}.
  double lower = 0.0;
  double volume = 0.0;
  double polar_volume = 0.0;
};

// n (|C| |C°|)^{1/n}.
SantaloResult santalo_check(const ConvexBodyH& body, const SphereGrid& grid);

}  // namespace starbody

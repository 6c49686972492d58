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

// Central sections, the spherical Radon transform and intersection bodies.
//
// Conventions: sigma_F is the probability measure on S^{n-1} ∩ F and
//   |K ∩ F|   = omega_k * mean_{S_F} rho_K^k,          k = dim F,
//   R_m f(F)  = m omega_m * mean_{S_F} f,              m = dim F,
// so |K ∩ F| = R_k(rho_K^k)(F) / k. The k-intersection body I_k(K) satisfies
// |I_k(K) ∩ F| = |K ∩ F^⊥| for all F in G_{n,k}; for k = 1 this is one half
// of the classical intersection body I(K), rho_{I(K)}(u) = |K ∩ u^⊥|.

#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "starbody/core.hpp"
#include "starbody/quad.hpp"

namespace starbody {

// Sub-sphere node count used for k-dimensional sections.
int default_section_resolution(int k);

// Quadrature on S^{n-1} ∩ F for subspaces of a fixed dimension k.
class SectionIntegrator {
 public:
  explicit SectionIntegrator(int k, int resolution = 0);

  int dim() const { return k_; }
  const SphereGrid& local_grid() const { return *grid_; }

  // |K ∩ F|.
  double volume(const StarBody& body, const Subspace& f) const;
  // mean over S_F of fn.
  double mean(const std::function<double(const Vec&)>& fn, const Subspace& f) const;
  // Nodes of the sub-sphere grid embedded in R^n.
  std::vector<Vec> embedded_nodes(const Subspace& f) const;

 private:
  int k_;
  std::shared_ptr<const SphereGrid> grid_;
};

double section_volume(const StarBody& body, const Subspace& f);

std::vector<double> radon(const std::function<double(const Vec&)>& fn, int m,
                          const GrassmannSample& sample, int resolution = 0);

struct SectionFunction {
  int k = 0;
  GrassmannSample sample;
  // |K ∩ F^⊥| for each F in the sample.
  std::vector<double> values;
};

SectionFunction section_function(const StarBody& body, const GrassmannSample& sample,
                                 int resolution = 0);
void write_section_function(std::ostream& out, const SectionFunction& fn);

StarBody intersection_body_lutwak(const StarBody& body, const SphereGrid& grid);
// I_1(K) = I(K) / 2.
StarBody intersection_body_k1(const StarBody& body, const SphereGrid& grid);

// Radius of I_k(R B_2^n).
double ik_ball(int n, int k, double radius = 1.0);

// I_k(E) = |det T|^{1/k} T^{-T} I_k(B_2^n) for E = T B_2^n.
Ellipsoid ik_ellipsoid(const Ellipsoid& e, int k);

// Sub-sphere node count at half the spacing of a working grid of the given
// size, clamped to [50 k, 1200].
int default_operator_resolution(int n, int k, int grid_size);

struct IkOptions {
  // 0 selects the default 1e-3 * mean diagonal of the normal matrix.
  double lambda = 0.0;
  int max_halvings = 6;
  double residual_threshold = 5e-2;
  double negativity_threshold = 1e-2;
  double max_condition = 1e12;
  int section_resolution = 0;
  // Sub-sphere nodes per row of the forward operator; 0 selects
  // default_operator_resolution.
  int operator_resolution = 0;
  // Order of the local fit used for off-grid values of phi.
  int interpolation_order = 2;
};

struct IkResult {
  StarBody body;
  // Values of rho^k at the grid nodes after clipping.
  std::vector<double> phi;
  double residual = 0.0;
  double negativity = 0.0;
  double lambda = 0.0;
  int halvings = 0;
  // Condition number of the unregularized normal matrix.
  double condition = 0.0;
  bool exists = false;
  bool ill_conditioned = false;
  std::string diagnostic;
};

// Regularized inverse Radon least squares for rho_{I_k(K)}^k on the grid
// nodes. sample is a sample of G_{n,k}.
IkResult ik_solve(const StarBody& body, int k, const SphereGrid& grid,
                  const GrassmannSample& sample, const IkOptions& opts = {});

struct SectionRatio {
  double min = 0.0;
  double max = 0.0;
  double ratio = 1.0;
  // ratio^{1/k}.
  double delta = 1.0;
};

SectionRatio section_ratio_extremes(const StarBody& body, int k,
                                    const GrassmannSample& sample, int resolution = 0);

}  // namespace starbody

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
#include <string>
#include <vector>

#include "starbody/core.hpp"
#include "starbody/quad.hpp"
#include "starbody/sections.hpp"

namespace starbody {

// max over the grid of |rho_K - rho_L|.
double d_radial(const StarBody& k, const StarBody& l, const SphereGrid& grid);

// (max rho_1/rho_2) (max rho_2/rho_1) over the grid.
double d_geometric(const StarBody& k1, const StarBody& k2, const SphereGrid& grid);

enum class DistanceKind { kRadial, kGeometric, kBanachMazurUpper };
std::string to_string(DistanceKind kind);

struct DistanceReport {
  DistanceKind kind = DistanceKind::kBanachMazurUpper;
  // Minimum found on the search grid.
  double value = 0.0;
  // max(value, d_G of the witness on an independent grid with 4x the nodes).
  double verified = 0.0;
  // K_1 ⊆ a T K_2 ⊆ value a K_1 on the grid.
  Mat witness;
  double scaling = 1.0;
  // d_G(K_1, K_2) before any search.
  double initial = 0.0;
  bool improved = false;
  int best_restart = -1;
  int restarts = 0;
  int sweeps = 0;
  long evaluations = 0;
};

struct BMOptions {
  int restarts = 12;
  // 0 selects 8 n^2.
  int sweeps = 0;
  double initial_step = 0.2;
  double decay = 0.5;
  double min_step = 1e-7;
  std::uint64_t seed = 1;
};

// Upper bound on d_BM(K_1, K_2) = inf_T d_G(K_1, T K_2) by coordinate-wise
// quadratic probing over the entries of T^{-1}. Starts: identity, the map
// matching second moments, then random perturbations of the identity.
DistanceReport d_bm_upper(const StarBody& k1, const StarBody& k2, const SphereGrid& grid,
                          const BMOptions& opts = {});

// d_G(K_1, T K_2) re-evaluated for a witness map.
double d_geometric_mapped(const StarBody& k1, const StarBody& k2, const Mat& t,
                          const SphereGrid& grid);

struct SectionSandwichResult {
  // 2r/(m+1) |K ∩ axis^⊥|, |K|, 2R |K ∩ axis^⊥|.
  double lower = 0.0;
  double volume = 0.0;
  double upper = 0.0;
  bool holds = false;
};

SectionSandwichResult section_sandwich_check(const ConvexBodyH& body, const Vec& axis,
                                             const SphereGrid& grid);

struct SectionDistanceResult {
  int k = 0;
  double delta = 0.0;
  // delta from the random sample alone.
  double delta_sampled = 0.0;
  double d_g = 0.0;
  double bound = 0.0;
  bool holds = false;
  // |K ∩ F_1| / |K ∩ F_2| for F_i = span{theta_i, F}, F ⊥ span{theta_1, theta_2}.
  double pair_ratio = 0.0;
  // R/(kr) and kR/r.
  double chain_lower = 0.0;
  double chain_upper = 0.0;
  bool chain_holds = false;
};

// d_G(K, B) <= k delta^k with delta from sampled subspaces plus the pair
// used in the proof.
SectionDistanceResult section_distance_check(const StarBody& body, int k,
                                             const GrassmannSample& sample, const SphereGrid& grid);

struct IkBallDistanceOptions {
  int grassmann_samples = 500;
  std::uint64_t seed = 1;
  BMOptions bm = {};
  IkOptions ik = {};
  // Floor of the relative tolerance for the convexity witness of the I_k
  // candidate; raised to three times the candidate's error estimate.
  double witness_tol = 1e-9;
};

struct IkBallDistanceResult {
  int k = 0;
  bool hypotheses_met = false;
  std::string reason;
  bool convex = false;
  double witness_violation = 0.0;
  double witness_tol = 0.0;
  // Estimated relative error of the candidate radii.
  double error_estimate = 0.0;
  double ik_residual = 0.0;
  double d_g = 0.0;
  double d_bm = 0.0;
  double delta = 0.0;
  double bound = 0.0;
  // I_k candidate volume, for downstream checks.
  double volume = 0.0;
};

// Distances of the I_k candidate of an isotropic volume-1 convex body to the
// ball. For k = 1 the candidate is I(K)/2 from exact sections; otherwise
// ik_solve.
IkBallDistanceResult ik_ball_distance_check(const StarBody& body, int k, const SphereGrid& grid,
                                            const IkBallDistanceOptions& opts = {});

// The candidate itself (the same construction as ik_ball_distance_check).
struct IkCandidate {
  StarBody body;
  bool exists = false;
  double residual = 0.0;
  std::string diagnostic;
  // k = 1: relative change under a 4x finer section quadrature; otherwise the
  // solver residual.
  double error_estimate = 0.0;
};
IkCandidate ik_candidate(const StarBody& body, int k, const SphereGrid& grid,
                         std::uint64_t seed = 1, const IkOptions& opts = {});

}  // namespace starbody

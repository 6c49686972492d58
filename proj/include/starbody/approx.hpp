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
#include <vector>

#include "starbody/core.hpp"
#include "starbody/positions.hpp"
#include "starbody/quad.hpp"

namespace starbody {

struct NormalizedBody {
  StarBody body;
  LinearMap map;
  double isotropic_constant = 0.0;
};

// Isotropic position rescaled to volume omega_n. Requires the convexity
// witness.
NormalizedBody normalize_position(const StarBody& body, const SphereGrid& grid,
                                  int samples = kDefaultMonteCarloSamples,
                                  std::uint64_t seed = 1);

struct Covering {
  // Centers as columns; the first center is the origin.
  Mat centers;
  double radius = 0.0;
  std::size_t count = 0;
  std::size_t probes = 0;
  // False when the search stopped at max_centers before covering every probe.
  bool complete = true;
};

// Greedy covering of a probe cloud by balls of radius t. max_centers = 0 means
// no limit.
Covering greedy_cover(const Mat& probes, double t, std::size_t max_centers = 0);
Covering greedy_cover(const StarBody& body, double t, int probe_count, std::uint64_t seed,
                      std::size_t max_centers = 0);

// Semi-axis sqrt(2)(|z| + t) along z, sqrt(2) t orthogonally.
Ellipsoid covering_ellipsoid(const Vec& z, double t);

struct EllipsoidInclusionSlack {
  // min over boundary points p = z + t u of 1 - ||p||_E.
  double inner = 0.0;
  // min over directions of 2|<z,u>| + 2 sqrt(2) t - h_E(u).
  double outer = 0.0;
};

EllipsoidInclusionSlack ellipsoid_inclusion_slack(const Vec& z, double t, int points,
                                                  std::uint64_t seed);

enum class LadderRule {
  // Smallest ladder t whose covering satisfies log N <= k.
  kSmallestT,
  // Among admissible ladder t, the one with the smallest outer volume ratio.
  kBestRatio,
};

struct BPOptions {
  int probes = kDefaultMonteCarloSamples;
  int samples = kDefaultMonteCarloSamples;
  std::uint64_t seed = 1;
  double ladder_ratio = 1.25;
  LadderRule rule = LadderRule::kBestRatio;
  // false: the body is used as given (already isotropic with volume omega_n).
  bool normalize = true;
};

struct LadderStep {
  double t = 0.0;
  std::size_t count = 0;
  bool admissible = false;
  // Outer volume ratio at this t; 0 when not admissible.
  double ovr = 0.0;
};

struct BPApproximant {
  int k = 0;
  // e * C with C the k-radial sum of the ellipsoids.
  StarBody body;
  std::vector<Ellipsoid> ellipsoids = {};
  double t = 0.0;
  std::size_t count = 0;
  double ovr = 0.0;
  // ovr of the smallest admissible t, reported under either rule.
  double ovr_smallest_t = 0.0;
  // sqrt(n/k log(en/k)).
  double bound_shape = 0.0;
  double t_max = 0.0;
  double t_analytic = 0.0;
  double alpha = 0.0;
  bool contains = false;
  // min over nodes of rho_{C_1} / rho_K.
  double containment_margin = 0.0;
  // d(union of E_i, C).
  double union_distance = 0.0;
  std::vector<LadderStep> ladder = {};
  bool ok = false;
  std::string diagnostic = {};
};

// Approximants for several k sharing one normalization and one
// probe cloud.
std::vector<BPApproximant> bp_curve(const StarBody& body, const std::vector<int>& ks,
                                    const SphereGrid& grid, const BPOptions& opts = {});
BPApproximant bp_approximant(const StarBody& body, int k, const SphereGrid& grid,
                             const BPOptions& opts = {});

void write_bp_approximant(std::ostream& out, const BPApproximant& bp);

struct ParallelVolumeRow {
  double t = 0.0;
  double volume = 0.0;
  // |K + tB|^{1/n} / (t |K|^{1/n}).
  double ratio = 0.0;
  double stderr_ratio = 0.0;
};

// |K + tB|^{1/n} / (t |K|^{1/n}); K + tB from h_K + t. Radial recovery for
// n <= 3, Monte Carlo rejection otherwise.
std::vector<ParallelVolumeRow> parallel_volume_check(const ConvexBodyH& body,
                                                     const std::vector<double>& ts,
                                                     const SphereGrid& grid, int samples = 20000,
                                                     std::uint64_t seed = 1);

// max over the grid of max(rho_1/rho_2, rho_2/rho_1).
double star_distance(const StarBody& v1, const StarBody& v2, const SphereGrid& grid);

}  // namespace starbody

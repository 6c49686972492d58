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

// Quadrature on spheres and Grassmannians, and the moment functionals built
// on it.

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "starbody/core.hpp"

namespace starbody {

// Quadrature grid on S^{n-1} with uniform weights.
//
// n = 2 gives equally spaced angles, n = 3 a Fibonacci spiral on the upper
// hemisphere reflected through the origin; both ignore the seed. For n >= 4
// the nodes are seeded Gaussian directions. Every grid is antipodally closed.
// An odd resolution is rounded up to the next even number.
SphereGrid build_sphere_grid(int n, int resolution, std::uint64_t seed = 1);

// Orthonormal k-frame spanning F in R^n.
class Subspace {
 public:
  // frame must have orthonormal columns within 1e-10.
  static Subspace from_frame(Mat frame);
  // Orthonormalizes the columns of a full-rank spanning matrix.
  static Subspace spanned_by(const Mat& vectors);
  static Subspace line(const Vec& direction);
  // The hyperplane normal^⊥.
  static Subspace hyperplane(const Vec& normal);

  int ambient_dim() const { return static_cast<int>(frame_.rows()); }
  int dim() const { return static_cast<int>(frame_.cols()); }
  const Mat& frame() const { return frame_; }
  Mat projector() const { return frame_ * frame_.transpose(); }
  Subspace complement() const;
  Vec embed(const Vec& local) const { return frame_ * local; }

 private:
  explicit Subspace(Mat frame) : frame_(std::move(frame)) {}
  Mat frame_;
};

struct GrassmannSample {
  int ambient_dim = 0;
  int dim = 0;
  std::uint64_t seed = 0;
  std::vector<Subspace> subspaces;

  std::size_t count() const { return subspaces.size(); }
  GrassmannSample complements() const;
};

// Haar-distributed k-dimensional subspaces: thin QR of Gaussian n x k matrices
// with the sign convention diag(R) > 0.
GrassmannSample sample_grassmannian(int n, int k, int count, std::uint64_t seed);

Mat mean_projector(const GrassmannSample& sample);

// omega_n * sum_i w_i rho(u_i)^n.
double volume(const StarBody& body, const SphereGrid& grid);

// (sum_i w_i ||u_i||_C^p)^{1/p}. Rejects |p| < 1e-3; p <= -n only warns.
double m_p(const StarBody& body, double p, const SphereGrid& grid);

// (sum_i w_i h_C(u_i)^p)^{1/p}; convexity witness checked first.
double w_p(const ConvexBodyH& body, double p, const SphereGrid& grid);
inline double mean_width(const ConvexBodyH& body, const SphereGrid& grid) {
  return w_p(body, 1.0, grid);
}

// (n omega_n / (n+p) * sum_i w_i rho(u_i)^{n+p})^{1/p} for a body whose
// quadrature volume on the same grid is one within 1e-3.
double e_p(const StarBody& body, double p, const SphereGrid& grid);

// Closed form for the volume-one Euclidean ball D_n.
double e_p_unit_volume_ball(int n, double p);

// Rescales the body so that its quadrature volume on the grid is exactly one.
StarBody normalize_volume(const StarBody& body, const SphereGrid& grid,
                          double target = 1.0);

// Uniform points in the body as columns of an n x count matrix. Directions are
// drawn with density proportional to rho^n by rejection, radii as
// rho * U^{1/n}.
Mat sample_uniform_in_body(const StarBody& body, int count, std::uint64_t seed);

// Columnar text: one line per node with its coordinates followed by the
// weight.
void write_grid(std::ostream& out, const SphereGrid& grid);
SphereGrid read_grid(std::istream& in);
void write_points(std::ostream& out, const Mat& points);

// Installs the sink for non-fatal warnings (default: stderr).
void set_warning_handler(std::function<void(std::string_view)> handler);
void warn(std::string_view message);

}  // namespace starbody

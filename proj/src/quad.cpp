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

#include "starbody/quad.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>

#include "starbody/error.hpp"

namespace starbody {

namespace {

std::mutex& warning_mutex() {
  static std::mutex m;
  return m;
}

std::function<void(std::string_view)>& warning_handler() {
  static std::function<void(std::string_view)> h = [](std::string_view msg) {
    std::cerr << "warning: " << msg << '\n';
  };
  return h;
}

void check_exponent(double p) {
  require(std::isfinite(p) && std::abs(p) >= 1e-3, ErrorCode::kInvalidArgument,
          "moment exponent p must satisfy |p| >= 1e-3");
}

}  // namespace

void set_warning_handler(std::function<void(std::string_view)> handler) {
  std::lock_guard lock(warning_mutex());
  warning_handler() = std::move(handler);
}

void warn(std::string_view message) {
  std::lock_guard lock(warning_mutex());
  if (warning_handler()) warning_handler()(message);
}

//---------------------------------------------------------------------------//
// Grids
//---------------------------------------------------------------------------//

SphereGrid build_sphere_grid(int n, int resolution, std::uint64_t seed) {
  require(n >= 2, ErrorCode::kInvalidArgument, "build_sphere_grid: n must be >= 2");
  require(resolution >= 50 * n, ErrorCode::kInvalidArgument,
          "build_sphere_grid: resolution must be >= 50*n (got " +
              std::to_string(resolution) + " for n=" + std::to_string(n) + ")");
  const int total = resolution + (resolution % 2);
  const int half = total / 2;
  std::vector<Vec> nodes;
  nodes.reserve(static_cast<std::size_t>(total));
  auto push_pair = [&](Vec v) {
    v.normalize();
    nodes.push_back(v);
    nodes.push_back(-v);
  };
  if (n == 2) {
    for (int i = 0; i < half; ++i) {
      const double phi = 2.0 * std::numbers::pi * i / total;
      Vec v(2);
      v << std::cos(phi), std::sin(phi);
      push_pair(v);
      // Exact antipode avoids cos/sin rounding between phi and phi + pi.
    }
  } else if (n == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < half; ++i) {
      const double z = (i + 0.5) / half;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden * i;
      Vec v(3);
      v << r * std::cos(phi), r * std::sin(phi), z;
      push_pair(v);
    }
  } else {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    while (static_cast<int>(nodes.size()) < total) {
      Vec v(n);
      for (int j = 0; j < n; ++j) v[j] = gauss(rng);
      if (v.norm() < 1e-8) continue;
      push_pair(v);
    }
  }
  std::vector<double> weights(nodes.size(), 1.0 / static_cast<double>(total));
  return SphereGrid(n, std::move(nodes), std::move(weights));
}

//---------------------------------------------------------------------------//
// Subspaces
//---------------------------------------------------------------------------//

namespace {

// Q factor of a thin QR with diag(R) made positive.
Mat thin_q(const Mat& a) {
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ() * Mat::Identity(a.rows(), a.cols());
  const Mat r = qr.matrixQR().topRows(a.cols()).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

}  // namespace

Subspace Subspace::from_frame(Mat frame) {
  require(frame.cols() >= 1 && frame.cols() <= frame.rows(),
          ErrorCode::kInvalidArgument, "Subspace: frame must be n x k with 1 <= k <= n");
  const Mat gram = frame.transpose() * frame;
  require((gram - Mat::Identity(frame.cols(), frame.cols())).cwiseAbs().maxCoeff() <=
              1e-10,
          ErrorCode::kInvalidArgument, "Subspace: frame columns are not orthonormal");
  return Subspace(std::move(frame));
}

Subspace Subspace::spanned_by(const Mat& vectors) {
  require(vectors.cols() >= 1 && vectors.cols() <= vectors.rows(),
          ErrorCode::kInvalidArgument, "Subspace: need 1 <= k <= n spanning vectors");
  Eigen::FullPivLU<Mat> lu(vectors);
  require(lu.rank() == vectors.cols(), ErrorCode::kInvalidArgument,
          "Subspace: spanning vectors are linearly dependent");
  return Subspace(thin_q(vectors));
}

Subspace Subspace::line(const Vec& direction) {
  require(direction.norm() > 0.0, ErrorCode::kInvalidArgument, "Subspace::line: zero vector");
  Mat f = direction.normalized();
  return Subspace(std::move(f));
}

Subspace Subspace::hyperplane(const Vec& normal) {
  return line(normal).complement();
}

Subspace Subspace::complement() const {
  const int n = ambient_dim();
  const int k = dim();
  require(k < n, ErrorCode::kInvalidArgument, "Subspace::complement: F is the whole space");
  Eigen::HouseholderQR<Mat> qr(frame_);
  const Mat q = qr.householderQ() * Mat::Identity(n, n);
  Mat c = q.rightCols(n - k);
  return Subspace(std::move(c));
}

GrassmannSample GrassmannSample::complements() const {
  GrassmannSample out;
  out.ambient_dim = ambient_dim;
  out.dim = ambient_dim - dim;
  out.seed = seed;
  out.subspaces.reserve(subspaces.size());
  for (const auto& s : subspaces) out.subspaces.push_back(s.complement());
  return out;
}

GrassmannSample sample_grassmannian(int n, int k, int count, std::uint64_t seed) {
  require(n >= 2 && k >= 1 && k <= n - 1, ErrorCode::kInvalidArgument,
          "sample_grassmannian: need 1 <= k <= n-1");
  require(count >= 1, ErrorCode::kInvalidArgument, "sample_grassmannian: count must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  GrassmannSample out;
  out.ambient_dim = n;
  out.dim = k;
  out.seed = seed;
  out.subspaces.reserve(static_cast<std::size_t>(count));
  while (static_cast<int>(out.subspaces.size()) < count) {
    Mat g(n, k);
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < n; ++i) g(i, j) = gauss(rng);
    Eigen::FullPivLU<Mat> lu(g);
    if (lu.rank() < k) continue;
    out.subspaces.push_back(Subspace::spanned_by(g));
  }
  return out;
}

Mat mean_projector(const GrassmannSample& sample) {
  Mat acc = Mat::Zero(sample.ambient_dim, sample.ambient_dim);
  for (const auto& s : sample.subspaces) acc += s.projector();
  return acc / static_cast<double>(sample.count());
}

//---------------------------------------------------------------------------//
// Functionals
//---------------------------------------------------------------------------//

namespace {

void check_grid(const StarBody& body, const SphereGrid& grid, const char* what) {
  require(body.dim() == grid.dim(), ErrorCode::kInvalidArgument,
          std::string(what) + ": grid dimension mismatch");
}

}  // namespace

double volume(const StarBody& body, const SphereGrid& grid) {
  check_grid(body, grid, "volume");
  const int n = grid.dim();
  double s = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    s += grid.weight(i) * std::pow(body.radial(grid.node(i)), n);
  return ball_volume(n) * s;
}

double m_p(const StarBody& body, double p, const SphereGrid& grid) {
  check_grid(body, grid, "m_p");
  check_exponent(p);
  if (p <= -grid.dim())
    warn("m_p: p <= -n; the discrete functional is finite but its continuum "
         "analogue need not be");
  double s = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    s += grid.weight(i) * std::pow(body.radial(grid.node(i)), -p);
  return std::pow(s, 1.0 / p);
}

double w_p(const ConvexBodyH& body, double p, const SphereGrid& grid) {
  require(body.dim() == grid.dim(), ErrorCode::kInvalidArgument,
          "w_p: grid dimension mismatch");
  check_exponent(p);
  const auto witness = check_convexity(body, grid, {.pairs = std::min<std::size_t>(grid.size(), 2000)});
  require(witness.holds, ErrorCode::kPrecondition,
          "w_p: convexity witness failed (worst relative excess " +
              std::to_string(witness.worst_violation) + ")");
  double s = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    s += grid.weight(i) * std::pow(body.support(grid.node(i)), p);
  return std::pow(s, 1.0 / p);
}

double e_p(const StarBody& body, double p, const SphereGrid& grid) {
  check_grid(body, grid, "e_p");
  check_exponent(p);
  const int n = grid.dim();
  require(p > -n, ErrorCode::kInvalidArgument, "e_p: p must exceed -n");
  const double vol = volume(body, grid);
  require(std::abs(vol - 1.0) <= 1e-3, ErrorCode::kPrecondition,
          "e_p: body must have volume 1 (measured " + std::to_string(vol) + ")");
  double s = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    s += grid.weight(i) * std::pow(body.radial(grid.node(i)), n + p);
  return std::pow(n * ball_volume(n) / (n + p) * s, 1.0 / p);
}

double e_p_unit_volume_ball(int n, double p) {
  return std::pow(n / (n + p), 1.0 / p) * std::pow(ball_volume(n), -1.0 / n);
}

StarBody normalize_volume(const StarBody& body, const SphereGrid& grid,
                          double target) {
  require(target > 0.0, ErrorCode::kInvalidArgument, "normalize_volume: target > 0");
  const double vol = volume(body, grid);
  return dilate(body, std::pow(target / vol, 1.0 / body.dim()));
}

Mat sample_uniform_in_body(const StarBody& body, int count, std::uint64_t seed) {
  require(count >= 1, ErrorCode::kInvalidArgument, "sample_uniform_in_body: count >= 1");
  const int n = body.dim();
  double bound = 0.0;
  {
    const SphereGrid probe = build_sphere_grid(std::max(n, 2), 200 * std::max(n, 2), seed ^ 0xabcdefULL);
    if (n >= 2) {
      for (const auto& u : probe.nodes()) bound = std::max(bound, body.radial(u));
    }
    bound *= 1.1;
  }
  Mat out(n, count);
  for (;;) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    bool restart = false;
    int filled = 0;
    while (filled < count) {
      Vec u(n);
      for (int j = 0; j < n; ++j) u[j] = gauss(rng);
      const double len = u.norm();
      if (len < 1e-12) continue;
      u /= len;
      const double r = body.radial(u);
      if (r > bound) {
        // The probe grid underestimated the outer radius; start over with a
        // larger envelope so the result stays a function of the seed.
        bound = 1.25 * r;
        restart = true;
        break;
      }
      if (unif(rng) > std::pow(r / bound, n)) continue;
      out.col(filled++) = u * (r * std::pow(unif(rng), 1.0 / n));
    }
    if (!restart) return out;
  }
}

//---------------------------------------------------------------------------//
// Serialization
//---------------------------------------------------------------------------//

void write_grid(std::ostream& out, const SphereGrid& grid) {
  out << std::setprecision(17);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec& v = grid.node(i);
    for (Eigen::Index j = 0; j < v.size(); ++j) out << v[j] << ' ';
    out << grid.weight(i) << '\n';
  }
}

SphereGrid read_grid(std::istream& in) {
  std::vector<Vec> nodes;
  std::vector<double> weights;
  std::string line;
  int dim = -1;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::vector<double> vals;
    double x;
    while (ls >> x) vals.push_back(x);
    require(vals.size() >= 2, ErrorCode::kParse, "read_grid: line needs coordinates and weight");
    const int d = static_cast<int>(vals.size()) - 1;
    require(dim < 0 || d == dim, ErrorCode::kParse, "read_grid: inconsistent dimension");
    dim = d;
    nodes.push_back(Eigen::Map<const Vec>(vals.data(), d));
    weights.push_back(vals.back());
  }
  require(dim > 0, ErrorCode::kParse, "read_grid: empty input");
  return SphereGrid(dim, std::move(nodes), std::move(weights));
}

void write_points(std::ostream& out, const Mat& points) {
  out << std::setprecision(17);
  for (Eigen::Index c = 0; c < points.cols(); ++c) {
    for (Eigen::Index r = 0; r < points.rows(); ++r)
      out << points(r, c) << (r + 1 < points.rows() ? ' ' : '\n');
  }
}

}  // namespace starbody

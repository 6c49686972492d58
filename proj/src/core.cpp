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

#include "starbody/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <random>
#include <unordered_map>

#include "starbody/error.hpp"

namespace starbody {

double ball_volume(int n) {
  require(n >= 1, ErrorCode::kInvalidArgument, "ball_volume: n must be >= 1");
  return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double sphere_area(int n) { return n * ball_volume(n); }

//---------------------------------------------------------------------------//
// SphereGrid
//---------------------------------------------------------------------------//

SphereGrid::SphereGrid(int dim, std::vector<Vec> nodes,
                       std::vector<double> weights)
    : dim_(dim), nodes_(std::move(nodes)), weights_(std::move(weights)) {
  require(dim_ >= 1, ErrorCode::kInvalidArgument, "SphereGrid: dim must be >= 1");
  require(!nodes_.empty() && nodes_.size() == weights_.size(),
          ErrorCode::kInvalidArgument,
          "SphereGrid: nodes and weights must be nonempty and equally long");
  require(nodes_.size() % 2 == 0, ErrorCode::kInvalidArgument,
          "SphereGrid: nodes must come in antipodal pairs");
  double total = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    require(nodes_[i].size() == dim_, ErrorCode::kInvalidArgument,
            "SphereGrid: node dimension mismatch");
    require(std::abs(nodes_[i].norm() - 1.0) < 1e-12, ErrorCode::kInvalidArgument,
            "SphereGrid: nodes must be unit vectors");
    require(weights_[i] > 0.0, ErrorCode::kInvalidArgument,
            "SphereGrid: weights must be positive");
    total += weights_[i];
  }
  for (std::size_t i = 0; i < nodes_.size(); i += 2) {
    require((nodes_[i] + nodes_[i + 1]).norm() < 1e-12 &&
                weights_[i] == weights_[i + 1],
            ErrorCode::kInvalidArgument,
            "SphereGrid: node pairs must be antipodal with equal weights");
  }
  require(std::abs(total - 1.0) < 1e-9, ErrorCode::kInvalidArgument,
          "SphereGrid: weights must sum to one");
  matrix_.resize(dim_, static_cast<Eigen::Index>(nodes_.size()));
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    matrix_.col(static_cast<Eigen::Index>(i)) = nodes_[i];
}

//---------------------------------------------------------------------------//
// StarBody
//---------------------------------------------------------------------------//

namespace {

std::uint64_t bit_hash(const Vec& v) {
  std::uint64_t h = 1469598103934665603ULL;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    std::uint64_t bits;
    const double x = v[i];
    std::memcpy(&bits, &x, sizeof bits);
    h ^= bits + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace

struct StarBody::Cache {
  std::vector<Vec> nodes;
  std::vector<double> values;
  std::unordered_multimap<std::uint64_t, std::size_t> index;

  const double* find(const Vec& u) const {
    auto [lo, hi] = index.equal_range(bit_hash(u));
    for (auto it = lo; it != hi; ++it) {
      if (nodes[it->second] == u) return &values[it->second];
    }
    return nullptr;
  }
};

StarBody::StarBody(int dim, RadialFn radial, std::string label,
                   std::optional<double> exact_volume)
    : dim_(dim),
      radial_(std::make_shared<const RadialFn>(std::move(radial))),
      label_(std::move(label)),
      exact_volume_(exact_volume) {
  require(dim_ >= 1, ErrorCode::kInvalidArgument, "StarBody: dim must be >= 1");
  require(static_cast<bool>(*radial_), ErrorCode::kInvalidArgument,
          "StarBody: empty radial evaluator");
}

double StarBody::radial(const Vec& unit) const {
  if (cache_) {
    if (const double* hit = cache_->find(unit)) return *hit;
  }
  return (*radial_)(unit);
}

double StarBody::radial_at(const Vec& x) const {
  const double r = x.norm();
  require(r > 0.0, ErrorCode::kInvalidArgument, "radial_at: zero vector");
  return radial(x / r);
}

double StarBody::gauge(const Vec& x) const {
  const double r = x.norm();
  if (r == 0.0) return 0.0;
  return r / radial(x / r);
}

std::vector<double> StarBody::radii(const SphereGrid& grid) const {
  require(grid.dim() == dim_, ErrorCode::kInvalidArgument,
          "radii: grid dimension mismatch");
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = radial(grid.node(i));
  return out;
}

StarBody StarBody::cached_on(const SphereGrid& grid) const {
  auto cache = std::make_shared<Cache>();
  cache->nodes = grid.nodes();
  cache->values = radii(grid);
  for (std::size_t i = 0; i < cache->nodes.size(); ++i)
    cache->index.emplace(bit_hash(cache->nodes[i]), i);
  StarBody out = *this;
  out.cache_ = std::move(cache);
  return out;
}

StarBody StarBody::relabeled(std::string label) const {
  StarBody out = *this;
  out.label_ = std::move(label);
  return out;
}

//---------------------------------------------------------------------------//
// ConvexBodyH
//---------------------------------------------------------------------------//

ConvexBodyH::ConvexBodyH(int dim, SupportFn support, std::string label,
                         std::optional<StarBody> radial_view)
    : dim_(dim),
      support_(std::make_shared<const SupportFn>(std::move(support))),
      label_(std::move(label)),
      radial_view_(std::move(radial_view)) {
  require(dim_ >= 1, ErrorCode::kInvalidArgument, "ConvexBodyH: dim must be >= 1");
  require(!radial_view_ || radial_view_->dim() == dim_,
          ErrorCode::kInvalidArgument, "ConvexBodyH: radial view dimension mismatch");
}

double ConvexBodyH::support_at(const Vec& x) const {
  const double r = x.norm();
  if (r == 0.0) return 0.0;
  return r * support(x / r);
}

StarBody ConvexBodyH::star(const SphereGrid& grid) const {
  if (radial_view_) return *radial_view_;
  require(grid.dim() == dim_, ErrorCode::kInvalidArgument,
          "ConvexBodyH::star: grid dimension mismatch");
  auto h = std::make_shared<Vec>(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i)
    (*h)[static_cast<Eigen::Index>(i)] = support(grid.node(i));
  auto nodes = std::make_shared<Mat>(grid.node_matrix());
  return StarBody(
      dim_,
      [h, nodes](const Vec& u) {
        const Vec dots = nodes->transpose() * u;
        double best = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < dots.size(); ++i) {
          if (dots[i] > 1e-12) best = std::min(best, (*h)[i] / dots[i]);
        }
        return best;
      },
      label_ + "/recovered");
}

//---------------------------------------------------------------------------//
// Ellipsoid
//---------------------------------------------------------------------------//

Ellipsoid::Ellipsoid(Mat shape) : shape_(std::move(shape)) {
  require(shape_.rows() == shape_.cols() && shape_.rows() >= 1,
          ErrorCode::kInvalidArgument, "Ellipsoid: shape must be square");
  const double scale = std::max(1.0, shape_.cwiseAbs().maxCoeff());
  require((shape_ - shape_.transpose()).cwiseAbs().maxCoeff() <= 1e-10 * scale,
          ErrorCode::kInvalidArgument, "Ellipsoid: shape must be symmetric");
  shape_ = 0.5 * (shape_ + shape_.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Mat> eig(shape_);
  const Vec ev = eig.eigenvalues();
  require(ev.minCoeff() > 0.0, ErrorCode::kInvalidArgument,
          "Ellipsoid: shape must be positive definite");
  require(std::sqrt(ev.maxCoeff() / ev.minCoeff()) <= kMaxRadialRatio,
          ErrorCode::kInvalidArgument,
          "Ellipsoid: axis ratio exceeds 1e6 (degenerate)");
  inverse_ = eig.eigenvectors() * ev.cwiseInverse().asDiagonal() *
             eig.eigenvectors().transpose();
  det_ = ev.prod();
}

Ellipsoid Ellipsoid::ball(int n, double radius) {
  require(radius > 0.0, ErrorCode::kInvalidArgument, "Ellipsoid::ball: radius > 0");
  return Ellipsoid(Mat::Identity(n, n) * radius * radius);
}

Ellipsoid Ellipsoid::image_of_ball(const Mat& t) {
  return Ellipsoid(t * t.transpose());
}

double Ellipsoid::radial(const Vec& unit) const {
  return 1.0 / std::sqrt(unit.dot(inverse_ * unit));
}

double Ellipsoid::support(const Vec& unit) const {
  return std::sqrt(unit.dot(shape_ * unit));
}

double Ellipsoid::volume() const { return ball_volume(dim()) * std::sqrt(det_); }

Vec Ellipsoid::semi_axes() const {
  Eigen::SelfAdjointEigenSolver<Mat> eig(shape_, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().cwiseSqrt();
}

StarBody Ellipsoid::star(std::string label) const {
  auto inv = std::make_shared<const Mat>(inverse_);
  return StarBody(
      dim(), [inv](const Vec& u) { return 1.0 / std::sqrt(u.dot(*inv * u)); },
      std::move(label), volume());
}

ConvexBodyH Ellipsoid::convex(std::string label) const {
  auto a = std::make_shared<const Mat>(shape_);
  return ConvexBodyH(
      dim(), [a](const Vec& u) { return std::sqrt(u.dot(*a * u)); }, label,
      star(label));
}

//---------------------------------------------------------------------------//
// LinearMap
//---------------------------------------------------------------------------//

LinearMap::LinearMap(Mat matrix) : matrix_(std::move(matrix)) {
  require(matrix_.rows() == matrix_.cols() && matrix_.rows() >= 1,
          ErrorCode::kInvalidArgument, "LinearMap: matrix must be square");
  Eigen::JacobiSVD<Mat> svd(matrix_);
  const Vec s = svd.singularValues();
  require(s[s.size() - 1] > 0.0 && s[0] / s[s.size() - 1] < 1e12,
          ErrorCode::kInvalidArgument, "LinearMap: matrix is singular");
  inverse_ = matrix_.inverse();
  det_ = matrix_.determinant();
}

LinearMap LinearMap::identity(int n) { return LinearMap(Mat::Identity(n, n)); }

LinearMap LinearMap::scaling(int n, double t) {
  return LinearMap(Mat::Identity(n, n) * t);
}

LinearMap LinearMap::after(const LinearMap& inner) const {
  return LinearMap(matrix_ * inner.matrix_);
}

//---------------------------------------------------------------------------//
// Body algebra
//---------------------------------------------------------------------------//

namespace {

void check_map_condition(const LinearMap& map) {
  Eigen::JacobiSVD<Mat> svd(map.matrix());
  const Vec s = svd.singularValues();
  require(s[0] / s[s.size() - 1] <= kMaxRadialRatio, ErrorCode::kInvalidArgument,
          "apply_map: condition number exceeds 1e6 (degenerate image)");
}

}  // namespace

StarBody apply_map(const StarBody& body, const LinearMap& map) {
  require(body.dim() == map.dim(), ErrorCode::kInvalidArgument,
          "apply_map: dimension mismatch");
  check_map_condition(map);
  auto inv = std::make_shared<const Mat>(map.inverse());
  std::optional<double> vol;
  if (body.exact_volume()) vol = *body.exact_volume() * std::abs(map.det());
  return StarBody(
      body.dim(),
      [body, inv](const Vec& u) {
        const Vec y = *inv * u;
        const double r = y.norm();
        return body.radial(y / r) / r;
      },
      body.label(), vol);
}

ConvexBodyH apply_map(const ConvexBodyH& body, const LinearMap& map) {
  require(body.dim() == map.dim(), ErrorCode::kInvalidArgument,
          "apply_map: dimension mismatch");
  check_map_condition(map);
  auto tt = std::make_shared<const Mat>(map.matrix().transpose());
  std::optional<StarBody> view;
  if (body.radial_view()) view = apply_map(*body.radial_view(), map);
  return ConvexBodyH(
      body.dim(), [body, tt](const Vec& u) { return body.support_at(*tt * u); },
      body.label(), view);
}

StarBody dilate(const StarBody& body, double factor) {
  require(factor > 0.0, ErrorCode::kInvalidArgument, "dilate: factor must be > 0");
  std::optional<double> vol;
  if (body.exact_volume())
    vol = *body.exact_volume() * std::pow(factor, body.dim());
  return StarBody(
      body.dim(), [body, factor](const Vec& u) { return factor * body.radial(u); },
      body.label(), vol);
}

StarBody radial_sum_k(std::span<const StarBody> bodies, int k) {
  require(!bodies.empty(), ErrorCode::kInvalidArgument,
          "radial_sum_k: empty body list");
  require(k >= 1, ErrorCode::kInvalidArgument, "radial_sum_k: k must be >= 1");
  const int n = bodies.front().dim();
  for (const auto& b : bodies)
    require(b.dim() == n, ErrorCode::kInvalidArgument,
            "radial_sum_k: dimension mismatch");
  if (bodies.size() == 1) return bodies.front();
  std::vector<StarBody> parts(bodies.begin(), bodies.end());
  return StarBody(
      n,
      [parts = std::move(parts), k](const Vec& u) {
        // Scale by the largest term so high powers do not overflow.
        double top = 0.0;
        std::vector<double> r(parts.size());
        for (std::size_t i = 0; i < parts.size(); ++i) {
          r[i] = parts[i].radial(u);
          top = std::max(top, r[i]);
        }
        double s = 0.0;
        for (double ri : r) s += std::pow(ri / top, k);
        return top * std::pow(s, 1.0 / k);
      },
      "radial_sum");
}

StarBody union_body(std::span<const StarBody> bodies) {
  require(!bodies.empty(), ErrorCode::kInvalidArgument, "union_body: empty body list");
  const int n = bodies.front().dim();
  for (const auto& b : bodies)
    require(b.dim() == n, ErrorCode::kInvalidArgument, "union_body: dimension mismatch");
  if (bodies.size() == 1) return bodies.front();
  std::vector<StarBody> parts(bodies.begin(), bodies.end());
  return StarBody(
      n,
      [parts = std::move(parts)](const Vec& u) {
        double best = 0.0;
        for (const auto& p : parts) best = std::max(best, p.radial(u));
        return best;
      },
      "union");
}

namespace {

template <typename Gauge>
ConvexityWitness sublinearity_witness(int dim, Gauge&& gauge,
                                      const SphereGrid& grid,
                                      const WitnessOptions& opts) {
  require(grid.dim() == dim, ErrorCode::kInvalidArgument,
          "check_convexity: grid dimension mismatch");
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<std::size_t> pick(0, grid.size() - 1);
  std::normal_distribution<double> gauss;
  ConvexityWitness out;
  out.worst_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < opts.pairs; ++p) {
    const Vec& u = grid.node(pick(rng));
    Vec v;
    if (p % 2 == 0) {
      v = grid.node(pick(rng));
    } else {
      Vec g(dim);
      for (int i = 0; i < dim; ++i) g[i] = gauss(rng);
      g -= g.dot(u) * u;
      if (g.norm() < 1e-9) continue;
      v = (u + 0.25 * g.normalized()).normalized();
    }
    const Vec s = u + v;
    const double len = s.norm();
    if (len < 1e-3) continue;
    const double lhs = len * gauge(Vec(s / len));
    const double rhs = gauge(u) + gauge(v);
    const double excess = (lhs - rhs) / rhs;
    out.worst_violation = std::max(out.worst_violation, excess);
    ++out.pairs_checked;
  }
  out.holds = out.worst_violation <= opts.rel_tol;
  return out;
}

}  // namespace

ConvexityWitness check_convexity(const ConvexBodyH& body, const SphereGrid& grid,
                                 const WitnessOptions& opts) {
  return sublinearity_witness(
      body.dim(), [&](const Vec& u) { return body.support(u); }, grid, opts);
}

ConvexityWitness check_convexity(const StarBody& body, const SphereGrid& grid,
                                 const WitnessOptions& opts) {
  return sublinearity_witness(
      body.dim(), [&](const Vec& u) { return 1.0 / body.radial(u); }, grid, opts);
}

StarBody polar(const ConvexBodyH& body, const SphereGrid& grid,
               const WitnessOptions& opts) {
  const auto witness = check_convexity(body, grid, opts);
  require(witness.holds, ErrorCode::kPrecondition,
          "polar: convexity witness failed (worst relative excess " +
              std::to_string(witness.worst_violation) + ")");
  return StarBody(
      body.dim(), [body](const Vec& u) { return 1.0 / body.support(u); },
      body.label() + "/polar");
}

ConvexBodyH support_of_star(const StarBody& body, const SphereGrid& grid) {
  require(grid.dim() == body.dim(), ErrorCode::kInvalidArgument,
          "support_of_star: grid dimension mismatch");
  const auto r = body.radii(grid);
  auto points = std::make_shared<Mat>(grid.node_matrix());
  for (Eigen::Index i = 0; i < points->cols(); ++i)
    points->col(i) *= r[static_cast<std::size_t>(i)];
  return ConvexBodyH(
      body.dim(),
      [points](const Vec& u) { return (points->transpose() * u).maxCoeff(); },
      body.label() + "/support");
}

RadialRange radial_range(const StarBody& body, const SphereGrid& grid) {
  const auto r = body.radii(grid);
  const auto [lo, hi] = std::minmax_element(r.begin(), r.end());
  RadialRange out{*lo, *hi};
  require(out.min > 0.0, ErrorCode::kInvalidArgument,
          "radial function must be positive on the grid");
  require(out.max / out.min <= kMaxRadialRatio, ErrorCode::kInvalidArgument,
          "radial ratio R/r exceeds 1e6 (degenerate body)");
  return out;
}

}  // namespace starbody

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

#include "starbody/positions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "json.hpp"
#include "starbody/error.hpp"
#include "starbody/sections.hpp"

namespace starbody {

double isotropic_constant_ball(int n) {
  return std::pow(ball_volume(n), -1.0 / n) / std::sqrt(n + 2.0);
}

namespace {

Mat second_moment(const Mat& points) {
  return points * points.transpose() / static_cast<double>(points.cols());
}

Mat inverse_sqrt(const Mat& cov) {
  Eigen::SelfAdjointEigenSolver<Mat> eig(cov);
  const Vec& ev = eig.eigenvalues();
  require(ev.minCoeff() > 1e-12 * ev.maxCoeff() && ev.minCoeff() > 0.0, ErrorCode::kNumerical,
          "isotropic_position: near-singular covariance (degenerate body)");
  return eig.eigenvectors() * ev.cwiseSqrt().cwiseInverse().asDiagonal() *
         eig.eigenvectors().transpose();
}

struct Normalized {
  LinearMap map;
  StarBody body;
  double constant;
};

Normalized normalize_with(const StarBody& body, const Mat& cov, const SphereGrid& grid) {
  const int n = body.dim();
  LinearMap t0(inverse_sqrt(cov));
  const StarBody k0 = apply_map(body, t0).cached_on(grid);
  const double s = std::pow(volume(k0, grid), -1.0 / n);
  LinearMap t(s * t0.matrix());
  const StarBody tk = dilate(k0, s).cached_on(grid);
  return {t, tk, e_p(tk, 2.0, grid) / std::sqrt(static_cast<double>(n))};
}

double mean_abs_pow(const Eigen::Ref<const Vec>& y, double p) {
  double total = 0.0;
  if (p == 1.0) {
    for (Eigen::Index i = 0; i < y.size(); ++i) total += std::abs(y[i]);
  } else if (p == 3.0) {
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double a = std::abs(y[i]);
      total += a * a * a;
    }
  } else if (p == 4.0) {
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double a = y[i] * y[i];
      total += a * a;
    }
  } else {
    for (Eigen::Index i = 0; i < y.size(); ++i) total += std::pow(std::abs(y[i]), p);
  }
  return total / static_cast<double>(y.size());
}

}  // namespace

IsotropicData isotropic_position(const StarBody& body, const SphereGrid& grid, int samples,
                                 std::uint64_t seed) {
  const int n = body.dim();
  require(grid.dim() == n, ErrorCode::kInvalidArgument,
          "isotropic_position: grid dimension mismatch");
  require(samples >= 10 * kErrorBatches, ErrorCode::kInvalidArgument,
          "isotropic_position: too few samples");
  const Mat points = sample_uniform_in_body(body, samples, seed);
  const Mat cov = second_moment(points);
  Normalized full = normalize_with(body, cov, grid);

  const Eigen::Index batch = points.cols() / kErrorBatches;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int b = 0; b < kErrorBatches; ++b) {
    const Mat part = points.middleCols(b * batch, batch);
    const double l = normalize_with(body, second_moment(part), grid).constant;
    sum += l;
    sum_sq += l * l;
  }
  const double mean = sum / kErrorBatches;
  const double var = std::max(sum_sq / kErrorBatches - mean * mean, 0.0);
  // Batch spread scaled to the full sample size.
  const double stderr_full = std::sqrt(var / (kErrorBatches - 1.0));

  const Mat after = full.map.matrix() * cov * full.map.matrix().transpose();
  return IsotropicData{full.map, full.body.relabeled(body.label() + "/isotropic"),
                       full.constant, stderr_full, cov, after, samples, seed};
}

void write_isotropic(std::ostream& out, const IsotropicData& data) {
  nlohmann::json doc;
  const Mat& t = data.transform.matrix();
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    std::vector<double> row(static_cast<std::size_t>(t.cols()));
    for (Eigen::Index j = 0; j < t.cols(); ++j) row[static_cast<std::size_t>(j)] = t(i, j);
    rows.push_back(row);
  }
  doc["transform"] = rows;
  doc["isotropic_constant"] = data.isotropic_constant;
  doc["isotropic_constant_stderr"] = data.isotropic_constant_stderr;
  const Vec ev = Eigen::SelfAdjointEigenSolver<Mat>(data.covariance_after).eigenvalues();
  doc["covariance_after_eigenvalues"] = std::vector<double>(ev.data(), ev.data() + ev.size());
  doc["samples"] = data.samples;
  doc["seed"] = data.seed;
  out << doc.dump(2) << "\n";
}

CentroidBody::CentroidBody(std::shared_ptr<const Mat> points, double p)
    : points_(std::move(points)), p_(p) {
  require(points_ && points_->cols() > 0, ErrorCode::kInvalidArgument,
          "CentroidBody: empty point cloud");
  require(p_ >= 1.0, ErrorCode::kInvalidArgument, "CentroidBody: p must be >= 1");
  second_moment_ = second_moment(*points_);
}

double CentroidBody::support(const Vec& unit) const {
  if (p_ == 2.0) return std::sqrt(unit.dot(second_moment_ * unit));
  const Vec y = points_->transpose() * unit;
  return std::pow(mean_abs_pow(y, p_), 1.0 / p_);
}

Vec CentroidBody::support_many(const Mat& dirs) const {
  Vec out(dirs.cols());
  if (p_ == 2.0) {
    for (Eigen::Index j = 0; j < dirs.cols(); ++j)
      out[j] = std::sqrt(dirs.col(j).dot(second_moment_ * dirs.col(j)));
    return out;
  }
  constexpr Eigen::Index kBlock = 32;
  for (Eigen::Index j0 = 0; j0 < dirs.cols(); j0 += kBlock) {
    const Eigen::Index w = std::min(kBlock, dirs.cols() - j0);
    const Mat y = points_->transpose() * dirs.middleCols(j0, w);
    for (Eigen::Index j = 0; j < w; ++j)
      out[j0 + j] = std::pow(mean_abs_pow(y.col(j), p_), 1.0 / p_);
  }
  return out;
}

ConvexBodyH CentroidBody::convex(std::string label) const {
  CentroidBody self = *this;
  return ConvexBodyH(
      dim(), [self](const Vec& u) { return self.support(u); }, std::move(label));
}

CentroidBody CentroidBody::with_p(double p) const { return CentroidBody(points_, p); }

CentroidBody CentroidBody::project(const Subspace& f) const {
  require(f.ambient_dim() == dim(), ErrorCode::kInvalidArgument,
          "CentroidBody::project: dimension mismatch");
  return CentroidBody(std::make_shared<const Mat>(f.frame().transpose() * *points_), p_);
}

CentroidBody centroid_body(const StarBody& body, double p, const SphereGrid& grid, int samples,
                           std::uint64_t seed) {
  const double vol = volume(body, grid);
  require(std::abs(vol - 1.0) <= 1e-3, ErrorCode::kPrecondition,
          "centroid_body: body must have volume 1 (measured " + std::to_string(vol) + ")");
  auto points = std::make_shared<const Mat>(sample_uniform_in_body(body, samples, seed));
  CentroidBody z(points, p);
  const auto witness = check_convexity(z.convex(), grid, {.pairs = 200});
  require(witness.holds, ErrorCode::kNumerical, "centroid_body: convexity witness failed");
  return z;
}

CentroidInclusionResult centroid_inclusion_check(const StarBody& body, int k,
                                                 const SphereGrid& grid, int samples,
                                                 std::uint64_t seed, double tol) {
  require(k >= 2, ErrorCode::kInvalidArgument, "centroid_inclusion_check: k must be >= 2");
  const CentroidBody z2 = centroid_body(body, 2.0, grid, samples, seed);
  const CentroidBody zk = z2.with_p(k);
  const Vec h2 = z2.support_many(grid.node_matrix());
  const Vec hk = zk.support_many(grid.node_matrix());
  const Vec ratio = hk.cwiseQuotient(h2);
  CentroidInclusionResult out;
  out.k = k;
  out.min_ratio = ratio.minCoeff();
  out.max_ratio = ratio.maxCoeff();
  out.measured_c = out.max_ratio / k;
  out.lower_holds = out.min_ratio >= 1.0 - tol;
  return out;
}

ConvexBodyH project_body(const ConvexBodyH& body, const Subspace& f) {
  require(f.ambient_dim() == body.dim(), ErrorCode::kInvalidArgument,
          "project_body: dimension mismatch");
  const Mat frame = f.frame();
  return ConvexBodyH(
      f.dim(), [body, frame](const Vec& v) { return body.support(frame * v); },
      "P(" + body.label() + ")");
}

double volume_from_support(const SphereGrid& grid, const std::vector<double>& support) {
  require(support.size() == grid.size(), ErrorCode::kInvalidArgument,
          "volume_from_support: one value per node required");
  const int k = grid.dim();
  const Mat& nodes = grid.node_matrix();
  const Mat gram = nodes.transpose() * nodes;
  double total = 0.0;
  for (Eigen::Index i = 0; i < gram.cols(); ++i) {
    double rho = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < gram.rows(); ++j) {
      const double c = gram(j, i);
      if (c > 1e-12) rho = std::min(rho, support[static_cast<std::size_t>(j)] / c);
    }
    total += grid.weight(static_cast<std::size_t>(i)) * std::pow(rho, k);
  }
  return ball_volume(k) * total;
}

double volume_lowdim(const ConvexBodyH& body, int resolution) {
  const int k = body.dim();
  require(k <= 3, ErrorCode::kInvalidArgument, "volume_lowdim: dimension above 3");
  if (k == 1) return 2.0 * body.support(Vec::Ones(1));
  const SphereGrid grid = build_sphere_grid(k, resolution > 0 ? resolution
                                                              : default_section_resolution(k));
  std::vector<double> h(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) h[i] = body.support(grid.node(i));
  return volume_from_support(grid, h);
}

ProjectionSectionResult projection_section_check(const StarBody& body, int k,
                                                 const GrassmannSample& sample,
                                                 const SphereGrid& grid, int samples,
                                                 std::uint64_t seed) {
  const int n = body.dim();
  require(k >= 1 && k <= 3 && k <= n - 1, ErrorCode::kInvalidArgument,
          "projection_section_check: need 1 <= k <= min(3, n-1)");
  require(sample.dim == k && sample.ambient_dim == n, ErrorCode::kInvalidArgument,
          "projection_section_check: sample must be of G_{n,k}");
  const CentroidBody zk = centroid_body(body, static_cast<double>(k), grid, samples, seed);
  const SectionIntegrator sections(n - k);
  std::optional<SphereGrid> local;
  if (k >= 2) local = build_sphere_grid(k, default_section_resolution(k));

  ProjectionSectionResult out;
  out.k = k;
  for (const Subspace& f : sample.subspaces) {
    const double sec = sections.volume(body, f.complement());
    const CentroidBody proj = zk.project(f);
    double vol = 0.0;
    if (k == 1) {
      vol = 2.0 * proj.support(Vec::Ones(1));
    } else {
      const Vec h = proj.support_many(local->node_matrix());
      vol = volume_from_support(*local, std::vector<double>(h.data(), h.data() + h.size()));
    }
    out.products.push_back(std::pow(sec * vol, 1.0 / k));
  }
  const auto [lo, hi] = std::minmax_element(out.products.begin(), out.products.end());
  out.min = *lo;
  out.max = *hi;
  out.ratio = out.max / out.min;
  return out;
}

SantaloResult santalo_check(const ConvexBodyH& body, const SphereGrid& grid) {
  const int n = body.dim();
  SantaloResult out;
  out.volume = volume(body.star(grid), grid);
  out.polar_volume = volume(polar(body, grid), grid);
  out.value = n * std::pow(out.volume * out.polar_volume, 1.0 / n);
  out.upper = n * std::pow(ball_volume(n), 2.0 / n);
  const double kuperberg =
      std::pow(std::numbers::pi / 4.0, n - 1) * std::pow(4.0, n) / std::tgamma(n + 1.0);
  out.lower = n * std::pow(kuperberg, 1.0 / n);
  return out;
}

}  // namespace starbody

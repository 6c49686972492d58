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

#include "starbody/sections.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "detail/kdtree.hpp"
#include "starbody/error.hpp"
#include "starbody/grid_function.hpp"

namespace starbody {

int default_section_resolution(int k) {
  switch (k) {
    case 1:
      return 2;
    case 2:
      return 360;
    case 3:
      return 1200;
    default:
      return 400 * k;
  }
}

SectionIntegrator::SectionIntegrator(int k, int resolution) : k_(k) {
  require(k >= 1, ErrorCode::kInvalidArgument, "SectionIntegrator: k must be >= 1");
  if (k >= 2) {
    const int res = resolution > 0 ? resolution : default_section_resolution(k);
    grid_ = std::make_shared<const SphereGrid>(build_sphere_grid(k, res));
  }
}

double SectionIntegrator::volume(const StarBody& body, const Subspace& f) const {
  require(f.dim() == k_, ErrorCode::kInvalidArgument, "section: subspace dimension mismatch");
  require(f.ambient_dim() == body.dim(), ErrorCode::kInvalidArgument,
          "section: ambient dimension mismatch");
  if (k_ == 1) return 2.0 * body.radial(f.frame().col(0));
  // Antipodal nodes carry equal weights and rho is even, so sum one of each pair.
  double total = 0.0;
  for (std::size_t i = 0; i < grid_->size(); i += 2) {
    const double r = body.radial(f.embed(grid_->node(i)));
    total += 2.0 * grid_->weight(i) * std::pow(r, k_);
  }
  return ball_volume(k_) * total;
}

double SectionIntegrator::mean(const std::function<double(const Vec&)>& fn,
                               const Subspace& f) const {
  require(f.dim() == k_, ErrorCode::kInvalidArgument, "section: subspace dimension mismatch");
  if (k_ == 1) {
    const Vec u = f.frame().col(0);
    return 0.5 * (fn(u) + fn(Vec(-u)));
  }
  double total = 0.0;
  for (std::size_t i = 0; i < grid_->size(); ++i)
    total += grid_->weight(i) * fn(f.embed(grid_->node(i)));
  return total;
}

std::vector<Vec> SectionIntegrator::embedded_nodes(const Subspace& f) const {
  if (k_ == 1) return {f.frame().col(0), -f.frame().col(0)};
  std::vector<Vec> out;
  out.reserve(grid_->size());
  for (const Vec& u : grid_->nodes()) out.push_back(f.embed(u));
  return out;
}

double section_volume(const StarBody& body, const Subspace& f) {
  return SectionIntegrator(f.dim()).volume(body, f);
}

std::vector<double> radon(const std::function<double(const Vec&)>& fn, int m,
                          const GrassmannSample& sample, int resolution) {
  require(m >= 1 && m == sample.dim, ErrorCode::kInvalidArgument,
          "radon: order must match the sample dimension");
  const SectionIntegrator integ(m, resolution);
  const double area = m * ball_volume(m);
  std::vector<double> out;
  out.reserve(sample.count());
  for (const Subspace& f : sample.subspaces) out.push_back(area * integ.mean(fn, f));
  return out;
}

SectionFunction section_function(const StarBody& body, const GrassmannSample& sample,
                                 int resolution) {
  const int n = sample.ambient_dim;
  const SectionIntegrator integ(n - sample.dim, resolution);
  SectionFunction out{sample.dim, sample, {}};
  out.values.reserve(sample.count());
  for (const Subspace& f : sample.subspaces) out.values.push_back(integ.volume(body, f.complement()));
  return out;
}

void write_section_function(std::ostream& out, const SectionFunction& fn) {
  const auto old_precision = out.precision(17);
  out << "# n " << fn.sample.ambient_dim << " k " << fn.k << " seed " << fn.sample.seed
      << " count " << fn.sample.count() << "\n";
  for (std::size_t i = 0; i < fn.sample.count(); ++i) {
    const Mat& frame = fn.sample.subspaces[i].frame();
    for (Eigen::Index c = 0; c < frame.cols(); ++c)
      for (Eigen::Index r = 0; r < frame.rows(); ++r) out << frame(r, c) << ' ';
    out << fn.values[i] << '\n';
  }
  out.precision(old_precision);
}

StarBody intersection_body_lutwak(const StarBody& body, const SphereGrid& grid) {
  const int n = body.dim();
  require(n >= 2 && grid.dim() == n, ErrorCode::kInvalidArgument,
          "intersection body: dimension mismatch");
  auto integ = std::make_shared<const SectionIntegrator>(n - 1);
  StarBody out(
      n, [body, integ](const Vec& u) { return integ->volume(body, Subspace::hyperplane(u)); },
      "I(" + body.label() + ")");
  return out.cached_on(grid);
}

StarBody intersection_body_k1(const StarBody& body, const SphereGrid& grid) {
  const StarBody lutwak = intersection_body_lutwak(body, grid);
  return dilate(lutwak, 0.5).cached_on(grid).relabeled("I_1(" + body.label() + ")");
}

double ik_ball(int n, int k, double radius) {
  require(k >= 1 && k <= n - 1, ErrorCode::kInvalidArgument, "ik_ball: need 1 <= k <= n-1");
  require(radius > 0.0, ErrorCode::kInvalidArgument, "ik_ball: radius must be positive");
  return std::pow(ball_volume(n - k) * std::pow(radius, n - k) / ball_volume(k), 1.0 / k);
}

Ellipsoid ik_ellipsoid(const Ellipsoid& e, int k) {
  const int n = e.dim();
  const double r0 = ik_ball(n, k);
  const double det = e.shape().determinant();
  const Mat shape = std::pow(det, 1.0 / k) * r0 * r0 * e.inverse_shape();
  return Ellipsoid(0.5 * (shape + shape.transpose()));
}

int default_operator_resolution(int n, int k, int grid_size) {
  if (k == 1) return 2;
  // Half the working grid spacing on S^{k-1}, capped.
  const double h = std::pow(n * ball_volume(n) / grid_size, 1.0 / (n - 1));
  const double nodes = k * ball_volume(k) / std::pow(0.5 * h, k - 1);
  return std::clamp(static_cast<int>(std::ceil(nodes)), 50 * k, 1200);
}

namespace {

// Graph Laplacian over antipodal pairs, joining each pair to the pairs of its
// nearest grid nodes.
Mat pair_laplacian(const SphereGrid& grid, std::size_t neighbors) {
  const detail::KdTree tree(grid.node_matrix());
  const auto pairs = static_cast<Eigen::Index>(grid.size() / 2);
  Mat lap = Mat::Zero(pairs, pairs);
  for (Eigen::Index p = 0; p < pairs; ++p) {
    const auto near = tree.nearest(grid.node(static_cast<std::size_t>(2 * p)), neighbors + 1);
    for (const auto& [d2, idx] : near) {
      const auto q = static_cast<Eigen::Index>(idx / 2);
      if (q == p) continue;
      lap(p, p) += 1.0;
      lap(q, q) += 1.0;
      lap(p, q) -= 1.0;
      lap(q, p) -= 1.0;
    }
  }
  return 0.5 * lap;
}

}  // namespace

IkResult ik_solve(const StarBody& body, int k, const SphereGrid& grid,
                  const GrassmannSample& sample, const IkOptions& opts) {
  const int n = body.dim();
  require(k >= 1 && k <= n - 1, ErrorCode::kInvalidArgument, "ik_solve: need 1 <= k <= n-1");
  require(grid.dim() == n && sample.ambient_dim == n && sample.dim == k,
          ErrorCode::kInvalidArgument, "ik_solve: dimension mismatch");
  require(static_cast<double>(sample.count()) * n >= 20.0 * static_cast<double>(grid.size()),
          ErrorCode::kPrecondition,
          "ik_solve: Grassmann sample too small (need count >= 20 * grid size / n)");

  const auto rows = static_cast<Eigen::Index>(sample.count());
  const auto cols = static_cast<Eigen::Index>(grid.size() / 2);

  // Right-hand side k |K ∩ F^⊥|.
  const SectionIntegrator target(n - k, opts.section_resolution);
  Vec b(rows);
  for (Eigen::Index r = 0; r < rows; ++r)
    b[r] = k * target.volume(body, sample.subspaces[static_cast<std::size_t>(r)].complement());

  // Forward operator R_k on pair values; the sub-sphere is sampled coarsely
  // to match the working grid.
  const GridInterpolator interp(grid, opts.interpolation_order);
  std::vector<Vec> local;
  std::vector<double> local_w;
  if (k == 1) {
    local = {Vec::Ones(1)};
    local_w = {1.0};
  } else {
    const int res = opts.operator_resolution > 0
                        ? std::max(opts.operator_resolution, 50 * k)
                        : default_operator_resolution(n, k, static_cast<int>(grid.size()));
    const SphereGrid sub = build_sphere_grid(k, res);
    for (std::size_t i = 0; i < sub.size(); i += 2) {
      local.push_back(sub.node(i));
      local_w.push_back(2.0 * sub.weight(i));
    }
  }
  const double area = k * ball_volume(k);
  Mat a = Mat::Zero(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Subspace& f = sample.subspaces[static_cast<std::size_t>(r)];
    for (std::size_t j = 0; j < local.size(); ++j) {
      const Stencil s = interp.stencil(f.embed(local[j]));
      for (std::size_t t = 0; t < s.nodes.size(); ++t)
        a(r, static_cast<Eigen::Index>(s.nodes[t] / 2)) += area * local_w[j] * s.coefficients[t];
    }
  }

  const Mat normal = a.transpose() * a;
  const Vec rhs = a.transpose() * b;
  const Mat lap = pair_laplacian(grid, static_cast<std::size_t>(2 * n));
  const double bnorm = b.norm();

  IkResult out{body, {}, 0.0, 0.0, 0.0, 0, 0.0, false, false, {}};
  {
    Eigen::SelfAdjointEigenSolver<Mat> eig(normal, Eigen::EigenvaluesOnly);
    const double lo = std::max(eig.eigenvalues().minCoeff(), 0.0);
    out.condition = lo > 0.0 ? eig.eigenvalues().maxCoeff() / lo
                             : std::numeric_limits<double>::infinity();
  }

  double lambda = opts.lambda > 0.0 ? opts.lambda : 1e-3 * normal.diagonal().mean();
  auto solve = [&](double lam, double& residual) {
    const Vec x = (normal + lam * lap).ldlt().solve(rhs);
    residual = (a * x - b).norm() / bnorm;
    return x;
  };

  double residual = 0.0;
  Vec phi = solve(lambda, residual);
  int halvings = 0;
  while (halvings < opts.max_halvings) {
    double next_res = 0.0;
    const Vec next = solve(0.5 * lambda, next_res);
    const bool stable = residual - next_res <= 1e-2 * residual;
    lambda *= 0.5;
    ++halvings;
    phi = next;
    residual = next_res;
    if (stable) break;
  }
  out.lambda = lambda;
  out.halvings = halvings;
  double cond = 0.0;
  {
    Eigen::SelfAdjointEigenSolver<Mat> eig(normal + lambda * lap, Eigen::EigenvaluesOnly);
    const Vec& ev = eig.eigenvalues();
    cond = ev.minCoeff() > 0.0 ? ev.maxCoeff() / ev.minCoeff()
                               : std::numeric_limits<double>::infinity();
  }
  out.ill_conditioned = !(cond <= opts.max_condition);

  double negative = 0.0;
  double total = 0.0;
  for (Eigen::Index p = 0; p < cols; ++p) {
    const double w = 2.0 * grid.weight(static_cast<std::size_t>(2 * p));
    total += w * std::abs(phi[p]);
    if (phi[p] < 0.0) negative += w * -phi[p];
  }
  out.negativity = total > 0.0 ? negative / total : 1.0;
  const double top = std::max(phi.maxCoeff(), 0.0);
  Vec clipped = phi.cwiseMax(0.0);
  out.residual = (a * clipped - b).norm() / bnorm;

  std::vector<double> radii(grid.size());
  out.phi.resize(grid.size());
  const double floor = top > 0.0 ? 1e-6 * top : 1e-12;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = std::max(clipped[static_cast<Eigen::Index>(i / 2)], floor);
    out.phi[i] = v;
    radii[i] = std::pow(v, 1.0 / k);
  }
  out.body = grid_body(grid, std::move(radii), "I_" + std::to_string(k) + "(" + body.label() + ")",
                       opts.interpolation_order);

  std::ostringstream diag;
  diag << std::setprecision(4) << "residual " << out.residual << ", negativity "
       << out.negativity << ", lambda " << out.lambda << " after " << out.halvings
       << " halvings, condition " << cond;
  if (out.ill_conditioned) diag << "; ill-conditioned at this resolution";
  out.exists = !out.ill_conditioned && out.residual <= opts.residual_threshold &&
               out.negativity <= opts.negativity_threshold;
  if (!out.exists) diag << "; no numerical I_" << k;
  out.diagnostic = diag.str();
  return out;
}

SectionRatio section_ratio_extremes(const StarBody& body, int k,
                                    const GrassmannSample& sample, int resolution) {
  require(sample.dim == k && sample.count() > 0, ErrorCode::kInvalidArgument,
          "section_ratio_extremes: sample must be a nonempty sample of G_{n,k}");
  const SectionIntegrator integ(k, resolution);
  SectionRatio out;
  out.min = std::numeric_limits<double>::infinity();
  out.max = 0.0;
  for (const Subspace& f : sample.subspaces) {
    const double v = integ.volume(body, f);
    out.min = std::min(out.min, v);
    out.max = std::max(out.max, v);
  }
  out.ratio = out.max / out.min;
  out.delta = std::pow(out.ratio, 1.0 / k);
  return out;
}

}  // namespace starbody

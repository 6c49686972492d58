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

#include "starbody/approx.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "starbody/error.hpp"

namespace starbody {

NormalizedBody normalize_position(const StarBody& body, const SphereGrid& grid, int samples,
                                  std::uint64_t seed) {
  const auto witness = check_convexity(body, grid);
  require(witness.holds, ErrorCode::kPrecondition,
          "normalize_position: convexity witness failed for " + body.label());
  const int n = body.dim();
  const IsotropicData iso = isotropic_position(body, grid, samples, seed);
  const double s = std::pow(ball_volume(n), 1.0 / n);
  LinearMap map(s * iso.transform.matrix());
  StarBody out = dilate(iso.body, s).cached_on(grid).relabeled(body.label() + "/normalized");
  return {out, map, iso.isotropic_constant};
}

Covering greedy_cover(const Mat& probes, double t, std::size_t max_centers) {
  require(t > 0.0, ErrorCode::kInvalidArgument, "greedy_cover: t must be positive");
  const Eigen::Index n = probes.rows();
  const double t2 = t * t;
  std::vector<Eigen::Index> open;
  open.reserve(static_cast<std::size_t>(probes.cols()));
  for (Eigen::Index i = 0; i < probes.cols(); ++i) open.push_back(i);

  std::vector<Vec> centers;
  Vec next = Vec::Zero(n);
  bool complete = true;
  while (true) {
    centers.push_back(next);
    std::vector<Eigen::Index> still;
    still.reserve(open.size());
    for (Eigen::Index i : open)
      if ((probes.col(i) - next).squaredNorm() > t2) still.push_back(i);
    open.swap(still);
    if (open.empty()) break;
    if (max_centers > 0 && centers.size() >= max_centers) {
      complete = false;
      break;
    }
    next = probes.col(open.front());
  }
  Covering out;
  out.centers.resize(n, static_cast<Eigen::Index>(centers.size()));
  for (std::size_t c = 0; c < centers.size(); ++c)
    out.centers.col(static_cast<Eigen::Index>(c)) = centers[c];
  out.radius = t;
  out.count = centers.size();
  out.probes = static_cast<std::size_t>(probes.cols());
  out.complete = complete;
  return out;
}

Covering greedy_cover(const StarBody& body, double t, int probe_count, std::uint64_t seed,
                      std::size_t max_centers) {
  if (probe_count < 1000)
    warn("greedy_cover: fewer than 1000 probes; the covering count is a weak estimate");
  return greedy_cover(sample_uniform_in_body(body, probe_count, seed), t, max_centers);
}

Ellipsoid covering_ellipsoid(const Vec& z, double t) {
  require(t > 0.0, ErrorCode::kInvalidArgument, "covering_ellipsoid: t must be positive");
  const auto n = z.size();
  const double r = z.norm();
  const double b2 = 2.0 * t * t;
  Mat shape = b2 * Mat::Identity(n, n);
  if (r > 0.0) {
    const double a = std::sqrt(2.0) * (r + t);
    const Vec u = z / r;
    shape += (a * a - b2) * u * u.transpose();
  }
  return Ellipsoid(shape);
}

EllipsoidInclusionSlack ellipsoid_inclusion_slack(const Vec& z, double t, int points,
                                                  std::uint64_t seed) {
  const Ellipsoid e = covering_ellipsoid(z, t);
  const auto n = z.size();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  EllipsoidInclusionSlack out{std::numeric_limits<double>::infinity(),
                   std::numeric_limits<double>::infinity()};
  for (int i = 0; i < points; ++i) {
    Vec u(n);
    for (Eigen::Index j = 0; j < n; ++j) u[j] = gauss(rng);
    u.normalize();
    const Vec p = z + t * u;
    out.inner = std::min(out.inner, 1.0 - std::sqrt(p.dot(e.inverse_shape() * p)));
    const double hull = 2.0 * std::abs(z.dot(u)) + 2.0 * std::sqrt(2.0) * t;
    out.outer = std::min(out.outer, hull - e.support(u));
  }
  return out;
}

namespace {

double bound_shape(int n, int k) {
  return std::sqrt(static_cast<double>(n) / k * std::log(std::numbers::e * n / k));
}

// rho_C at the grid nodes for C the k-radial sum of the ellipsoids, and
// rho of their union.
void radial_sum_on_nodes(const std::vector<Ellipsoid>& es, int k, const SphereGrid& grid,
                         Vec& sum, Vec& uni) {
  const Mat& nodes = grid.node_matrix();
  sum = Vec::Zero(nodes.cols());
  uni = Vec::Zero(nodes.cols());
  for (const Ellipsoid& e : es) {
    const Vec q = (e.inverse_shape() * nodes).cwiseProduct(nodes).colwise().sum().transpose();
    for (Eigen::Index i = 0; i < q.size(); ++i) {
      const double rho = 1.0 / std::sqrt(q[i]);
      sum[i] += std::pow(rho, k);
      uni[i] = std::max(uni[i], rho);
    }
  }
  sum = sum.array().pow(1.0 / k).matrix();
}

double grid_volume(const Vec& radii, const SphereGrid& grid) {
  const int n = grid.dim();
  double total = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    total += grid.weight(i) * std::pow(radii[static_cast<Eigen::Index>(i)], n);
  return ball_volume(n) * total;
}

std::vector<Ellipsoid> ellipsoids_for(const Covering& cover) {
  std::vector<Ellipsoid> out;
  out.reserve(cover.count);
  for (Eigen::Index c = 0; c < cover.centers.cols(); ++c)
    out.push_back(covering_ellipsoid(cover.centers.col(c), cover.radius));
  return out;
}

}  // namespace

std::vector<BPApproximant> bp_curve(const StarBody& body, const std::vector<int>& ks,
                                    const SphereGrid& grid, const BPOptions& opts) {
  const int n = body.dim();
  require(!ks.empty(), ErrorCode::kInvalidArgument, "bp_curve: empty k list");
  for (int k : ks)
    require(k >= 1 && k <= n - 1, ErrorCode::kInvalidArgument, "bp_curve: need 1 <= k <= n-1");
  require(opts.ladder_ratio > 1.0, ErrorCode::kInvalidArgument, "bp_curve: ladder ratio must exceed 1");

  const NormalizedBody norm =
      opts.normalize ? normalize_position(body, grid, opts.samples, opts.seed)
                     : NormalizedBody{body.cached_on(grid), LinearMap::identity(n), 0.0};
  const Mat probes = sample_uniform_in_body(norm.body, opts.probes, opts.seed + 0x9e3779b9ULL);
  Vec rho_k(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i)
    rho_k[static_cast<Eigen::Index>(i)] = norm.body.radial(grid.node(i));
  const double vol_k = grid_volume(rho_k, grid);

  const int kmin = *std::min_element(ks.begin(), ks.end());
  const int kmax = *std::max_element(ks.begin(), ks.end());
  const double top_t = 4.0 * bound_shape(n, kmin);
  const auto cap = static_cast<std::size_t>(std::floor(std::exp(static_cast<double>(kmax)))) + 1;

  std::vector<Covering> ladder;
  for (double t = 1.0; t <= top_t * (1.0 + 1e-12); t *= opts.ladder_ratio) {
    ladder.push_back(greedy_cover(probes, t, cap));
    if (ladder.back().complete && ladder.back().count == 1) break;
  }

  std::vector<BPApproximant> out;
  for (int k : ks) {
    BPApproximant bp{.k = k, .body = norm.body};
    bp.bound_shape = bound_shape(n, k);
    bp.t_max = 4.0 * bp.bound_shape;
    bp.alpha = 2.0 - 1.0 / std::log(std::numbers::e * n / k);
    bp.t_analytic = std::pow(n / (k * (2.0 - bp.alpha)), 1.0 / bp.alpha);

    std::ptrdiff_t chosen = -1;
    std::ptrdiff_t first = -1;
    for (std::size_t j = 0; j < ladder.size(); ++j) {
      const Covering& c = ladder[j];
      LadderStep step{c.radius, c.count, false, 0.0};
      if (c.radius <= bp.t_max * (1.0 + 1e-12) && c.complete &&
          std::log(static_cast<double>(c.count)) <= k) {
        step.admissible = true;
        Vec sum, uni;
        radial_sum_on_nodes(ellipsoids_for(c), k, grid, sum, uni);
        step.ovr = std::pow(grid_volume(std::numbers::e * sum, grid) / vol_k, 1.0 / n);
        if (first < 0) first = static_cast<std::ptrdiff_t>(j);
        if (chosen < 0 || (opts.rule == LadderRule::kBestRatio &&
                           step.ovr < bp.ladder[static_cast<std::size_t>(chosen)].ovr))
          chosen = static_cast<std::ptrdiff_t>(j);
      }
      bp.ladder.push_back(step);
    }
    if (chosen < 0) {
      bp.ok = false;
      bp.diagnostic = "no ladder t <= t_max gives log N <= k";
      out.push_back(std::move(bp));
      continue;
    }
    const Covering& c = ladder[static_cast<std::size_t>(chosen)];
    bp.t = c.radius;
    bp.count = c.count;
    bp.ellipsoids = ellipsoids_for(c);
    bp.ovr_smallest_t = bp.ladder[static_cast<std::size_t>(first)].ovr;

    std::vector<StarBody> stars;
    stars.reserve(bp.ellipsoids.size());
    for (const Ellipsoid& e : bp.ellipsoids) stars.push_back(e.star());
    bp.body = dilate(radial_sum_k(stars, k), std::numbers::e)
                  .cached_on(grid)
                  .relabeled("C1(" + body.label() + ", k=" + std::to_string(k) + ")");

    Vec sum, uni;
    radial_sum_on_nodes(bp.ellipsoids, k, grid, sum, uni);
    const Vec rho_c1 = std::numbers::e * sum;
    bp.containment_margin = rho_c1.cwiseQuotient(rho_k).minCoeff();
    bp.contains = bp.containment_margin >= 1.0;
    bp.union_distance = sum.cwiseQuotient(uni).maxCoeff();
    bp.ovr = std::pow(grid_volume(rho_c1, grid) / vol_k, 1.0 / n);
    bp.ok = bp.contains;
    std::ostringstream diag;
    diag << "t " << bp.t << ", N " << bp.count << ", isotropic position used in place of "
         << "the covering-number position";
    if (!bp.contains) diag << "; containment failed (margin " << bp.containment_margin << ")";
    bp.diagnostic = diag.str();
    out.push_back(std::move(bp));
  }
  return out;
}

BPApproximant bp_approximant(const StarBody& body, int k, const SphereGrid& grid,
                             const BPOptions& opts) {
  return bp_curve(body, {k}, grid, opts).front();
}

void write_bp_approximant(std::ostream& out, const BPApproximant& bp) {
  nlohmann::json doc;
  doc["k"] = bp.k;
  doc["t"] = bp.t;
  doc["N"] = bp.count;
  doc["ovr"] = bp.ovr;
  doc["ovr_smallest_t"] = bp.ovr_smallest_t;
  doc["bound_shape"] = bp.bound_shape;
  doc["t_analytic"] = bp.t_analytic;
  doc["alpha"] = bp.alpha;
  doc["contains"] = bp.contains;
  doc["containment_margin"] = bp.containment_margin;
  doc["union_distance"] = bp.union_distance;
  nlohmann::json shapes = nlohmann::json::array();
  for (const Ellipsoid& e : bp.ellipsoids) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < e.shape().rows(); ++i) {
      std::vector<double> row(static_cast<std::size_t>(e.shape().cols()));
      for (Eigen::Index j = 0; j < e.shape().cols(); ++j)
        row[static_cast<std::size_t>(j)] = e.shape()(i, j);
      rows.push_back(row);
    }
    shapes.push_back(rows);
  }
  doc["ellipsoids"] = shapes;
  nlohmann::json ladder = nlohmann::json::array();
  for (const LadderStep& s : bp.ladder)
    ladder.push_back({{"t", s.t}, {"N", s.count}, {"admissible", s.admissible}, {"ovr", s.ovr}});
  doc["ladder"] = ladder;
  out << doc.dump(2) << "\n";
}

namespace {

// dist(x, K) = max over unit u of <x, u> - h(u), refined from a start node by
// coordinate search on the sphere.
double distance_to_body(const ConvexBodyH& body, const Vec& x, const Vec& start) {
  const auto n = x.size();
  auto f = [&](const Vec& u) { return x.dot(u) - body.support(u); };
  Vec u = start;
  double best = f(u);
  int rounds = 0;
  for (double step = 0.2; step > 1e-4 && rounds < 100; ++rounds) {
    bool moved = false;
    for (Eigen::Index d = 0; d < n; ++d) {
      for (double sgn : {1.0, -1.0}) {
        Vec v = u;
        v[d] += sgn * step;
        v.normalize();
        const double fv = f(v);
        if (fv > best) {
          best = fv;
          u = v;
          moved = true;
        }
      }
    }
    if (!moved) step *= 0.5;
  }
  return best;
}

}  // namespace

std::vector<ParallelVolumeRow> parallel_volume_check(const ConvexBodyH& body,
                                                     const std::vector<double>& ts,
                                                     const SphereGrid& grid, int samples,
                                                     std::uint64_t seed) {
  const int n = body.dim();
  require(grid.dim() == n, ErrorCode::kInvalidArgument, "parallel_volume_check: grid dimension mismatch");
  const double vol_k = volume(body.star(grid), grid);
  const Mat& nodes = grid.node_matrix();
  Vec h(nodes.cols());
  for (Eigen::Index j = 0; j < nodes.cols(); ++j) h[j] = body.support(nodes.col(j));

  std::vector<ParallelVolumeRow> out;
  for (double t : ts) {
    require(t > 0.0, ErrorCode::kInvalidArgument, "parallel_volume_check: t must be positive");
    ParallelVolumeRow row;
    row.t = t;
    const Vec ht = h.array() + t;
    if (n <= 3) {
      const Mat gram = nodes.transpose() * nodes;
      Vec rho(nodes.cols());
      for (Eigen::Index i = 0; i < gram.cols(); ++i) {
        double r = std::numeric_limits<double>::infinity();
        for (Eigen::Index j = 0; j < gram.rows(); ++j)
          if (gram(j, i) > 1e-12) r = std::min(r, ht[j] / gram(j, i));
        rho[i] = r;
      }
      row.volume = grid_volume(rho, grid);
    } else {
      const double radius = 1.02 * ht.maxCoeff();
      std::mt19937_64 rng(seed);
      std::normal_distribution<double> gauss;
      std::uniform_real_distribution<double> unif;
      constexpr int kBlock = 256;
      long inside = 0;
      Mat x(n, kBlock);
      for (int done = 0; done < samples; done += kBlock) {
        const int w = std::min(kBlock, samples - done);
        for (int c = 0; c < w; ++c) {
          Vec g(n);
          for (int d = 0; d < n; ++d) g[d] = gauss(rng);
          x.col(c) = radius * std::pow(unif(rng), 1.0 / n) * g.normalized();
        }
        const Mat dots = nodes.transpose() * x.leftCols(w);
        for (int c = 0; c < w; ++c) {
          Eigen::Index best = 0;
          const double gap = (dots.col(c) - h).maxCoeff(&best);
          if (gap > t) continue;
          if (gap <= 0.0 || distance_to_body(body, x.col(c), nodes.col(best)) <= t) ++inside;
        }
      }
      const double frac = static_cast<double>(inside) / samples;
      const double ball = ball_volume(n) * std::pow(radius, n);
      row.volume = frac * ball;
      const double se = ball * std::sqrt(frac * (1.0 - frac) / samples);
      row.stderr_ratio = se / (n * row.volume);
    }
    row.ratio = std::pow(row.volume / vol_k, 1.0 / n) / t;
    row.stderr_ratio *= row.ratio;
    out.push_back(row);
  }
  return out;
}

double star_distance(const StarBody& v1, const StarBody& v2, const SphereGrid& grid) {
  require(v1.dim() == v2.dim() && grid.dim() == v1.dim(), ErrorCode::kInvalidArgument,
          "star_distance: dimension mismatch");
  double d = 1.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double a = v1.radial(grid.node(i));
    const double b = v2.radial(grid.node(i));
    d = std::max({d, a / b, b / a});
  }
  return d;
}

}  // namespace starbody

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

#include "starbody/distances.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "starbody/error.hpp"

namespace starbody {

namespace {

void check_dims(const StarBody& a, const StarBody& b, const SphereGrid& grid) {
  require(a.dim() == b.dim() && grid.dim() == a.dim(), ErrorCode::kInvalidArgument,
          "distance: dimension mismatch");
}

Vec radii_vec(const StarBody& body, const SphereGrid& grid) {
  const auto r = body.radii(grid);
  return Eigen::Map<const Vec>(r.data(), static_cast<Eigen::Index>(r.size()));
}

// log rho_{T K_2} at the nodes for T = S^{-1}: rho_{K_2}(S theta / |S theta|) / |S theta|.
Vec log_mapped_radii(const StarBody& k2, const Mat& s, const Mat& nodes) {
  const Mat img = s * nodes;
  Vec out(nodes.cols());
  for (Eigen::Index i = 0; i < nodes.cols(); ++i) {
    const double len = img.col(i).norm();
    out[i] = std::log(k2.radial(Vec(img.col(i) / len))) - std::log(len);
  }
  return out;
}

double log_dg(const Vec& log1, const Vec& log2) {
  const Vec diff = log1 - log2;
  return diff.maxCoeff() - diff.minCoeff();
}

Mat sqrt_spd(const Mat& m, double power) {
  Eigen::SelfAdjointEigenSolver<Mat> eig(m);
  return eig.eigenvectors() * eig.eigenvalues().array().pow(power).matrix().asDiagonal() *
         eig.eigenvectors().transpose();
}

Mat grid_second_moment(const Vec& radii, const SphereGrid& grid) {
  const int n = grid.dim();
  Mat m = Mat::Zero(n, n);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec& u = grid.node(i);
    m += grid.weight(i) * std::pow(radii[static_cast<Eigen::Index>(i)], n + 2) * u * u.transpose();
  }
  return m;
}

void unit_det(Mat& s) {
  const double det = std::abs(s.determinant());
  s /= std::pow(det, 1.0 / static_cast<double>(s.rows()));
}

}  // namespace

double d_radial(const StarBody& k, const StarBody& l, const SphereGrid& grid) {
  check_dims(k, l, grid);
  return (radii_vec(k, grid) - radii_vec(l, grid)).cwiseAbs().maxCoeff();
}

double d_geometric(const StarBody& k1, const StarBody& k2, const SphereGrid& grid) {
  check_dims(k1, k2, grid);
  const Vec r1 = radii_vec(k1, grid);
  const Vec r2 = radii_vec(k2, grid);
  return r1.cwiseQuotient(r2).maxCoeff() * r2.cwiseQuotient(r1).maxCoeff();
}

std::string to_string(DistanceKind kind) {
  switch (kind) {
    case DistanceKind::kRadial:
      return "radial";
    case DistanceKind::kGeometric:
      return "geometric";
    case DistanceKind::kBanachMazurUpper:
      return "banach_mazur_upper";
  }
  return "unknown";
}

double d_geometric_mapped(const StarBody& k1, const StarBody& k2, const Mat& t,
                          const SphereGrid& grid) {
  check_dims(k1, k2, grid);
  const Vec log1 = radii_vec(k1, grid).array().log();
  return std::exp(log_dg(log1, log_mapped_radii(k2, t.inverse(), grid.node_matrix())));
}

DistanceReport d_bm_upper(const StarBody& k1, const StarBody& k2, const SphereGrid& grid,
                          const BMOptions& opts) {
  check_dims(k1, k2, grid);
  const int n = k1.dim();
  const Mat& nodes = grid.node_matrix();
  const Vec r1 = radii_vec(k1, grid);
  const Vec log1 = r1.array().log();
  const int budget = opts.sweeps > 0 ? opts.sweeps : 8 * n * n;

  DistanceReport out;
  out.kind = DistanceKind::kBanachMazurUpper;
  out.restarts = std::max(opts.restarts, 1);
  auto objective = [&](const Mat& s) {
    ++out.evaluations;
    return log_dg(log1, log_mapped_radii(k2, s, nodes));
  };

  std::vector<Mat> starts;
  starts.push_back(Mat::Identity(n, n));
  {
    const Mat m1 = grid_second_moment(r1, grid);
    const Mat m2 = grid_second_moment(radii_vec(k2, grid), grid);
    starts.push_back(sqrt_spd(m2, 0.5) * sqrt_spd(m1, -0.5));
  }
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss;
  while (static_cast<int>(starts.size()) < out.restarts) {
    Mat s = Mat::Identity(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s(i, j) += 0.3 * gauss(rng);
    if (s.determinant() < 0.0) s.col(0) *= -1.0;
    starts.push_back(s);
  }
  starts.resize(static_cast<std::size_t>(out.restarts));

  const double initial = objective(Mat::Identity(n, n));
  out.initial = std::exp(initial);
  double best = initial;
  Mat best_s = Mat::Identity(n, n);

  for (int r = 0; r < out.restarts; ++r) {
    Mat s = starts[static_cast<std::size_t>(r)];
    if (std::abs(s.determinant()) < 1e-12) continue;
    unit_det(s);
    double f = objective(s);
    double step = opts.initial_step;
    for (int sweep = 0; sweep < budget && step >= opts.min_step; ++sweep) {
      ++out.sweeps;
      bool moved = false;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const double base = s(i, j);
          s(i, j) = base + step;
          const double fp = objective(s);
          s(i, j) = base - step;
          const double fm = objective(s);
          double x = 0.0;
          double fx = f;
          if (fp < fx) { x = step; fx = fp; }
          if (fm < fx) { x = -step; fx = fm; }
          const double curv = fp + fm - 2.0 * f;
          if (curv > 0.0) {
            const double xq = std::clamp(0.5 * step * (fm - fp) / curv, -2.0 * step, 2.0 * step);
            if (xq != 0.0 && xq != step && xq != -step) {
              s(i, j) = base + xq;
              const double fq = objective(s);
              if (fq < fx) { x = xq; fx = fq; }
            }
          }
          s(i, j) = base + x;
          if (fx < f) {
            f = fx;
            moved = true;
          }
        }
      }
      unit_det(s);
      f = objective(s);
      if (!moved) step *= opts.decay;
    }
    if (f < best - 1e-15) {
      best = f;
      best_s = s;
      out.best_restart = r;
    }
  }
  out.value = std::exp(best);
  out.witness = best_s.inverse();
  out.improved = best < initial - 1e-12;
  const Vec log2 = log_mapped_radii(k2, best_s, nodes);
  out.scaling = std::exp((log1 - log2).maxCoeff());
  const SphereGrid check = build_sphere_grid(n, 4 * static_cast<int>(grid.size()), opts.seed + 0x51ed27);
  out.verified = std::max(out.value, d_geometric_mapped(k1, k2, out.witness, check));
  return out;
}

SectionSandwichResult section_sandwich_check(const ConvexBodyH& body, const Vec& axis,
                                             const SphereGrid& grid) {
  const int n = body.dim();
  const Vec u = axis.normalized();
  const StarBody star = body.star(grid);
  SectionSandwichResult out;
  out.volume = volume(star, grid);
  const double section = section_volume(star, Subspace::hyperplane(u));
  const double r = star.radial(u);
  const double big_r = body.support(u);
  out.lower = 2.0 * r / n * section;
  out.upper = 2.0 * big_r * section;
  out.holds = out.lower <= out.volume && out.volume <= out.upper;
  return out;
}

SectionDistanceResult section_distance_check(const StarBody& body, int k,
                                             const GrassmannSample& sample,
                                             const SphereGrid& grid) {
  const int n = body.dim();
  require(n >= 3 && k >= 2 && k <= n - 1, ErrorCode::kInvalidArgument,
          "section_distance_check: need n >= 3 and 2 <= k <= n-1");
  SectionDistanceResult out;
  out.k = k;
  const SectionRatio sampled = section_ratio_extremes(body, k, sample);
  out.delta_sampled = sampled.delta;

  const auto r = body.radii(grid);
  const auto imax = static_cast<std::size_t>(std::max_element(r.begin(), r.end()) - r.begin());
  const auto imin = static_cast<std::size_t>(std::min_element(r.begin(), r.end()) - r.begin());
  const double big_r = r[imax];
  const double small_r = r[imin];
  out.d_g = big_r / small_r;

  double lo = sampled.min;
  double hi = sampled.max;
  if (imax != imin) {
    Mat span(n, 2);
    span.col(0) = grid.node(imax);
    span.col(1) = grid.node(imin);
    const Mat rest = Subspace::spanned_by(span).complement().frame();
    Mat f1(n, k);
    Mat f2(n, k);
    f1.col(0) = grid.node(imax);
    f2.col(0) = grid.node(imin);
    f1.rightCols(k - 1) = rest.leftCols(k - 1);
    f2.rightCols(k - 1) = rest.leftCols(k - 1);
    const SectionIntegrator integ(k);
    const double v1 = integ.volume(body, Subspace::from_frame(f1));
    const double v2 = integ.volume(body, Subspace::from_frame(f2));
    out.pair_ratio = v1 / v2;
    out.chain_lower = big_r / (k * small_r);
    out.chain_upper = k * big_r / small_r;
    out.chain_holds = out.chain_lower <= out.pair_ratio && out.pair_ratio <= out.chain_upper;
    lo = std::min({lo, v1, v2});
    hi = std::max({hi, v1, v2});
  } else {
    out.pair_ratio = 1.0;
    out.chain_lower = 1.0 / k;
    out.chain_upper = k;
    out.chain_holds = true;
  }
  out.delta = std::pow(hi / lo, 1.0 / k);
  out.bound = k * std::pow(out.delta, k);
  out.holds = out.d_g <= out.bound;
  return out;
}

IkCandidate ik_candidate(const StarBody& body, int k, const SphereGrid& grid,
                         std::uint64_t seed, const IkOptions& opts) {
  const int n = body.dim();
  if (k == 1) {
    StarBody i1 = intersection_body_k1(body, grid);
    // Resolution sensitivity on a few random directions.
    const SectionIntegrator fine(n - 1, 4 * default_section_resolution(n - 1));
    const GrassmannSample probes = sample_grassmannian(n, 1, 16, seed + 17);
    double delta = 0.0;
    for (const Subspace& line : probes.subspaces) {
      const Vec u = line.frame().col(0);
      const double coarse = i1.radial(u);
      const double refined = 0.5 * fine.volume(body, Subspace::hyperplane(u));
      delta = std::max(delta, std::abs(coarse - refined) / refined);
    }
    return {i1, true, 0.0, "sections", delta};
  }
  const int count =
      static_cast<int>(std::ceil(20.0 * static_cast<double>(grid.size()) / n));
  const GrassmannSample sample = sample_grassmannian(n, k, count, seed);
  IkResult res = ik_solve(body, k, grid, sample, opts);
  return {res.body, res.exists, res.residual, res.diagnostic, res.residual};
}

IkBallDistanceResult ik_ball_distance_check(const StarBody& body, int k, const SphereGrid& grid,
                                            const IkBallDistanceOptions& opts) {
  const int n = body.dim();
  IkBallDistanceResult out;
  out.k = k;
  const IkCandidate cand = ik_candidate(body, k, grid, opts.seed, opts.ik);
  out.ik_residual = cand.residual;
  if (!cand.exists) {
    out.reason = "hypotheses not met: " + cand.diagnostic;
    return out;
  }
  out.error_estimate = cand.error_estimate;
  WitnessOptions wopts;
  wopts.rel_tol = std::max(opts.witness_tol, 3.0 * cand.error_estimate);
  out.witness_tol = wopts.rel_tol;
  const ConvexityWitness witness = check_convexity(cand.body, grid, wopts);
  out.convex = witness.holds;
  out.witness_violation = witness.worst_violation;
  if (!witness.holds) {
    out.reason = "hypotheses not met: I_k candidate fails the convexity witness";
    return out;
  }
  out.hypotheses_met = true;
  out.volume = volume(cand.body, grid);
  const StarBody ball = Ellipsoid::ball(n, 1.0).star("ball");
  out.d_g = d_geometric(cand.body, ball, grid);
  out.d_bm = d_bm_upper(cand.body, ball, grid, opts.bm).verified;
  const GrassmannSample sample = sample_grassmannian(n, k, opts.grassmann_samples, opts.seed);
  out.delta = section_ratio_extremes(cand.body, k, sample).delta;
  out.bound = k * std::pow(out.delta, k);
  out.reason = "ok";
  return out;
}

}  // namespace starbody

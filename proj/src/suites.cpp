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

#include "starbody/suites.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "starbody/approx.hpp"
#include "starbody/body_spec.hpp"
#include "starbody/distances.hpp"
#include "starbody/error.hpp"
#include "starbody/positions.hpp"
#include "starbody/quad.hpp"
#include "starbody/sections.hpp"

namespace starbody {

namespace {

// Anchors.
constexpr const char* kLutwak = "rho_I(K)(xi) = |K cap xi^perp|";
constexpr const char* kRadon = "R_m f(F) = int_{S cap F} f";
constexpr const char* kIk = "|I_k(K) cap F| = |K cap F^perp|";
constexpr const char* kIkMap = "I_k(TK) = |det T|^{1/k} T^{-T} I_k(K)";
constexpr const char* kIkScale = "I_k(tK) = t^{(n-k)/k} I_k(K)";
constexpr const char* kZ2 = "Z_2(TK) = L_K B_2^n";
constexpr const char* kProjectionSection = "|K cap F^perp|^{1/k} |P_F Z_k(K)|^{1/k} ~ 1";
constexpr const char* kSantalo = "(|K||K^o|)^{1/n} ~ 1/n";
constexpr const char* kCentroidInclusion = "Z_2(K) subset Z_k(K) subset ck Z_2(K)";
constexpr const char* kSectionRatio = "|I_k(K) cap F_1| / |I_k(K) cap F_2| <= (c_1 k)^k";
constexpr const char* kSectionSandwich = "2r/(m+1) |K cap R^m| <= |K| <= 2R |K cap R^m|";
constexpr const char* kSectionDistance = "d_G(K, B_2^n) <= k delta^k";
constexpr const char* kChain = "R/(kr) <= |K cap F_1| / |K cap F_2| <= kR/r";
constexpr const char* kParallelVolume = "|K + tB_2^n|^{1/n} <= ct |K|^{1/n}";
constexpr const char* kEllipsoidInclusion = "z + tB_2^n subset E subset co{+-2z + 2 sqrt(2) t B_2^n}";
constexpr const char* kUnionDistance = "d(V, C) <= N^{1/k} <= e";
constexpr const char* kOvr = "o.v.r.(K, BP_k^n) <= c sqrt(n log(en/k) / k)";
constexpr const char* kIkBallDistance = "d_BM(I_k(K), B_2^n) <= c(k)";
constexpr const char* kDualMomentSections =
    "E_{-k}(K) (int |K cap F^perp|)^{1/k} = E_{-k}(D_n) (int |D_n cap F^perp|)^{1/k}";
constexpr const char* kIkMomentSections = "M_{-k}(I_k(K)) (int |K cap F^perp|)^{1/k} = omega_k^{1/k}";
constexpr const char* kIkMomentRatio = "M_{-k}(I_k(K)) / M_{-k}(I_k(D_n)) = E_{-k}(K) / E_{-k}(D_n)";
constexpr const char* kMomentBallLower = "E_p(K) >= E_p(D_n)";
constexpr const char* kMomentRatio = "E_p(K)/E_q(K) <= E_p(D_n)/E_q(D_n)";
constexpr const char* kBallEp = "E_p(D_n) = (n/(n+p))^{1/p} omega_n^{-1/n}";
constexpr const char* kMpMonotone = "M_p(C) <= M_q(C)";
constexpr const char* kMminusN = "M_{-n}(C) = (|B_2^n|/|C|)^{1/n}";
constexpr const char* kIkVolumeLower = "(|I_k(K)|/|I_k(B_2^n)|)^{1/n} >= L_{B_2^n}/L_K";
constexpr const char* kIkVolumeUpper = "(|I_k(K)|/|I_k(B_2^n)|)^{1/n} <= c log(1 + d_BM(I_k(K), B_2^n))";
constexpr const char* kE2 = "E_2(K) = sqrt(n) L_K";
constexpr const char* kLball = "L_K >= L_{B_2^n}";
constexpr const char* kDg = "d_G(K_1, K_2) = min{r : K_1 subset aK_2 subset raK_1}";

class Inputs {
 public:
  template <class T>
  Inputs& operator()(const char* key, const T& value) {
    if (!text_.empty()) text_ += ' ';
    std::ostringstream ss;
    ss << key << '=' << value;
    text_ += ss.str();
    return *this;
  }
  operator std::string() const { return text_; }

 private:
  std::string text_;
};

std::string row_id(const std::string& suite, const std::string& check,
                   std::initializer_list<std::string> parts) {
  std::string id = suite + "/" + check;
  for (const auto& p : parts) id += "/" + p;
  return id;
}

std::string nk(int n) { return "n" + std::to_string(n); }
std::string kk(int k) { return "k" + std::to_string(k); }

struct Entry {
  BodySpec spec;
  StarBody body;
};

std::vector<Entry> catalog(int n) {
  std::vector<Entry> out;
  for (auto& spec : builtin_catalog(n)) out.push_back({spec, make_star(spec)});
  return out;
}

SphereGrid grid_of(const RunConfig& cfg, int n) { return build_sphere_grid(n, cfg.grid_for(n), cfg.seed); }

double ball_radius_unit_volume(int n) { return std::pow(ball_volume(n), -1.0 / n); }

}  // namespace

int default_grid_resolution(int n) {
  switch (n) {
    case 2:
      return 720;
    case 3:
      return 2000;
    case 4:
      return 3000;
    default:
      return 4000;
  }
}

void RunConfig::validate() const {
  require(grid >= 0 && grassmann > 0 && samples > 0 && probes > 0 && tol >= 0.0,
          ErrorCode::kInvalidArgument, "run config: counts must be positive");
}

int RunConfig::grid_for(int n) const {
  return grid > 0 ? std::max(grid, 50 * n) : default_grid_resolution(n);
}

//---------------------------------------------------------------------------//
// identities
//---------------------------------------------------------------------------//

void run_identities(const RunConfig& cfg, Report& report) {
  const std::string suite = "identities";
  for (int n = 2; n <= 6; ++n) {
    const SphereGrid grid = grid_of(cfg, n);
    for (const Entry& e : catalog(n)) {
      const double m = m_p(e.body, -n, grid);
      const double target = std::pow(ball_volume(n) / volume(e.body, grid), 1.0 / n);
      report.check(row_id(suite, "m_minus_n", {nk(n), e.spec.label}), kMminusN,
                   Inputs()("n", n)("body", e.spec.label)("grid", grid.size()), m, "==", target,
                   1e-6);
    }
  }

  for (int n : {3, 4}) {
    const SphereGrid grid = grid_of(cfg, n);
    const StarBody dn = Ellipsoid::ball(n, ball_radius_unit_volume(n)).star("D_n");
    for (double p : {-2.0, -1.0, 1.0, 2.0}) {
      report.check(row_id(suite, "ball_e_p", {nk(n), "p" + format_number(p)}), kBallEp,
                   Inputs()("n", n)("p", p), e_p(dn, p, grid), "==", e_p_unit_volume_ball(n, p),
                   1e-6);
    }
  }

  // Section and moment identities at n = 4.
  {
    const int n = 4;
    const SphereGrid grid = grid_of(cfg, n);
    const double rd = ball_radius_unit_volume(n);
    for (int k = 1; k <= n - 1; ++k) {
      const GrassmannSample sample = sample_grassmannian(n, k, cfg.grassmann, cfg.seed + k);
      const double ball_sections = ball_volume(n - k) * std::pow(rd, n - k);
      const double rhs = e_p_unit_volume_ball(n, -k) * std::pow(ball_sections, 1.0 / k);
      for (const Entry& e : catalog(n)) {
        const StarBody kb = normalize_volume(e.body, grid);
        const SectionFunction sf = section_function(kb, sample);
        double mean = 0.0;
        for (double v : sf.values) mean += v;
        mean /= static_cast<double>(sf.values.size());
        const double lhs = e_p(kb, -k, grid) * std::pow(mean, 1.0 / k);
        const bool is_ball = std::holds_alternative<BallParams>(e.spec.params);
        report.check(row_id(suite, "dual_moment_sections", {nk(n), kk(k), e.spec.label}), kDualMomentSections,
                     Inputs()("n", n)("k", k)("body", e.spec.label)("subspaces", sample.count()),
                     lhs / rhs, "==", 1.0, is_ball ? 1e-6 : cfg.tol_or(2e-2));
      }
      // Ball through closed forms.
      const double ik_r = ik_ball(n, k, rd);
      report.check(row_id(suite, "ik_moment_sections", {nk(n), kk(k), "ball"}), kIkMomentSections,
                   Inputs()("n", n)("k", k)("body", "D_n"), std::pow(ball_sections, 1.0 / k) / ik_r,
                   "==", std::pow(ball_volume(k), 1.0 / k), 1e-6);
      // Ellipsoids through the linear-map formula.
      for (const Entry& e : catalog(n)) {
        if (!std::holds_alternative<EllipsoidParams>(e.spec.params)) continue;
        Ellipsoid ell(std::get<EllipsoidParams>(e.spec.params).shape);
        const double s = std::pow(ell.volume(), -1.0 / n);
        const Ellipsoid unit(s * s * ell.shape());
        const StarBody ik = ik_ellipsoid(unit, k).star();
        const SectionFunction sf = section_function(unit.star(), sample);
        double mean = 0.0;
        for (double v : sf.values) mean += v;
        mean /= static_cast<double>(sf.values.size());
        const double lhs = m_p(ik, -k, grid) * std::pow(mean, 1.0 / k);
        report.check(row_id(suite, "ik_moment_sections", {nk(n), kk(k), e.spec.label}), kIkMomentSections,
                     Inputs()("n", n)("k", k)("body", e.spec.label)("subspaces", sample.count()),
                     lhs, "==", std::pow(ball_volume(k), 1.0 / k), cfg.tol_or(3e-2));
        const double m_ratio = m_p(ik, -k, grid) * ik_ball(n, k, rd);
        const double e_ratio =
            e_p(normalize_volume(unit.star(), grid), -k, grid) / e_p_unit_volume_ball(n, -k);
        report.check(row_id(suite, "ik_moment_ratio", {nk(n), kk(k), e.spec.label}), kIkMomentRatio,
                     Inputs()("n", n)("k", k)("body", e.spec.label), m_ratio, "==", e_ratio,
                     cfg.tol_or(3e-2));
      }
    }
  }

  // Normalization chain and Lutwak versus the k = 1 convention.
  {
    const int n = 3;
    const SphereGrid grid = grid_of(cfg, n);
    const StarBody cube = make_star(cube_spec(n));
    for (int k : {1, 2}) {
      const GrassmannSample sample = sample_grassmannian(n, k, 20, cfg.seed);
      const auto r = radon([&](const Vec& u) { return std::pow(cube.radial(u), k); }, k, sample);
      double worst = 0.0;
      for (std::size_t i = 0; i < sample.count(); ++i) {
        const double direct = SectionIntegrator(k).volume(cube, sample.subspaces[i]);
        worst = std::max(worst, std::abs(r[i] / k - direct) / direct);
      }
      report.check(row_id(suite, "radon_normalization", {nk(n), kk(k)}), kRadon,
                   Inputs()("n", n)("k", k)("body", "cube"), worst, "<=", 1e-10);
    }
    const StarBody lutwak = intersection_body_lutwak(cube, grid);
    const StarBody half = intersection_body_k1(cube, grid);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); i += 7)
      worst = std::max(worst, std::abs(lutwak.radial(grid.node(i)) / half.radial(grid.node(i)) - 2.0));
    report.check(row_id(suite, "lutwak_factor", {nk(n)}), kLutwak,
                 Inputs()("n", n)("body", "cube"), worst, "<=", 1e-12);
    const StarBody ball = Ellipsoid::ball(n, 1.0).star();
    report.check(row_id(suite, "lutwak_ball", {nk(n)}), kLutwak, Inputs()("n", n)("body", "ball"),
                 intersection_body_lutwak(ball, grid).radial(grid.node(0)), "==",
                 ball_volume(n - 1), 1e-6);
  }
}

//---------------------------------------------------------------------------//
// inequalities
//---------------------------------------------------------------------------//

void run_inequalities(const RunConfig& cfg, Report& report) {
  const std::string suite = "inequalities";
  const std::vector<double> ps = {-2.0, -1.0, 1.0, 2.0};

  for (int n : {3, 4}) {
    const SphereGrid grid = grid_of(cfg, n);
    const SphereGrid fine = build_sphere_grid(n, 2 * cfg.grid_for(n), cfg.seed + 1);
    for (const Entry& e : catalog(n)) {
      const bool is_ball = std::holds_alternative<BallParams>(e.spec.params);
      const StarBody kb = normalize_volume(e.body, grid).cached_on(grid);
      const StarBody kf = normalize_volume(e.body, fine);
      std::vector<double> ep, eb;
      for (double p : ps) {
        ep.push_back(e_p(kb, p, grid));
        eb.push_back(e_p_unit_volume_ball(n, p));
      }
      for (std::size_t i = 0; i < ps.size(); ++i) {
        const std::string pl = "p" + format_number(ps[i]);
        auto& row = report.check(row_id(suite, "moment_ball_lower", {nk(n), e.spec.label, pl}), kMomentBallLower,
                                 Inputs()("n", n)("body", e.spec.label)("p", ps[i]), ep[i], ">=",
                                 eb[i], 1e-12);
        row.delta = std::abs(e_p(kf, ps[i], fine) - ep[i]);
        if (!is_ball) {
          report.check(row_id(suite, "moment_ball_strict", {nk(n), e.spec.label, pl}), kMomentBallLower,
                       Inputs()("n", n)("body", e.spec.label)("p", ps[i]), ep[i] / eb[i] - 1.0,
                       ">=", 1e-6);
        }
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
          const std::string ql = "q" + format_number(ps[j]);
          report.check(row_id(suite, "moment_ratio_monotone", {nk(n), e.spec.label, pl, ql}), kMomentRatio,
                       Inputs()("n", n)("body", e.spec.label)("p", ps[i])("q", ps[j]),
                       ep[i] / ep[j], "<=", eb[i] / eb[j], 1e-12);
          const double mp = m_p(kb, ps[i], grid);
          const double mq = m_p(kb, ps[j], grid);
          report.check(row_id(suite, "m_p_monotone", {nk(n), e.spec.label, pl, ql}), kMpMonotone,
                       Inputs()("n", n)("body", e.spec.label)("p", ps[i])("q", ps[j]), mp, "<=", mq,
                       1e-12);
        }
      }
    }
  }

  // Santalo products, section sandwiches and centroid inclusions at n = 3.
  {
    const int n = 3;
    const SphereGrid grid = grid_of(cfg, n);
    const SphereGrid fine = build_sphere_grid(n, 2 * cfg.grid_for(n), cfg.seed + 1);
    for (const Entry& e : catalog(n)) {
      const auto c = make_convex(e.spec);
      if (!c) continue;
      const SantaloResult s = santalo_check(*c, grid);
      const double d = std::abs(santalo_check(*c, fine).value - s.value) / s.value;
      auto& up = report.check(row_id(suite, "santalo_upper", {nk(n), e.spec.label}), kSantalo,
                              Inputs()("n", n)("body", e.spec.label), s.value, "<=", s.upper,
                              std::max(3.0 * d, 1e-9));
      up.delta = d;
      report.check(row_id(suite, "santalo_lower", {nk(n), e.spec.label}), kSantalo,
                   Inputs()("n", n)("body", e.spec.label), s.value, ">=", s.lower,
                   std::max(3.0 * d, 1e-9));
      for (int axis = 0; axis < n; ++axis) {
        Vec u = Vec::Zero(n);
        u[axis] = 1.0;
        if (axis == 1) u = Vec::Ones(n).normalized();
        const SectionSandwichResult l = section_sandwich_check(*c, u, grid);
        report.check(row_id(suite, "section_sandwich_lower", {nk(n), e.spec.label, "axis" + std::to_string(axis)}),
                     kSectionSandwich, Inputs()("n", n)("body", e.spec.label)("axis", axis), l.lower, "<=",
                     l.volume);
        report.check(row_id(suite, "section_sandwich_upper", {nk(n), e.spec.label, "axis" + std::to_string(axis)}),
                     kSectionSandwich, Inputs()("n", n)("body", e.spec.label)("axis", axis), l.volume, "<=",
                     l.upper);
      }
    }
    for (const char* name : {"ball", "cube"}) {
      const StarBody body = std::string(name) == "ball" ? make_star(ball_spec(n))
                                                        : make_star(cube_spec(n));
      const IsotropicData iso = isotropic_position(body, grid, cfg.samples, cfg.seed);
      for (int k : {2, 3}) {
        const CentroidInclusionResult l = centroid_inclusion_check(iso.body, k, grid, cfg.samples, cfg.seed + 3);
        report.check(row_id(suite, "centroid_inclusion_lower", {nk(n), name, kk(k)}), kCentroidInclusion,
                     Inputs()("n", n)("body", name)("k", k), l.min_ratio, ">=", 1.0, 1e-9);
        report.check(row_id(suite, "centroid_inclusion_c", {nk(n), name, kk(k)}), kCentroidInclusion,
                     Inputs()("n", n)("body", name)("k", k), l.measured_c, "<=", 10.0);
      }
      report.check(row_id(suite, "isotropic_constant_lower", {nk(n), name}), kLball,
                   Inputs()("n", n)("body", name), iso.isotropic_constant, ">=",
                   isotropic_constant_ball(n), cfg.tol_or(5e-3))
          .error_bar = iso.isotropic_constant_stderr;
    }
  }

  // Covering ellipsoid inclusions.
  {
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unif(0.1, 3.0);
    double inner = std::numeric_limits<double>::infinity();
    double outer = inner;
    for (int pair = 0; pair < 100; ++pair) {
      const int n = 2 + pair % 5;
      Vec z(n);
      for (int i = 0; i < n; ++i) z[i] = 2.0 * gauss(rng);
      const double t = unif(rng);
      const EllipsoidInclusionSlack s = ellipsoid_inclusion_slack(z, t, 1000, cfg.seed + static_cast<std::uint64_t>(pair));
      inner = std::min(inner, s.inner);
      outer = std::min(outer, s.outer);
    }
    report.check(row_id(suite, "ellipsoid_inclusion_inner", {}), kEllipsoidInclusion, Inputs()("pairs", 100)("points", 1000),
                 inner, ">=", -1e-9);
    report.check(row_id(suite, "ellipsoid_inclusion_outer", {}), kEllipsoidInclusion, Inputs()("pairs", 100)("points", 1000),
                 outer, ">=", -1e-9);
  }

  // Parallel volumes: ball closed form, box Steiner formula, isotropic cube.
  {
    const int n = 3;
    const SphereGrid grid = grid_of(cfg, n);
    const auto ball = *make_convex(ball_spec(n));
    const auto rows = parallel_volume_check(ball, {1.0, 2.0}, grid);
    for (const ParallelVolumeRow& r : rows)
      report.check(row_id(suite, "parallel_volume_ball", {nk(n), "t" + format_number(r.t)}), kParallelVolume,
                   Inputs()("n", n)("body", "ball")("t", r.t), r.ratio, "==", (1.0 + r.t) / r.t,
                   1e-9);
    const auto cube = *make_convex(cube_spec(n));
    const double steiner = 8.0 + 24.0 + 6.0 * std::numbers::pi + 4.0 * std::numbers::pi / 3.0;
    const auto box = parallel_volume_check(cube, {1.0}, grid);
    report.check(row_id(suite, "parallel_volume_box", {nk(n), "cube"}), kParallelVolume,
                 Inputs()("n", n)("body", "cube")("t", 1), box.front().volume, "==", steiner,
                 cfg.tol_or(2e-2));
    const NormalizedBody norm = normalize_position(make_star(cube_spec(n)), grid, cfg.samples, cfg.seed);
    const ConvexBodyH h = support_of_star(norm.body, grid);
    std::vector<double> ts;
    for (double t = 1.0; t <= std::sqrt(static_cast<double>(n)) + 1e-12; t += 0.25) ts.push_back(t);
    double worst = 0.0;
    for (const ParallelVolumeRow& r : parallel_volume_check(h, ts, grid)) worst = std::max(worst, r.ratio);
    report.info(row_id(suite, "parallel_volume_isotropic_cube", {nk(n)}), kParallelVolume,
                Inputs()("n", n)("body", "cube")("t_max", format_number(ts.back())), worst,
                "max ratio over t in [1, sqrt n]");
  }

  // Projection-section bands at n = 4.
  {
    const int n = 4;
    const SphereGrid grid = grid_of(cfg, n);
    for (int k : {1, 2}) {
      const GrassmannSample sample = sample_grassmannian(n, k, 200, cfg.seed + 40 + k);
      for (const Entry& e : catalog(n)) {
        const IsotropicData iso = isotropic_position(e.body, grid, cfg.samples, cfg.seed);
        const ProjectionSectionResult r = projection_section_check(iso.body, k, sample, grid, cfg.samples, cfg.seed + 5);
        auto& row = report.check(row_id(suite, "projection_section_band", {nk(n), kk(k), e.spec.label}), kProjectionSection,
                                 Inputs()("n", n)("k", k)("body", e.spec.label)("subspaces", 200),
                                 r.ratio, "<=", 4.0);
        row.note = "band [" + format_number(r.min) + ", " + format_number(r.max) + "]";
      }
    }
  }

  // Volume of I(K) against isotropic constants at n = 3.
  {
    const int n = 3;
    const int k = 1;
    const SphereGrid grid = grid_of(cfg, n);
    const double rd = ball_radius_unit_volume(n);
    const double ik_d = ball_volume(n) * std::pow(ik_ball(n, k, rd), n);
    const double lb = isotropic_constant_ball(n);
    for (const Entry& e : catalog(n)) {
      if (!e.spec.is_convex() || std::holds_alternative<BallParams>(e.spec.params)) continue;
      const IsotropicData iso = isotropic_position(e.body, grid, cfg.samples, cfg.seed);
      report.check(row_id(suite, "isotropic_e2", {nk(n), e.spec.label}), kE2,
                   Inputs()("n", n)("body", e.spec.label),
                   e_p(iso.body, 2.0, grid), "==",
                   std::sqrt(static_cast<double>(n)) * iso.isotropic_constant, 1e-12);
      const StarBody ik = intersection_body_k1(iso.body, grid);
      const double lhs = std::pow(volume(ik, grid) / ik_d, 1.0 / n);
      const double rhs = lb / iso.isotropic_constant;
      const double rel_err = iso.isotropic_constant_stderr / iso.isotropic_constant;
      const bool ellipsoid = std::holds_alternative<EllipsoidParams>(e.spec.params);
      if (ellipsoid) {
        report.check(row_id(suite, "ik_volume_equality", {nk(n), kk(k), e.spec.label}), kIkVolumeLower,
                     Inputs()("n", n)("k", k)("body", e.spec.label), lhs, "==", rhs,
                     cfg.tol_or(2e-2))
            .error_bar = rhs * rel_err;
      } else {
        auto& row = report.check(row_id(suite, "ik_volume_lower", {nk(n), kk(k), e.spec.label}), kIkVolumeLower,
                                 Inputs()("n", n)("k", k)("body", e.spec.label), lhs, ">=", rhs);
        row.error_bar = rhs * rel_err;
        row.note = "slack " + format_number(lhs - rhs);
      }
      BMOptions bm;
      bm.restarts = 4;
      bm.seed = cfg.seed;
      const double dbm = d_bm_upper(ik, Ellipsoid::ball(n, 1.0).star(), grid, bm).verified;
      report.info(row_id(suite, "ik_volume_upper_c", {nk(n), kk(k), e.spec.label}), kIkVolumeUpper,
                  Inputs()("n", n)("k", k)("body", e.spec.label)("d_bm_upper", format_number(dbm)),
                  lhs / std::log(1.0 + dbm), "fitted c");
    }
  }
}

//---------------------------------------------------------------------------//
// ik
//---------------------------------------------------------------------------//

void run_ik(const RunConfig& cfg, Report& report) {
  const std::string suite = "ik";
  auto solve = [&](const StarBody& body, int k, const SphereGrid& grid) {
    const int n = body.dim();
    const int count = static_cast<int>(std::ceil(20.0 * static_cast<double>(grid.size()) / n));
    return ik_solve(body, k, grid, sample_grassmannian(n, k, count, cfg.seed + k));
  };
  auto rel_dr = [](const StarBody& a, const StarBody& b, const SphereGrid& grid) {
    double top = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) top = std::max(top, b.radial(grid.node(i)));
    return d_radial(a, b, grid) / top;
  };

  for (int n : {3, 4}) {
    const SphereGrid grid = build_sphere_grid(n, n == 3 ? 600 : 1000, cfg.seed);
    const StarBody ball = make_star(ball_spec(n));
    for (int k = 1; k <= n - 1; ++k) {
      const IkResult r = solve(ball, k, grid);
      const StarBody exact = Ellipsoid::ball(n, ik_ball(n, k)).star();
      report.check(row_id(suite, "ball", {nk(n), kk(k)}), kIk, Inputs()("n", n)("k", k)("body", "ball"),
                   rel_dr(r.body, exact, grid), "<=", 1e-2)
          .note = r.diagnostic;
    }
  }

  {
    const int n = 3;
    const SphereGrid grid = build_sphere_grid(n, 600, cfg.seed);
    const auto cat = catalog(n);
    const Entry& ell = cat[1];
    const Ellipsoid e(std::get<EllipsoidParams>(ell.spec.params).shape);
    for (int k : {1, 2}) {
      const IkResult r = solve(ell.body, k, grid);
      report.check(row_id(suite, "ellipsoid", {nk(n), kk(k), ell.spec.label}), kIkMap,
                   Inputs()("n", n)("k", k)("body", ell.spec.label), rel_dr(r.body, ik_ellipsoid(e, k).star(), grid),
                   "<=", 2e-2)
          .note = r.diagnostic;
    }
    // Round trip of the closed form against the section oracle.
    for (int k : {1, 2}) {
      const GrassmannSample sample = sample_grassmannian(n, k, 100, cfg.seed + 9);
      const StarBody ik = ik_ellipsoid(e, k).star();
      const SectionFunction rhs = section_function(ell.body, sample);
      double worst = 0.0;
      for (std::size_t i = 0; i < sample.count(); ++i) {
        const double lhs = SectionIntegrator(k).volume(ik, sample.subspaces[i]);
        worst = std::max(worst, std::abs(lhs - rhs.values[i]) / rhs.values[i]);
      }
      report.check(row_id(suite, "ellipsoid_roundtrip", {nk(n), kk(k)}), kIk,
                   Inputs()("n", n)("k", k)("body", ell.spec.label)("subspaces", 100), worst, "<=",
                   1e-2);
    }
    // Lutwak versus the k = 1 solve.
    const IkResult r1 = solve(ell.body, 1, grid);
    const StarBody lutwak = intersection_body_lutwak(ell.body, grid);
    report.check(row_id(suite, "lutwak_vs_solve", {nk(n)}), kLutwak,
                 Inputs()("n", n)("body", ell.spec.label), rel_dr(lutwak, dilate(r1.body, 2.0), grid),
                 "<=", 2e-2);
    // Scaling covariance.
    const double t = 1.5;
    for (int k : {1, 2}) {
      const IkResult base = solve(ell.body, k, grid);
      const IkResult scaled = solve(dilate(ell.body, t), k, grid);
      const StarBody expect = dilate(base.body, std::pow(t, (n - k) / static_cast<double>(k)));
      report.check(row_id(suite, "scaling", {nk(n), kk(k)}), kIkScale,
                   Inputs()("n", n)("k", k)("t", t), rel_dr(scaled.body, expect, grid), "<=", 2e-2);
    }
  }

  {
    const int n = 4;
    const int k = 2;
    const SphereGrid grid = build_sphere_grid(n, 1000, cfg.seed);
    const IkResult r = solve(make_star(cube_spec(n)), k, grid);
    report.info(row_id(suite, "cube_residual", {nk(n), kk(k)}), kIk, Inputs()("n", n)("k", k)("body", "cube"),
                r.residual, r.diagnostic);
    report.info(row_id(suite, "cube_negativity", {nk(n), kk(k)}), kIk,
                Inputs()("n", n)("k", k)("body", "cube"), r.negativity);
    const SphereGrid g = grid_of(cfg, n);
    const IsotropicData iso = isotropic_position(make_star(cube_spec(n)), g, cfg.samples, cfg.seed);
    const GrassmannSample sample = sample_grassmannian(n, k, cfg.grassmann, cfg.seed + 11);
    const SectionRatio sr = section_ratio_extremes(iso.body, k, sample);
    report.info(row_id(suite, "section_ratio", {nk(n), kk(k), "cube"}), kSectionRatio,
                Inputs()("n", n)("k", k)("body", "cube")("subspaces", sample.count()), sr.ratio,
                "(c_1 k)^k trend; delta " + format_number(sr.delta));
  }
}

//---------------------------------------------------------------------------//
// bp
//---------------------------------------------------------------------------//

void run_bp(const RunConfig& cfg, Report& report) {
  const std::string suite = "bp";
  {
    const int n = 4;
    const SphereGrid grid = grid_of(cfg, n);
    BPOptions opts;
    opts.normalize = false;
    opts.probes = cfg.probes;
    opts.seed = cfg.seed;
    const BPApproximant bp = bp_approximant(make_star(ball_spec(n)), 2, grid, opts);
    report.check(row_id(suite, "ball_ovr", {nk(n)}), kOvr, Inputs()("n", n)("k", 2)("body", "ball"),
                 bp.ovr, "==", std::numbers::e * std::sqrt(2.0), 1e-9)
        .note = bp.diagnostic;
  }

  double fitted = 0.0;
  for (int n : {4, 5}) {
    const SphereGrid grid = grid_of(cfg, n);
    for (const BodySpec& spec : {cube_spec(n), lp_ball_spec(n, 1.0)}) {
      const std::string label = spec.type_name() == "cube" ? "cube" : "l1_ball";
      std::vector<int> ks;
      for (int k = 1; k < n; ++k) ks.push_back(k);
      BPOptions opts;
      opts.probes = cfg.probes;
      opts.samples = cfg.samples;
      opts.seed = cfg.seed;
      const auto curve = bp_curve(make_star(spec), ks, grid, opts);
      double prev = std::numeric_limits<double>::infinity();
      for (const BPApproximant& bp : curve) {
        const std::string kl = kk(bp.k);
        report.check(row_id(suite, "contains", {nk(n), label, kl}), kOvr,
                     Inputs()("n", n)("k", bp.k)("body", label)("t", format_number(bp.t))("N", bp.count),
                     bp.containment_margin, ">=", 1.0)
            .note = bp.diagnostic;
        report.check(row_id(suite, "union_distance", {nk(n), label, kl}), kUnionDistance,
                     Inputs()("n", n)("k", bp.k)("body", label)("N", bp.count), bp.union_distance, "<=",
                     std::numbers::e, 1e-12);
        report.info(row_id(suite, "ovr", {nk(n), label, kl}), kOvr,
                    Inputs()("n", n)("k", bp.k)("body", label)("bound", format_number(bp.bound_shape)),
                    bp.ovr, "ovr at smallest admissible t " + format_number(bp.ovr_smallest_t) +
                                "; analytic t " + format_number(bp.t_analytic));
        if (std::isfinite(prev))
          report.check(row_id(suite, "monotone", {nk(n), label, kl}), kOvr,
                       Inputs()("n", n)("k", bp.k)("body", label), bp.ovr, "<=", prev, 0.10);
        prev = bp.ovr;
        fitted = std::max(fitted, bp.ovr / bp.bound_shape);
      }
    }
  }
  report.check(row_id(suite, "fitted_c", {}), kOvr, Inputs()("bodies", "cube,l1_ball")("n", "4,5"),
               fitted, "<=", 30.0);
}

//---------------------------------------------------------------------------//
// distances
//---------------------------------------------------------------------------//

void run_distances(const RunConfig& cfg, Report& report) {
  const std::string suite = "distances";
  {
    const int n = 3;
    const SphereGrid grid = grid_of(cfg, n);
    const StarBody ball = make_star(ball_spec(n));
    const StarBody cube = make_star(cube_spec(n));
    const StarBody l1 = make_star(lp_ball_spec(n, 1.0));
    report.check(row_id(suite, "dg_cube_ball", {nk(n)}), kDg, Inputs()("n", n), d_geometric(cube, ball, grid),
                 "<=", std::sqrt(static_cast<double>(n)), 1e-12);
    report.check(row_id(suite, "dg_scaling", {nk(n)}), kDg, Inputs()("n", n)("t", 2.5),
                 d_geometric(cube, dilate(cube, 2.5), grid), "==", 1.0, 1e-12);
    report.check(row_id(suite, "dg_triangle", {nk(n)}), kDg, Inputs()("n", n)("bodies", "cube,ball,l1"),
                 d_geometric(cube, l1, grid), "<=",
                 d_geometric(cube, ball, grid) * d_geometric(ball, l1, grid), 1e-12);
    BMOptions bm;
    bm.seed = cfg.seed;
    bm.restarts = 4;
    const Ellipsoid e(std::get<EllipsoidParams>(builtin_catalog(n)[2].params).shape);
    report.check(row_id(suite, "bm_ellipsoid_ball", {nk(n)}), kDg, Inputs()("n", n)("body", "ellipsoid_rotated"),
                 d_bm_upper(e.star(), ball, grid, bm).verified, "<=", 1.02);
    Mat t0(n, n);
    t0 << 1.3, 0.2, 0.0, -0.1, 0.9, 0.3, 0.2, 0.0, 1.1;
    const StarBody planted = apply_map(cube, LinearMap(t0));
    report.check(row_id(suite, "bm_planted", {nk(n)}), kDg, Inputs()("n", n)("body", "cube"),
                 d_bm_upper(cube, planted, grid, bm).verified, "<=", 1.02);
    report.check(row_id(suite, "bm_cube_ball", {nk(n)}), kDg, Inputs()("n", n)("body", "cube"),
                 d_bm_upper(cube, ball, grid, bm).verified, "<=", std::sqrt(static_cast<double>(n)), 1e-2);
  }

  for (int n : {3, 4}) {
    const SphereGrid grid = grid_of(cfg, n);
    for (int k = 2; k <= n - 1; ++k) {
      const GrassmannSample sample = sample_grassmannian(n, k, cfg.grassmann, cfg.seed + 21 + k);
      for (const Entry& e : catalog(n)) {
        if (!e.spec.is_convex()) continue;
        const SectionDistanceResult r = section_distance_check(e.body, k, sample, grid);
        auto& row = report.check(row_id(suite, "section_distance", {nk(n), kk(k), e.spec.label}), kSectionDistance,
                                 Inputs()("n", n)("k", k)("body", e.spec.label)("subspaces", sample.count()),
                                 r.d_g, "<=", r.bound);
        row.note = "delta " + format_number(r.delta) + " (sampled " + format_number(r.delta_sampled) + ")";
        report.check(row_id(suite, "section_ratio_chain", {nk(n), kk(k), e.spec.label}), kChain,
                     Inputs()("n", n)("k", k)("body", e.spec.label), r.pair_ratio, ">=", r.chain_lower);
      }
    }
  }

  {
    const int n = 3;
    const SphereGrid grid = grid_of(cfg, n);
    for (const Entry& e : catalog(n)) {
      if (!e.spec.is_convex()) continue;
      const IsotropicData iso = isotropic_position(e.body, grid, cfg.samples, cfg.seed);
      IkBallDistanceOptions opts;
      opts.seed = cfg.seed;
      opts.grassmann_samples = cfg.grassmann;
      opts.bm.restarts = 4;
      opts.bm.seed = cfg.seed;
      const IkBallDistanceResult r = ik_ball_distance_check(iso.body, 1, grid, opts);
      auto& w = report.check(row_id(suite, "intersection_body_convexity", {nk(n), e.spec.label}), kLutwak,
                             Inputs()("n", n)("body", e.spec.label), r.witness_violation, "<=",
                             r.witness_tol);
      w.note = r.reason;
      w.delta = r.error_estimate;
      if (!r.hypotheses_met) continue;
      report.check(row_id(suite, "ik_ball_distance", {nk(n), e.spec.label}), kIkBallDistance,
                   Inputs()("n", n)("k", 1)("body", e.spec.label), r.d_bm, "<=", 5.0);
      report.info(row_id(suite, "ik_ball_dg", {nk(n), e.spec.label}), kIkBallDistance,
                  Inputs()("n", n)("k", 1)("body", e.spec.label), r.d_g,
                  "k delta^k " + format_number(r.bound));
    }
  }
}

Report run_suite(const std::string& name, const RunConfig& config) {
  config.validate();
  Report report(name, config.seed);
  const bool all = name == "all";
  require(all || std::find(suite_names().begin(), suite_names().end(), name) != suite_names().end(),
          ErrorCode::kInvalidArgument, "unknown suite '" + name + "'");
  if (all || name == "identities") run_identities(config, report);
  if (all || name == "inequalities") run_inequalities(config, report);
  if (all || name == "ik") run_ik(config, report);
  if (all || name == "bp") run_bp(config, report);
  if (all || name == "distances") run_distances(config, report);
  report.sort_rows();
  return report;
}

}  // namespace starbody

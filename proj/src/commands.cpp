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

#include "starbody/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"

#include "detail/svg.hpp"
#include "starbody/approx.hpp"
#include "starbody/body_spec.hpp"
#include "starbody/distances.hpp"
#include "starbody/error.hpp"
#include "starbody/positions.hpp"
#include "starbody/quad.hpp"
#include "starbody/report.hpp"
#include "starbody/sections.hpp"
#include "starbody/suites.hpp"

namespace starbody {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

BodySpec spec_at(const CommandOptions& o, std::size_t i, const char* command) {
  require(o.specs.size() > i, ErrorCode::kInvalidArgument,
          std::string(command) + ": missing --spec");
  return load_body_spec(o.specs[i]);
}

SphereGrid grid_for(const CommandOptions& o, int n, int fallback = 0) {
  const int res = o.grid > 0 ? o.grid : (fallback > 0 ? fallback : default_grid_resolution(n));
  return build_sphere_grid(n, res, o.seed);
}

int samples_or(const CommandOptions& o, int fallback) { return o.samples > 0 ? o.samples : fallback; }

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  require(!ec, ErrorCode::kIo, "cannot create directory " + dir.string() + ": " + ec.message());
}

void write_file(const fs::path& path, const std::string& text) {
  ensure_dir(path.parent_path().empty() ? fs::path(".") : path.parent_path());
  std::ofstream f(path, std::ios::binary);
  require(static_cast<bool>(f), ErrorCode::kIo, "cannot write " + path.string());
  f << text;
  require(static_cast<bool>(f), ErrorCode::kIo, "write failed for " + path.string());
}

std::string ordered_dump(const ordered_json& j) { return j.dump(2) + "\n"; }

std::vector<double> default_ps(int n) {
  std::vector<double> ps = {-static_cast<double>(n), -2.0, -1.0, 1.0, 2.0};
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  return ps;
}

// Input value for key in an "a=1 b=2" inputs string.
std::string input_value(const std::string& inputs, const std::string& key) {
  std::istringstream ss(inputs);
  std::string tok;
  while (ss >> tok)
    if (tok.rfind(key + "=", 0) == 0) return tok.substr(key.size() + 1);
  return {};
}

std::vector<std::string> split_id(const std::string& id) {
  std::vector<std::string> parts;
  std::stringstream ss(id);
  std::string p;
  while (std::getline(ss, p, '/')) parts.push_back(p);
  return parts;
}

// ovr curves, section identity ratios and moment ratios from report rows.
void write_report_plots(const std::vector<std::pair<std::string, Report>>& runs, const fs::path& dir) {
  detail::SvgPlot ovr("Outer volume ratio", "k", "ovr");
  detail::SvgPlot sections("Section identity ratio", "lhs / rhs", "rows");
  detail::SvgPlot moments("Moment ratio E_p(K) / E_p(D_n)", "p", "ratio");
  for (const auto& [label, report] : runs) {
    std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> curves;
    std::vector<double> ratios, px, py;
    for (const ReportRow& r : report.rows()) {
      const auto parts = split_id(r.id);
      if (parts.size() == 5 && parts[0] == "bp" && parts[1] == "ovr") {
        auto& c = curves[parts[2] + " " + parts[3]];
        c.first.push_back(std::stod(parts[4].substr(1)));
        c.second.push_back(r.measured);
      } else if (parts.size() >= 2 && parts[1] == "dual_moment_sections") {
        ratios.push_back(r.measured);
      } else if (parts.size() >= 2 && parts[1] == "moment_ball_lower" && r.target > 0.0) {
        const std::string p = input_value(r.inputs, "p");
        if (!p.empty()) {
          px.push_back(std::stod(p));
          py.push_back(r.measured / r.target);
        }
      }
    }
    const std::string suffix = runs.size() > 1 ? " (" + label + ")" : "";
    for (auto& [name, c] : curves) ovr.line(name + suffix, c.first, c.second);
    if (!ratios.empty()) sections.histogram("rows" + suffix, ratios);
    if (!px.empty()) moments.scatter("bodies" + suffix, px, py);
  }
  auto emit = [&](const detail::SvgPlot& plot, const char* name) {
    if (plot.empty()) return;
    std::ostringstream ss;
    plot.write(ss);
    write_file(dir / name, ss.str());
  };
  emit(ovr, "ovr.svg");
  emit(sections, "section_ratio.svg");
  emit(moments, "moment_ratio.svg");
}

CommandResult ok(std::string out) { return {0, std::move(out), {}}; }

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"body", "moments", "section", "ikbody",
                                                 "bp-approx", "distance", "verify", "report"};
  return names;
}

CommandResult cmd_body(const CommandOptions& o) {
  const BodySpec spec = spec_at(o, 0, "body");
  const int n = spec.dim;
  const StarBody body = make_star(spec);
  const SphereGrid grid = grid_for(o, n);
  ordered_json j;
  j["spec"] = ordered_json::parse(to_json(spec));
  j["grid"] = grid.size();
  j["seed"] = o.seed;
  const double vol = volume(body, grid);
  j["volume"] = vol;
  j["exact_volume"] = body.exact_volume() ? ordered_json(*body.exact_volume()) : ordered_json();
  const RadialRange range = radial_range(body, grid);
  j["radial_range"] = {{"min", range.min}, {"max", range.max}};
  const ConvexityWitness w = check_convexity(body, grid);
  j["convexity_witness"] = {{"holds", w.holds}, {"worst_violation", w.worst_violation}};
  ordered_json mp = ordered_json::array();
  for (double p : default_ps(n)) mp.push_back({{"p", p}, {"m_p", m_p(body, p, grid)}});
  j["m_p"] = mp;
  const IsotropicData iso = isotropic_position(body, grid, samples_or(o, kDefaultMonteCarloSamples), o.seed);
  j["isotropic"] = {{"isotropic_constant", iso.isotropic_constant},
                    {"stderr", iso.isotropic_constant_stderr},
                    {"ball_value", isotropic_constant_ball(n)},
                    {"samples", iso.samples}};
  const std::string text = ordered_dump(j);
  if (!o.out.empty()) write_file(o.out / "body.json", text);
  return ok(text);
}

CommandResult cmd_moments(const CommandOptions& o) {
  require(!o.specs.empty(), ErrorCode::kInvalidArgument, "moments: missing --spec");
  std::ostringstream csv;
  csv << "label,dim,p,m_p,e_p,e_p_ball,e_p_ratio\n";
  detail::SvgPlot plot("Moment ratio E_p(K) / E_p(D_n)", "p", "ratio");
  for (std::size_t i = 0; i < o.specs.size(); ++i) {
    const BodySpec spec = spec_at(o, i, "moments");
    const int n = spec.dim;
    const SphereGrid grid = grid_for(o, n);
    const StarBody body = make_star(spec);
    const StarBody unit = normalize_volume(body, grid);
    std::vector<double> xs, ys;
    for (double p : default_ps(n)) {
      csv << spec.label << ',' << n << ',' << format_number(p) << ','
          << format_number(m_p(body, p, grid));
      if (p > -n) {
        const double ep = e_p(unit, p, grid), eb = e_p_unit_volume_ball(n, p);
        csv << ',' << format_number(ep) << ',' << format_number(eb) << ',' << format_number(ep / eb);
        xs.push_back(p);
        ys.push_back(ep / eb);
      } else {
        csv << ",,,";
      }
      csv << '\n';
    }
    plot.scatter(spec.label, xs, ys);
  }
  if (!o.out.empty()) {
    write_file(o.out / "moments.csv", csv.str());
    std::ostringstream svg;
    plot.write(svg);
    write_file(o.out / "moment_ratio.svg", svg.str());
  }
  return ok(csv.str());
}

CommandResult cmd_section(const CommandOptions& o) {
  const BodySpec spec = spec_at(o, 0, "section");
  const int n = spec.dim;
  const int k = o.ks.empty() ? 1 : o.ks.front();
  require(k >= 1 && k <= n - 1, ErrorCode::kInvalidArgument, "section: k must lie in [1, n-1]");
  const StarBody body = make_star(spec);
  const GrassmannSample sample = sample_grassmannian(n, k, samples_or(o, 500), o.seed);
  const SectionFunction fn = section_function(body, sample);
  const auto [lo, hi] = std::minmax_element(fn.values.begin(), fn.values.end());
  double mean = 0.0;
  for (double v : fn.values) mean += v;
  mean /= static_cast<double>(fn.values.size());
  ordered_json j;
  j["label"] = spec.label;
  j["n"] = n;
  j["k"] = k;
  j["subspaces"] = sample.count();
  j["seed"] = o.seed;
  j["mean"] = mean;
  j["min"] = *lo;
  j["max"] = *hi;
  j["ratio"] = *hi / *lo;
  const std::string text = ordered_dump(j);
  if (!o.out.empty()) {
    std::ostringstream data;
    write_section_function(data, fn);
    write_file(o.out / "sections.txt", data.str());
    write_file(o.out / "sections.json", text);
    std::vector<double> rel;
    for (double v : fn.values) rel.push_back(v / mean);
    detail::SvgPlot plot("Section volumes |K cap F^perp| / mean", "ratio", "subspaces");
    plot.histogram(spec.label + " k=" + std::to_string(k), rel);
    std::ostringstream svg;
    plot.write(svg);
    write_file(o.out / "section_ratio.svg", svg.str());
  }
  return ok(text);
}

CommandResult cmd_ikbody(const CommandOptions& o) {
  const BodySpec spec = spec_at(o, 0, "ikbody");
  const int n = spec.dim;
  const int k = o.ks.empty() ? 1 : o.ks.front();
  require(k >= 1 && k <= n - 1, ErrorCode::kInvalidArgument, "ikbody: k must lie in [1, n-1]");
  const SphereGrid grid = grid_for(o, n, n <= 3 ? 1000 : 2000);
  const StarBody body = make_star(spec);
  const int count = static_cast<int>(std::ceil(20.0 * static_cast<double>(grid.size()) / n));
  const GrassmannSample sample = sample_grassmannian(n, k, count, o.seed);
  const IkResult r = ik_solve(body, k, grid, sample);
  ordered_json j;
  j["spec"] = ordered_json::parse(to_json(spec));
  j["k"] = k;
  j["grid"] = grid.size();
  j["subspaces"] = sample.count();
  j["seed"] = o.seed;
  j["residual"] = r.residual;
  j["negativity"] = r.negativity;
  j["lambda"] = r.lambda;
  j["halvings"] = r.halvings;
  j["condition"] = r.condition;
  j["exists"] = r.exists;
  j["ill_conditioned"] = r.ill_conditioned;
  j["diagnostic"] = r.diagnostic;
  std::optional<StarBody> closed;
  if (const auto* b = std::get_if<BallParams>(&spec.params))
    closed = Ellipsoid::ball(n, ik_ball(n, k, b->radius)).star();
  if (const auto* e = std::get_if<EllipsoidParams>(&spec.params))
    closed = ik_ellipsoid(Ellipsoid(e->shape), k).star();
  if (closed) {
    const RadialRange range = radial_range(*closed, grid);
    j["closed_form_d_r"] = d_radial(r.body, *closed, grid) / range.max;
  }
  ordered_json summary = j;
  ordered_json nodes = ordered_json::array();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec& u = grid.node(i);
    nodes.push_back({{"u", std::vector<double>(u.data(), u.data() + u.size())},
                     {"radius", r.body.radial(u)}});
  }
  j["nodes"] = nodes;
  if (!o.out.empty()) write_file(o.out / "ikbody.json", ordered_dump(j));
  CommandResult res = ok(ordered_dump(summary));
  if (!r.exists) res.err = "ikbody: no numerical I_k: " + r.diagnostic + "\n";
  return res;
}

CommandResult cmd_bp_approx(const CommandOptions& o) {
  const BodySpec spec = spec_at(o, 0, "bp-approx");
  const int n = spec.dim;
  std::vector<int> ks = o.ks;
  if (ks.empty())
    for (int k = 1; k < n; ++k) ks.push_back(k);
  for (int k : ks)
    require(k >= 1 && k <= n - 1, ErrorCode::kInvalidArgument, "bp-approx: k must lie in [1, n-1]");
  const SphereGrid grid = grid_for(o, n, 4000);
  BPOptions opts;
  opts.probes = opts.samples = samples_or(o, 200000);
  opts.seed = o.seed;
  const auto curve = bp_curve(make_star(spec), ks, grid, opts);
  std::ostringstream csv;
  csv << "k,t,N,ovr,ovr_smallest_t,bound_shape,contains,containment_margin,union_distance,ok\n";
  double fitted = 0.0;
  std::vector<double> xs, ys, ys_small, bound;
  for (const BPApproximant& bp : curve) {
    csv << bp.k << ',' << format_number(bp.t) << ',' << bp.count << ',' << format_number(bp.ovr) << ','
        << format_number(bp.ovr_smallest_t) << ',' << format_number(bp.bound_shape) << ','
        << (bp.contains ? "true" : "false") << ',' << format_number(bp.containment_margin) << ','
        << format_number(bp.union_distance) << ',' << (bp.ok ? "true" : "false") << '\n';
    fitted = std::max(fitted, bp.ovr / bp.bound_shape);
    xs.push_back(bp.k);
    ys.push_back(bp.ovr);
    ys_small.push_back(bp.ovr_smallest_t);
    bound.push_back(bp.bound_shape);
  }
  for (double& b : bound) b *= fitted;
  if (!o.out.empty()) {
    write_file(o.out / "bp.csv", csv.str());
    detail::SvgPlot plot("Outer volume ratio, " + spec.label + " n=" + std::to_string(n), "k", "ovr");
    plot.line("measured", xs, ys);
    plot.line("smallest t", xs, ys_small);
    plot.line("C sqrt(n/k log(en/k)), C=" + format_number(fitted), xs, bound, true);
    std::ostringstream svg;
    plot.write(svg);
    write_file(o.out / "ovr.svg", svg.str());
  }
  CommandResult res = ok(csv.str() + "# fitted C " + format_number(fitted) + "\n");
  for (const BPApproximant& bp : curve)
    if (!bp.ok) {
      res.exit_code = 1;
      res.err += "bp-approx: k=" + std::to_string(bp.k) + ": " + bp.diagnostic + "\n";
    }
  return res;
}

CommandResult cmd_distance(const CommandOptions& o) {
  const BodySpec a = spec_at(o, 0, "distance");
  const BodySpec b = o.specs.size() > 1 ? spec_at(o, 1, "distance") : ball_spec(a.dim);
  require(a.dim == b.dim, ErrorCode::kInvalidArgument, "distance: bodies differ in dimension");
  const SphereGrid grid = grid_for(o, a.dim);
  const StarBody k1 = make_star(a), k2 = make_star(b);
  BMOptions bm;
  bm.seed = o.seed;
  const DistanceReport rep = d_bm_upper(k1, k2, grid, bm);
  ordered_json j;
  j["first"] = a.label;
  j["second"] = b.label;
  j["grid"] = grid.size();
  j["seed"] = o.seed;
  j["d_radial"] = d_radial(k1, k2, grid);
  j["d_geometric"] = d_geometric(k1, k2, grid);
  j["d_bm_upper"] = rep.verified;
  j["d_bm_search_grid"] = rep.value;
  std::vector<std::vector<double>> t;
  for (Eigen::Index r = 0; r < rep.witness.rows(); ++r) {
    t.emplace_back();
    for (Eigen::Index c = 0; c < rep.witness.cols(); ++c) t.back().push_back(rep.witness(r, c));
  }
  j["witness"] = t;
  j["restarts"] = rep.restarts;
  j["evaluations"] = rep.evaluations;
  const std::string text = ordered_dump(j);
  if (!o.out.empty()) write_file(o.out / "distance.json", text);
  return ok(text);
}

CommandResult cmd_verify(const CommandOptions& o) {
  RunConfig cfg;
  cfg.seed = o.seed;
  cfg.grid = o.grid;
  if (o.samples > 0) cfg.samples = cfg.probes = o.samples;
  cfg.tol = o.tol;
  cfg.out_dir = o.out;
  const Report report = run_suite(o.suite, cfg);
  if (!o.out.empty()) {
    std::ostringstream csv, json;
    report.write_csv(csv);
    report.write_json(json);
    write_file(o.out / "report.csv", csv.str());
    write_file(o.out / "report.json", json.str());
    write_report_plots({{"seed" + std::to_string(o.seed), report}}, o.out);
  }
  std::ostringstream out;
  out << "suite " << o.suite << " seed " << o.seed << ": " << report.rows().size() << " rows, "
      << report.failures() << " failed\n";
  for (const ReportRow& r : report.rows())
    if (r.status == RowStatus::kFail)
      out << "FAIL " << r.id << ": " << format_number(r.measured) << ' ' << r.relation << ' '
          << format_number(r.target) << '\n';
  CommandResult res = ok(out.str());
  if (report.failures() > 0) res.exit_code = 1;
  return res;
}

CommandResult cmd_report(const CommandOptions& o) {
  const fs::path dir = o.run_dir;
  require(!dir.empty(), ErrorCode::kInvalidArgument, "report: missing run directory");
  require(fs::is_directory(dir), ErrorCode::kIo, "report: not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().filename() == "report.json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  require(!files.empty(), ErrorCode::kIo, "report: no report.json under " + dir.string());

  std::vector<std::pair<std::string, Report>> runs;
  std::set<std::string> used;
  for (const fs::path& f : files) {
    std::ifstream in(f, std::ios::binary);
    require(static_cast<bool>(in), ErrorCode::kIo, "report: cannot read " + f.string());
    Report r = Report::read_json(in);
    std::string label = "seed" + std::to_string(r.seed());
    for (int i = 2; used.count(label); ++i) label = "seed" + std::to_string(r.seed()) + "_" + std::to_string(i);
    used.insert(label);
    runs.emplace_back(label, std::move(r));
  }
  const fs::path out = o.out.empty() ? dir : o.out;
  std::ostringstream csv, json;
  if (runs.size() == 1) {
    runs.front().second.write_csv(csv);
    runs.front().second.write_json(json);
  } else {
    std::map<std::string, std::pair<std::string, std::vector<const ReportRow*>>> table;
    for (std::size_t i = 0; i < runs.size(); ++i)
      for (const ReportRow& r : runs[i].second.rows()) {
        auto& entry = table[r.id];
        entry.first = r.anchor;
        entry.second.resize(runs.size(), nullptr);
        entry.second[i] = &r;
      }
    csv << "id,anchor";
    for (const auto& [label, report] : runs) csv << ",measured_" << label << ",status_" << label;
    csv << '\n';
    ordered_json rows = ordered_json::array();
    for (auto& [id, entry] : table) {
      entry.second.resize(runs.size(), nullptr);
      csv << '"' << id << "\",\"" << entry.first << '"';
      ordered_json row;
      row["id"] = id;
      row["anchor"] = entry.first;
      ordered_json values;
      for (std::size_t i = 0; i < runs.size(); ++i) {
        const ReportRow* r = entry.second[i];
        if (r) {
          csv << ',' << format_number(r->measured) << ',' << to_string(r->status);
          values[runs[i].first] = {{"measured", format_number(r->measured)},
                                   {"target", format_number(r->target)},
                                   {"status", to_string(r->status)}};
        } else {
          csv << ",,missing";
        }
      }
      row["runs"] = values;
      rows.push_back(row);
      csv << '\n';
    }
    ordered_json doc;
    ordered_json meta = ordered_json::array();
    for (std::size_t i = 0; i < runs.size(); ++i)
      meta.push_back({{"label", runs[i].first},
                      {"path", fs::relative(files[i], dir).generic_string()},
                      {"suite", runs[i].second.suite()},
                      {"seed", runs[i].second.seed()},
                      {"failures", runs[i].second.failures()}});
    doc["runs"] = meta;
    doc["rows"] = rows;
    json << doc.dump(2) << '\n';
  }
  write_file(out / "merged.csv", csv.str());
  write_file(out / "merged.json", json.str());
  write_report_plots(runs, out);
  std::ostringstream msg;
  msg << "merged " << runs.size() << " report(s) into " << (out / "merged.csv").string() << '\n';
  return ok(msg.str());
}

CommandResult run_command(const std::string& name, const CommandOptions& options) {
  std::set<std::string> warnings;
  std::string warning_text;
  set_warning_handler([&](std::string_view msg) {
    if (warnings.insert(std::string(msg)).second) warning_text += "warning: " + std::string(msg) + "\n";
  });
  CommandResult res;
  try {
    if (name == "body") res = cmd_body(options);
    else if (name == "moments") res = cmd_moments(options);
    else if (name == "section") res = cmd_section(options);
    else if (name == "ikbody") res = cmd_ikbody(options);
    else if (name == "bp-approx") res = cmd_bp_approx(options);
    else if (name == "distance") res = cmd_distance(options);
    else if (name == "verify") res = cmd_verify(options);
    else if (name == "report") res = cmd_report(options);
    else fail(ErrorCode::kInvalidArgument, "unknown command '" + name + "'");
  } catch (const Error& e) {
    const bool input = e.code() == ErrorCode::kParse || e.code() == ErrorCode::kInvalidArgument ||
                       e.code() == ErrorCode::kIo;
    res = {input ? 2 : 1, {}, std::string("error: ") + e.what() + "\n"};
  } catch (const std::exception& e) {
    res = {1, {}, std::string("error: ") + e.what() + "\n"};
  }
  set_warning_handler([](std::string_view msg) { std::fprintf(stderr, "warning: %.*s\n",
                                                             static_cast<int>(msg.size()), msg.data()); });
  res.err = warning_text + res.err;
  return res;
}

}  // namespace starbody

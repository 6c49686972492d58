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

#include "detail/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace starbody::detail {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 55.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void SvgPlot::line(std::string name, std::vector<double> xs, std::vector<double> ys, bool dashed) {
  series_.push_back({std::move(name), dashed ? Kind::kDashed : Kind::kLine, std::move(xs), std::move(ys)});
}

void SvgPlot::scatter(std::string name, std::vector<double> xs, std::vector<double> ys) {
  series_.push_back({std::move(name), Kind::kScatter, std::move(xs), std::move(ys)});
}

void SvgPlot::histogram(std::string name, const std::vector<double>& values, int bins) {
  if (values.empty() || bins < 1) return;
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  double lo = *lo_it, hi = *hi_it;
  if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double width = (hi - lo) / bins;
  std::vector<double> xs(bins), ys(bins, 0.0);
  for (int b = 0; b < bins; ++b) xs[b] = lo + (b + 0.5) * width;
  for (double v : values) {
    const int b = std::clamp(static_cast<int>((v - lo) / width), 0, bins - 1);
    ys[b] += 1.0;
  }
  Series s{std::move(name), Kind::kBars, std::move(xs), std::move(ys)};
  s.bar_width = width;
  series_.push_back(std::move(s));
}

void SvgPlot::write(std::ostream& out) const {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const Series& s : series_) {
    for (std::size_t i = 0; i < s.xs.size(); ++i) {
      if (!std::isfinite(s.xs[i]) || !std::isfinite(s.ys[i])) continue;
      x0 = std::min(x0, s.xs[i] - s.bar_width / 2);
      x1 = std::max(x1, s.xs[i] + s.bar_width / 2);
      y0 = std::min(y0, s.ys[i]);
      y1 = std::max(y1, s.ys[i]);
    }
    if (s.kind == Kind::kBars) y0 = std::min(y0, 0.0);
  }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 - x0 < 1e-12) x0 -= 0.5, x1 += 0.5;
  if (y1 - y0 < 1e-12) y0 -= 0.5, y1 += 0.5;
  const double pad = 0.05 * (y1 - y0);
  y1 += pad;
  if (y0 != 0.0) y0 -= pad;

  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return kTop + (1.0 - (y - y0) / (y1 - y0)) * ph; };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kLeft + pw / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(title_) << "</text>\n";
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = x0 + (x1 - x0) * i / 4.0, yv = y0 + (y1 - y0) * i / 4.0;
    out << "<text x=\"" << px(xv) << "\" y=\"" << kTop + ph + 16 << "\" text-anchor=\"middle\">"
        << num(xv) << "</text>\n";
    out << "<text x=\"" << kLeft - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">"
        << num(yv) << "</text>\n";
    out << "<line x1=\"" << kLeft << "\" x2=\"" << kLeft + pw << "\" y1=\"" << py(yv) << "\" y2=\""
        << py(yv) << "\" stroke=\"#e0e0e0\"/>\n";
  }
  out << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\">"
      << escape(x_label_) << "</text>\n";
  out << "<text transform=\"translate(18," << kTop + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape(y_label_) << "</text>\n";

  for (std::size_t si = 0; si < series_.size(); ++si) {
    const Series& s = series_[si];
    const char* color = kPalette[si % (sizeof kPalette / sizeof kPalette[0])];
    if (s.kind == Kind::kLine || s.kind == Kind::kDashed) {
      out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\"";
      if (s.kind == Kind::kDashed) out << " stroke-dasharray=\"6,4\"";
      out << " points=\"";
      for (std::size_t i = 0; i < s.xs.size(); ++i)
        if (std::isfinite(s.xs[i]) && std::isfinite(s.ys[i]))
          out << num(px(s.xs[i])) << ',' << num(py(s.ys[i])) << ' ';
      out << "\"/>\n";
    }
    if (s.kind == Kind::kLine || s.kind == Kind::kScatter) {
      for (std::size_t i = 0; i < s.xs.size(); ++i)
        if (std::isfinite(s.xs[i]) && std::isfinite(s.ys[i]))
          out << "<circle cx=\"" << num(px(s.xs[i])) << "\" cy=\"" << num(py(s.ys[i]))
              << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    if (s.kind == Kind::kBars) {
      for (std::size_t i = 0; i < s.xs.size(); ++i) {
        const double l = px(s.xs[i] - s.bar_width / 2), r = px(s.xs[i] + s.bar_width / 2);
        out << "<rect x=\"" << num(l) << "\" y=\"" << num(py(s.ys[i])) << "\" width=\""
            << num(std::max(r - l - 1.0, 0.5)) << "\" height=\"" << num(py(y0) - py(s.ys[i]))
            << "\" fill=\"" << color << "\" fill-opacity=\"0.7\"/>\n";
      }
    }
    const double ly = kTop + 14 + 18.0 * si;
    out << "<rect x=\"" << kLeft + pw + 12 << "\" y=\"" << ly - 9 << "\" width=\"12\" height=\"10\" fill=\""
        << color << "\"/>\n";
    out << "<text x=\"" << kLeft + pw + 30 << "\" y=\"" << ly << "\">" << escape(s.name) << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace starbody::detail

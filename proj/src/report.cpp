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

#include "starbody/report.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <istream>
#include <ostream>

#include "json.hpp"
#include "starbody/error.hpp"

namespace starbody {

namespace {

constexpr std::array<std::string_view, 32> kAnchors = {
    "rho_I(K)(xi) = |K cap xi^perp|",
    "R_m f(F) = int_{S cap F} f",
    "|I_k(K) cap F| = |K cap F^perp|",
    "I_k(TK) = |det T|^{1/k} T^{-T} I_k(K)",
    "I_k(tK) = t^{(n-k)/k} I_k(K)",
    "h_{Z_p(K)}(theta) = (int_K |<x,theta>|^p dx)^{1/p}",
    "Z_2(TK) = L_K B_2^n",
    "|K cap F^perp|^{1/k} |P_F Z_k(K)|^{1/k} ~ 1",
    "(|K||K^o|)^{1/n} ~ 1/n",
    "Z_2(K) subset Z_k(K) subset ck Z_2(K)",
    "|I_k(K) cap F_1| / |I_k(K) cap F_2| <= (c_1 k)^k",
    "2r/(m+1) |K cap R^m| <= |K| <= 2R |K cap R^m|",
    "d_G(K, B_2^n) <= k delta^k",
    "R/(kr) <= |K cap F_1| / |K cap F_2| <= kR/r",
    "|K + tB_2^n|^{1/n} <= ct |K|^{1/n}",
    "z + tB_2^n subset E subset co{+-2z + 2 sqrt(2) t B_2^n}",
    "d(V, C) <= N^{1/k} <= e",
    "o.v.r.(K, BP_k^n) <= c sqrt(n log(en/k) / k)",
    "d_BM(I_k(K), B_2^n) <= c(k)",
    "E_{-k}(K) (int |K cap F^perp|)^{1/k} = E_{-k}(D_n) (int |D_n cap F^perp|)^{1/k}",
    "M_{-k}(I_k(K)) (int |K cap F^perp|)^{1/k} = omega_k^{1/k}",
    "M_{-k}(I_k(K)) / M_{-k}(I_k(D_n)) = E_{-k}(K) / E_{-k}(D_n)",
    "E_p(K) >= E_p(D_n)",
    "E_p(K)/E_q(K) <= E_p(D_n)/E_q(D_n)",
    "E_p(D_n) = (n/(n+p))^{1/p} omega_n^{-1/n}",
    "M_p(C) <= M_q(C)",
    "M_{-n}(C) = (|B_2^n|/|C|)^{1/n}",
    "(|I_k(K)|/|I_k(B_2^n)|)^{1/n} >= L_{B_2^n}/L_K",
    "(|I_k(K)|/|I_k(B_2^n)|)^{1/n} <= c log(1 + d_BM(I_k(K), B_2^n))",
    "E_2(K) = sqrt(n) L_K",
    "L_K >= L_{B_2^n}",
    "d_G(K_1, K_2) = min{r : K_1 subset aK_2 subset raK_1}",
};

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::json number_json(double v) {
  if (std::isnan(v)) return nullptr;
  return format_number(v);
}

double number_from_json(const nlohmann::json& v) {
  if (v.is_null()) return kNone;
  if (v.is_string()) return std::stod(v.get<std::string>());
  return v.get<double>();
}

RowStatus status_from_string(const std::string& s) {
  if (s == "pass") return RowStatus::kPass;
  if (s == "fail") return RowStatus::kFail;
  return RowStatus::kInfo;
}

}  // namespace

std::string to_string(RowStatus status) {
  switch (status) {
    case RowStatus::kPass:
      return "pass";
    case RowStatus::kFail:
      return "fail";
    case RowStatus::kInfo:
      return "info";
  }
  return "info";
}

std::span<const std::string_view> known_anchors() { return kAnchors; }

bool is_known_anchor(std::string_view anchor) {
  return std::find(kAnchors.begin(), kAnchors.end(), anchor) != kAnchors.end();
}

std::string format_number(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::size_t Report::failures() const {
  return static_cast<std::size_t>(std::count_if(
      rows_.begin(), rows_.end(), [](const ReportRow& r) { return r.status == RowStatus::kFail; }));
}

ReportRow& Report::add(ReportRow row) {
  require(is_known_anchor(row.anchor), ErrorCode::kInvalidArgument,
          "report row '" + row.id + "' has unknown anchor '" + row.anchor + "'");
  if (row.seed == 0) row.seed = seed_;
  rows_.push_back(std::move(row));
  return rows_.back();
}

ReportRow& Report::check(std::string id, std::string anchor, std::string inputs,
                         double measured, std::string relation, double target, double tol) {
  bool ok = false;
  if (relation == "<=") {
    ok = measured <= target * (1.0 + tol);
  } else if (relation == ">=") {
    ok = measured >= target * (1.0 - tol);
  } else if (relation == "==") {
    const double scale = std::max(std::abs(target), 1e-300);
    ok = std::abs(measured - target) <= tol * scale;
  } else {
    fail(ErrorCode::kInvalidArgument, "report: unknown relation " + relation);
  }
  if (std::isnan(measured)) ok = false;
  ReportRow row;
  row.id = std::move(id);
  row.anchor = std::move(anchor);
  row.inputs = std::move(inputs);
  row.measured = measured;
  row.relation = std::move(relation);
  row.target = target;
  row.status = ok ? RowStatus::kPass : RowStatus::kFail;
  if (tol > 0.0) row.note = "tol " + format_number(tol);
  return add(std::move(row));
}

ReportRow& Report::info(std::string id, std::string anchor, std::string inputs,
                        double measured, std::string note) {
  ReportRow row;
  row.id = std::move(id);
  row.anchor = std::move(anchor);
  row.inputs = std::move(inputs);
  row.measured = measured;
  row.relation = "info";
  row.status = RowStatus::kInfo;
  row.note = std::move(note);
  return add(std::move(row));
}

void Report::append(const Report& other) {
  rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end());
}

void Report::sort_rows() {
  std::stable_sort(rows_.begin(), rows_.end(),
                   [](const ReportRow& a, const ReportRow& b) { return a.id < b.id; });
}

void Report::write_csv(std::ostream& out) const {
  out << "id,status,anchor,inputs,measured,relation,target,error_bar,delta,seed,note\n";
  for (const ReportRow& r : rows_) {
    out << csv_escape(r.id) << ',' << to_string(r.status) << ',' << csv_escape(r.anchor) << ','
        << csv_escape(r.inputs) << ',' << format_number(r.measured) << ','
        << csv_escape(r.relation) << ',' << format_number(r.target) << ','
        << format_number(r.error_bar) << ',' << format_number(r.delta) << ',' << r.seed << ','
        << csv_escape(r.note) << '\n';
  }
}

void Report::write_json(std::ostream& out) const {
  nlohmann::ordered_json doc;
  doc["suite"] = suite_;
  doc["seed"] = seed_;
  doc["failures"] = failures();
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const ReportRow& r : rows_) {
    nlohmann::ordered_json row;
    row["id"] = r.id;
    row["status"] = to_string(r.status);
    row["anchor"] = r.anchor;
    row["inputs"] = r.inputs;
    row["measured"] = number_json(r.measured);
    row["relation"] = r.relation;
    row["target"] = number_json(r.target);
    row["error_bar"] = number_json(r.error_bar);
    row["delta"] = number_json(r.delta);
    row["seed"] = r.seed;
    row["note"] = r.note;
    rows.push_back(row);
  }
  doc["rows"] = rows;
  out << doc.dump(2) << '\n';
}

Report Report::read_json(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParse, std::string("report: malformed JSON: ") + e.what());
  }
  require(doc.is_object() && doc.contains("rows"), ErrorCode::kParse,
          "report: missing field 'rows'");
  Report out(doc.value("suite", std::string()), doc.value("seed", std::uint64_t{0}));
  for (const auto& r : doc["rows"]) {
    ReportRow row;
    row.id = r.value("id", std::string());
    row.status = status_from_string(r.value("status", std::string("info")));
    row.anchor = r.value("anchor", std::string());
    row.inputs = r.value("inputs", std::string());
    row.measured = number_from_json(r["measured"]);
    row.relation = r.value("relation", std::string());
    row.target = number_from_json(r["target"]);
    row.error_bar = number_from_json(r["error_bar"]);
    row.delta = number_from_json(r["delta"]);
    row.seed = r.value("seed", std::uint64_t{0});
    row.note = r.value("note", std::string());
    out.add(std::move(row));
  }
  return out;
}

}  // namespace starbody

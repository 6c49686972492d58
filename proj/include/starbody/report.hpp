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

#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace starbody {

inline constexpr double kNone = std::numeric_limits<double>::quiet_NaN();

enum class RowStatus { kPass, kFail, kInfo };
std::string to_string(RowStatus status);

struct ReportRow {
  std::string id;
  std::string anchor;
  std::string inputs;
  double measured = kNone;
  std::string relation;  // "<=", ">=", "==", "info"
  double target = kNone;
  RowStatus status = RowStatus::kInfo;
  double error_bar = kNone;
  double delta = kNone;
  std::uint64_t seed = 0;
  std::string note;
};

// Formula tags every row must carry.
std::span<const std::string_view> known_anchors();
bool is_known_anchor(std::string_view anchor);

class Report {
 public:
  explicit Report(std::string suite = {}, std::uint64_t seed = 0) : suite_(std::move(suite)), seed_(seed) {}

  const std::string& suite() const { return suite_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<ReportRow>& rows() const { return rows_; }
  std::size_t failures() const;

  // The anchor must be a known tag.
  ReportRow& add(ReportRow row);
  // Hard check: pass iff measured relation target holds (with relative
  // tolerance tol for "==").
  ReportRow& check(std::string id, std::string anchor, std::string inputs, double measured,
                   std::string relation, double target, double tol = 0.0);
  ReportRow& info(std::string id, std::string anchor, std::string inputs, double measured,
                  std::string note = {});
  void append(const Report& other);
  void sort_rows();

  void write_csv(std::ostream& out) const;
  void write_json(std::ostream& out) const;
  static Report read_json(std::istream& in);

 private:
  std::string suite_;
  std::uint64_t seed_;
  std::vector<ReportRow> rows_;
};

// Fixed-format number rendering shared by all writers.
std::string format_number(double v);

}  // namespace starbody

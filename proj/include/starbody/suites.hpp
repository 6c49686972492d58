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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "starbody/core.hpp"
#include "starbody/report.hpp"

namespace starbody {

struct RunConfig {
  std::uint64_t seed = 7;
  // 0 selects default_grid_resolution(n).
  int grid = 0;
  int grassmann = 500;
  int samples = 50000;
  int probes = 50000;
  // Relative tolerance override for statistical rows; 0 keeps the defaults.
  double tol = 0.0;
  std::filesystem::path out_dir;

  void validate() const;
  int grid_for(int n) const;
  double tol_or(double fallback) const { return tol > 0.0 ? tol : fallback; }
};

int default_grid_resolution(int n);

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"identities", "inequalities", "ik", "bp",
                                                 "distances"};
  return names;
}

// One suite by name, or "all".
Report run_suite(const std::string& name, const RunConfig& config);

void run_identities(const RunConfig& config, Report& report);
void run_inequalities(const RunConfig& config, Report& report);
void run_ik(const RunConfig& config, Report& report);
void run_bp(const RunConfig& config, Report& report);
void run_distances(const RunConfig& config, Report& report);

}  // namespace starbody

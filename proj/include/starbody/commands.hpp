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

namespace starbody {

struct CommandOptions {
  std::vector<std::string> specs;
  std::vector<int> ks;
  // 0 selects a per-command default.
  int grid = 0;
  int samples = 0;
  std::uint64_t seed = 7;
  std::filesystem::path out;
  // Input directory for the report command.
  std::filesystem::path run_dir;
  std::string suite = "all";
  double tol = 0.0;
};

struct CommandResult {
  // 0 success, 1 failed checks or numerical failure, 2 bad input.
  int exit_code = 0;
  std::string out;
  std::string err;
};

const std::vector<std::string>& command_names();

// Never throws; library errors become exit codes and messages on err.
CommandResult run_command(const std::string& name, const CommandOptions& options);

CommandResult cmd_body(const CommandOptions& options);
CommandResult cmd_moments(const CommandOptions& options);
CommandResult cmd_section(const CommandOptions& options);
CommandResult cmd_ikbody(const CommandOptions& options);
CommandResult cmd_bp_approx(const CommandOptions& options);
CommandResult cmd_distance(const CommandOptions& options);
CommandResult cmd_verify(const CommandOptions& options);
CommandResult cmd_report(const CommandOptions& options);

}  // namespace starbody

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

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "starbody/starbody.h"

namespace {

struct Flags {
  std::vector<std::string> specs;
  std::vector<int> ks;
  int grid = 0;
  int samples = 0;
  std::uint64_t seed = 7;
  std::string out;
  std::string suite = "all";
  double tol = 0.0;
  std::string run_dir;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--spec", f.specs, "body spec file (JSON: type, dim, params, label); repeatable");
  cmd->add_option("--k", f.ks, "subspace dimension(s), comma separated")->delimiter(',');
  cmd->add_option("--grid", f.grid, "sphere grid resolution (0: default)")->check(CLI::NonNegativeNumber);
  cmd->add_option("--samples", f.samples, "sample count (0: default)")->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", f.seed, "RNG seed");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--tol", f.tol, "tolerance override for statistical rows")->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"starbody: intersection bodies, sections and approximation experiments"};
  app.require_subcommand(1);
  Flags f;
  const std::vector<std::pair<const char*, const char*>> commands = {
      {"body", "describe a body: volume, M_p table, isotropic constant"},
      {"moments", "M_p and E_p tables for one or more bodies"},
      {"section", "section volumes |K cap F^perp| over sampled subspaces"},
      {"ikbody", "numerical k-intersection body"},
      {"bp-approx", "generalized k-intersection body approximation and ovr curve"},
      {"distance", "radial, geometric and Banach-Mazur distances"},
      {"verify", "run verification suites and write report files"},
      {"report", "merge reports found under a run directory"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* cmd = app.add_subcommand(name, help);
    add_common(cmd, f);
    if (std::string(name) == "verify")
      cmd->add_option("--suite", f.suite, "identities, inequalities, ik, bp, distances or all");
    if (std::string(name) == "report") cmd->add_option("dir", f.run_dir, "run directory")->required();
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  nlohmann::json options;
  options["specs"] = f.specs;
  options["k"] = f.ks;
  options["grid"] = f.grid;
  options["samples"] = f.samples;
  options["seed"] = f.seed;
  options["suite"] = f.suite;
  options["tol"] = f.tol;
  if (!f.out.empty()) options["out"] = f.out;
  if (!f.run_dir.empty()) options["run_dir"] = f.run_dir;

  const std::string name = app.get_subcommands().front()->get_name();
  int code = 0;
  char* out = nullptr;
  char* err = nullptr;
  const sb_status status = sb_run_command(name.c_str(), options.dump().c_str(), &code, &out, &err);
  if (status != SB_OK) {
    std::fprintf(stderr, "error: %s\n", sb_last_error());
    return 2;
  }
  if (out) std::fputs(out, stdout);
  if (err) std::fputs(err, stderr);
  sb_string_free(out);
  sb_string_free(err);
  return code;
}

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

#include "starbody/starbody.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "json.hpp"
#include "starbody/body_spec.hpp"
#include "starbody/commands.hpp"
#include "starbody/distances.hpp"
#include "starbody/error.hpp"
#include "starbody/positions.hpp"
#include "starbody/quad.hpp"
#include "starbody/sections.hpp"

struct sb_body {
  starbody::BodySpec spec;
  starbody::StarBody body;
};

struct sb_grid {
  starbody::SphereGrid grid;
};

namespace {

thread_local std::string g_last_error;

sb_status to_status(starbody::ErrorCode code) {
  switch (code) {
    case starbody::ErrorCode::kInvalidArgument: return SB_INVALID_ARGUMENT;
    case starbody::ErrorCode::kPrecondition: return SB_PRECONDITION;
    case starbody::ErrorCode::kNumerical: return SB_NUMERICAL;
    case starbody::ErrorCode::kParse: return SB_PARSE;
    case starbody::ErrorCode::kIo: return SB_IO;
  }
  return SB_INTERNAL;
}

template <class F>
sb_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return SB_OK;
  } catch (const starbody::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SB_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SB_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) starbody::fail(starbody::ErrorCode::kInvalidArgument, std::string(what) + " is NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

sb_body* make_body(starbody::BodySpec spec) {
  starbody::StarBody body = starbody::make_star(spec);
  return new sb_body{std::move(spec), std::move(body)};
}

starbody::CommandOptions parse_options(const char* text) {
  starbody::CommandOptions o;
  if (!text || !*text) return o;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    starbody::fail(starbody::ErrorCode::kParse, std::string("options: ") + e.what());
  }
  if (!j.is_object()) starbody::fail(starbody::ErrorCode::kParse, "options: expected an object");
  try {
    if (j.contains("specs")) o.specs = j["specs"].get<std::vector<std::string>>();
    if (j.contains("k")) o.ks = j["k"].get<std::vector<int>>();
    o.grid = j.value("grid", o.grid);
    o.samples = j.value("samples", o.samples);
    o.seed = j.value("seed", o.seed);
    o.tol = j.value("tol", o.tol);
    o.suite = j.value("suite", o.suite);
    if (j.contains("out")) o.out = j["out"].get<std::string>();
    if (j.contains("run_dir")) o.run_dir = j["run_dir"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    starbody::fail(starbody::ErrorCode::kParse, std::string("options: ") + e.what());
  }
  return o;
}

}  // namespace

extern "C" {

const char* sb_version(void) { return "1.0.0"; }

const char* sb_last_error(void) { return g_last_error.c_str(); }

const char* sb_status_name(sb_status status) {
  switch (status) {
    case SB_OK: return "ok";
    case SB_INVALID_ARGUMENT: return "invalid_argument";
    case SB_PRECONDITION: return "precondition";
    case SB_NUMERICAL: return "numerical";
    case SB_PARSE: return "parse";
    case SB_IO: return "io";
    case SB_INTERNAL: return "internal";
  }
  return "unknown";
}

void sb_string_free(char* s) { std::free(s); }

sb_status sb_body_parse(const char* text, sb_body** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = make_body(starbody::parse_body_spec(text));
  });
}

sb_status sb_body_load(const char* path, sb_body** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = make_body(starbody::load_body_spec(path));
  });
}

void sb_body_free(sb_body* body) { delete body; }

int sb_body_dim(const sb_body* body) { return body ? body->spec.dim : 0; }

sb_status sb_body_spec_json(const sb_body* body, char** out) {
  return guarded([&] {
    need(body, "body");
    need(out, "out");
    *out = dup_string(starbody::to_json(body->spec));
  });
}

sb_status sb_body_radial(const sb_body* body, const double* unit, double* out) {
  return guarded([&] {
    need(body, "body");
    need(unit, "unit");
    need(out, "out");
    const starbody::Vec u = Eigen::Map<const starbody::Vec>(unit, body->spec.dim);
    const double norm = u.norm();
    starbody::require(norm > 0.0 && std::isfinite(norm), starbody::ErrorCode::kInvalidArgument,
                      "direction must be nonzero and finite");
    *out = body->body.radial(u / norm);
  });
}

sb_status sb_grid_create(int n, int resolution, uint64_t seed, sb_grid** out) {
  return guarded([&] {
    need(out, "out");
    *out = new sb_grid{starbody::build_sphere_grid(n, resolution, seed)};
  });
}

void sb_grid_free(sb_grid* grid) { delete grid; }

size_t sb_grid_size(const sb_grid* grid) { return grid ? grid->grid.size() : 0; }

int sb_grid_dim(const sb_grid* grid) { return grid ? grid->grid.dim() : 0; }

sb_status sb_volume(const sb_body* body, const sb_grid* grid, double* out) {
  return guarded([&] {
    need(body, "body");
    need(grid, "grid");
    need(out, "out");
    *out = starbody::volume(body->body, grid->grid);
  });
}

sb_status sb_m_p(const sb_body* body, double p, const sb_grid* grid, double* out) {
  return guarded([&] {
    need(body, "body");
    need(grid, "grid");
    need(out, "out");
    *out = starbody::m_p(body->body, p, grid->grid);
  });
}

sb_status sb_e_p(const sb_body* body, double p, const sb_grid* grid, double* out) {
  return guarded([&] {
    need(body, "body");
    need(grid, "grid");
    need(out, "out");
    *out = starbody::e_p(starbody::normalize_volume(body->body, grid->grid), p, grid->grid);
  });
}

sb_status sb_section_volume(const sb_body* body, int k, const double* frame, double* out) {
  return guarded([&] {
    need(body, "body");
    need(frame, "frame");
    need(out, "out");
    const int n = body->spec.dim;
    starbody::require(k >= 1 && k <= n, starbody::ErrorCode::kInvalidArgument,
                      "k must lie in [1, n]");
    const starbody::Mat m = Eigen::Map<const starbody::Mat>(frame, n, k);
    *out = starbody::section_volume(body->body, starbody::Subspace::spanned_by(m));
  });
}

sb_status sb_isotropic_constant(const sb_body* body, const sb_grid* grid, int samples,
                                uint64_t seed, double* value, double* stderr_out) {
  return guarded([&] {
    need(body, "body");
    need(grid, "grid");
    need(value, "value");
    const auto iso = starbody::isotropic_position(body->body, grid->grid, samples, seed);
    *value = iso.isotropic_constant;
    if (stderr_out) *stderr_out = iso.isotropic_constant_stderr;
  });
}

sb_status sb_ik_ball_radius(int n, int k, double radius, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = starbody::ik_ball(n, k, radius);
  });
}

sb_status sb_d_geometric(const sb_body* a, const sb_body* b, const sb_grid* grid, double* out) {
  return guarded([&] {
    need(a, "a");
    need(b, "b");
    need(grid, "grid");
    need(out, "out");
    *out = starbody::d_geometric(a->body, b->body, grid->grid);
  });
}

sb_status sb_d_bm_upper(const sb_body* a, const sb_body* b, const sb_grid* grid, int restarts,
                        uint64_t seed, double* out) {
  return guarded([&] {
    need(a, "a");
    need(b, "b");
    need(grid, "grid");
    need(out, "out");
    starbody::BMOptions opts;
    if (restarts > 0) opts.restarts = restarts;
    opts.seed = seed;
    *out = starbody::d_bm_upper(a->body, b->body, grid->grid, opts).verified;
  });
}

sb_status sb_run_command(const char* name, const char* options, int* exit_code, char** out_text,
                         char** err_text) {
  if (out_text) *out_text = nullptr;
  if (err_text) *err_text = nullptr;
  return guarded([&] {
    need(name, "name");
    need(exit_code, "exit_code");
    starbody::CommandResult res;
    try {
      res = starbody::run_command(name, parse_options(options));
    } catch (const starbody::Error& e) {
      res = {2, {}, std::string("error: ") + e.what() + "\n"};
    }
    *exit_code = res.exit_code;
    if (out_text) *out_text = dup_string(res.out);
    if (err_text) *err_text = dup_string(res.err);
  });
}

}  // extern "C"

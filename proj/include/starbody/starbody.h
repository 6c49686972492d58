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

#ifndef STARBODY_STARBODY_H_
#define STARBODY_STARBODY_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define SB_API __declspec(dllexport)
#else
#define SB_API __attribute__((visibility("default")))
#endif

typedef enum sb_status {
  SB_OK = 0,
  SB_INVALID_ARGUMENT = 1,
  SB_PRECONDITION = 2,
  SB_NUMERICAL = 3,
  SB_PARSE = 4,
  SB_IO = 5,
  SB_INTERNAL = 6
} sb_status;

typedef struct sb_body sb_body;
typedef struct sb_grid sb_grid;

SB_API const char* sb_version(void);
/* Message of the last failed call on this thread; empty after success. */
SB_API const char* sb_last_error(void);
SB_API const char* sb_status_name(sb_status status);
SB_API void sb_string_free(char* s);

/* Bodies. text is a JSON body spec {type, dim, params, label}. */
SB_API sb_status sb_body_parse(const char* text, sb_body** out);
SB_API sb_status sb_body_load(const char* path, sb_body** out);
SB_API void sb_body_free(sb_body* body);
SB_API int sb_body_dim(const sb_body* body);
SB_API sb_status sb_body_spec_json(const sb_body* body, char** out);
/* unit has sb_body_dim entries and need not be normalized. */
SB_API sb_status sb_body_radial(const sb_body* body, const double* unit, double* out);

/* Grids. */
SB_API sb_status sb_grid_create(int n, int resolution, uint64_t seed, sb_grid** out);
SB_API void sb_grid_free(sb_grid* grid);
SB_API size_t sb_grid_size(const sb_grid* grid);
SB_API int sb_grid_dim(const sb_grid* grid);

/* Functionals. */
SB_API sb_status sb_volume(const sb_body* body, const sb_grid* grid, double* out);
SB_API sb_status sb_m_p(const sb_body* body, double p, const sb_grid* grid, double* out);
/* The body is first rescaled to volume 1 on the grid. */
SB_API sb_status sb_e_p(const sb_body* body, double p, const sb_grid* grid, double* out);
SB_API sb_status sb_section_volume(const sb_body* body, int k, const double* frame, double* out);
SB_API sb_status sb_isotropic_constant(const sb_body* body, const sb_grid* grid, int samples,
                                       uint64_t seed, double* value, double* stderr_out);
SB_API sb_status sb_ik_ball_radius(int n, int k, double radius, double* out);
SB_API sb_status sb_d_geometric(const sb_body* a, const sb_body* b, const sb_grid* grid,
                                double* out);
SB_API sb_status sb_d_bm_upper(const sb_body* a, const sb_body* b, const sb_grid* grid,
                               int restarts, uint64_t seed, double* out);

/* Commands: body, moments, section, ikbody, bp-approx, distance, verify,
 * report. options is a JSON object with optional fields specs (array of
 * paths), k (array of ints), grid, samples, seed, out, suite, tol, run_dir.
 * out_text and err_text receive malloc'd strings (free with sb_string_free);
 * either may be NULL. The return value reports API misuse only; the
 * command's own outcome is in exit_code. */
SB_API sb_status sb_run_command(const char* name, const char* options, int* exit_code,
                                char** out_text, char** err_text);

#ifdef __cplusplus
}
#endif

#endif  // STARBODY_STARBODY_H_

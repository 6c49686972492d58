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

#include "starbody/core.hpp"

namespace starbody::detail {

// min c^T x subject to A x = b, x >= 0, by a dense two-phase tableau simplex
// with Bland's rule. Throws Error(kNumerical) when infeasible.
double simplex_min(Mat a, Vec b, const Vec& c);

// Minkowski functional of the symmetric hull co{±v_i} (vertices as columns).
double symmetric_hull_gauge(const Mat& vertices, const Vec& x);

}  // namespace starbody::detail

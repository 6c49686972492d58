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
#include <random>

#include "starbody/core.hpp"

namespace starbody::testing {

inline Vec random_unit(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = g(rng);
  return v.normalized();
}

inline Mat random_rotation(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Mat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = g(rng);
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

// Volume of the unit ball from the gamma function, written out separately
// from the library.
inline double omega(int n) {
  return std::pow(std::acos(-1.0), n / 2.0) / std::tgamma(n / 2.0 + 1.0);
}

// |E cap F| for E = {x^T A^{-1} x <= 1} and F with orthonormal frame U.
inline double ellipsoid_section(const Mat& a, const Mat& u) {
  const Mat m = u.transpose() * a.inverse() * u;
  return omega(static_cast<int>(u.cols())) / std::sqrt(m.determinant());
}

}  // namespace starbody::testing

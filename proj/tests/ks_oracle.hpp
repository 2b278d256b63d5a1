// Copyright 2026 The Hearings Authors.
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


#ifndef HEARINGS_TESTS_KS_ORACLE_HPP_
#define HEARINGS_TESTS_KS_ORACLE_HPP_

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>

namespace hearings::testing {

// sup |F_a - F_b| by evaluating both empirical CDFs at every observed value
// with plain counting; quadratic and deliberately naive.
inline double brute_force_ks_d(std::span<const double> a, std::span<const double> b) {
  std::vector<double> points(a.begin(), a.end());
  points.insert(points.end(), b.begin(), b.end());
  double best = 0.0;
  for (double t : points) {
    const auto le_a = std::count_if(a.begin(), a.end(), [t](double v) { return v <= t; });
    const auto le_b = std::count_if(b.begin(), b.end(), [t](double v) { return v <= t; });
    const double diff = std::abs(static_cast<double>(le_a) / static_cast<double>(a.size()) -
                                 static_cast<double>(le_b) / static_cast<double>(b.size()));
    best = std::max(best, diff);
  }
  return best;
}

// 2 * sum_{k>=1} (-1)^(k-1) exp(-2 k^2 lambda^2) in 50-digit arithmetic,
// summed until the terms vanish at that precision, then clamped to [0, 1].
inline double reference_ks_series(double lambda) {
  using big = boost::multiprecision::cpp_dec_float_50;
  if (lambda <= 0.0) return 1.0;
  const big l(lambda);
  const big eps("1e-45");
  big sum = 0;
  for (long k = 1; k < 2000000; ++k) {
    const big kk(k);
    const big term = exp(-2 * kk * kk * l * l);
    sum += (k % 2 == 1) ? term : big(-term);
    if (term < eps) break;
  }
  const double p = static_cast<double>(2 * sum);
  return std::clamp(p, 0.0, 1.0);
}

inline double ks_lambda(double d, std::size_t na, std::size_t nb) {
  const double ne = static_cast<double>(na) * static_cast<double>(nb) /
                    static_cast<double>(na + nb);
  return (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
}

}  // namespace hearings::testing

#endif  // HEARINGS_TESTS_KS_ORACLE_HPP_

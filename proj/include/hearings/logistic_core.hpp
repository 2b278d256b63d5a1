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

#ifndef HEARINGS_LOGISTIC_CORE_HPP_
#define HEARINGS_LOGISTIC_CORE_HPP_

#include <cstdint>
#include <span>
#include <vector>

namespace hearings {

struct SparseRow {
  std::vector<std::uint32_t> index;
  std::vector<double> value;
};

struct LogisticHyper {
  double learning_rate = 0.5;
  int epochs = 200;
  double l2 = 1e-4;
  std::uint64_t seed = 0;
};

struct LogisticFit {
  std::vector<double> weights;
  double bias = 0.0;
  // Objective before training followed by one entry per completed epoch.
  std::vector<double> loss_history;
  std::size_t backtracks = 0;
};

double sigmoid(double z);

// Mean binary log-loss plus (l2 / 2) * |w|^2; the bias is not penalized.
// Labels are 0 or 1.
double logistic_objective(std::span<const SparseRow> rows, std::span<const double> y,
                          std::span<const double> w, double b, double l2);

void logistic_gradient(std::span<const SparseRow> rows, std::span<const double> y,
                       std::span<const double> w, double b, double l2,
                       std::vector<double>& grad_w, double& grad_b);

// Largest step for which plain gradient descent is guaranteed not to
// increase the objective: 1 / (max_i(|x_i|^2 + 1) / 4 + l2).
double stable_learning_rate(std::span<const SparseRow> rows, double l2);

// Full-batch gradient descent from zero weights. A step that would raise the
// objective is halved until it does not, so loss_history never increases.
LogisticFit fit_logistic(std::span<const SparseRow> rows, std::span<const double> y,
                         std::size_t n_features, const LogisticHyper& hyper);

}  // namespace hearings

#endif  // HEARINGS_LOGISTIC_CORE_HPP_

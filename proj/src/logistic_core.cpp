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

#include "hearings/logistic_core.hpp"

#include <algorithm>
#include <cmath>

namespace hearings {

namespace {

double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::fabs(z))); }

double margin(const SparseRow& row, std::span<const double> w, double b) {
  double z = b;
  for (std::size_t k = 0; k < row.index.size(); ++k) z += w[row.index[k]] * row.value[k];
  return z;
}

}  // namespace

double sigmoid(double z) {
  if (z >= 0) {
    const double e = std::exp(-z);
    return 1.0 / (1.0 + e);
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double logistic_objective(std::span<const SparseRow> rows, std::span<const double> y,
                          std::span<const double> w, double b, double l2) {
  double loss = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double z = margin(rows[i], w, b);
    loss += softplus(z) - y[i] * z;
  }
  loss /= static_cast<double>(std::max<std::size_t>(rows.size(), 1));
  double norm = 0.0;
  for (double v : w) norm += v * v;
  return loss + 0.5 * l2 * norm;
}

void logistic_gradient(std::span<const SparseRow> rows, std::span<const double> y,
                       std::span<const double> w, double b, double l2,
                       std::vector<double>& grad_w, double& grad_b) {
  grad_w.assign(w.size(), 0.0);
  grad_b = 0.0;
  const double inv_n = 1.0 / static_cast<double>(std::max<std::size_t>(rows.size(), 1));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double r = (sigmoid(margin(rows[i], w, b)) - y[i]) * inv_n;
    for (std::size_t k = 0; k < rows[i].index.size(); ++k) {
      grad_w[rows[i].index[k]] += r * rows[i].value[k];
    }
    grad_b += r;
  }
  for (std::size_t j = 0; j < w.size(); ++j) grad_w[j] += l2 * w[j];
}

double stable_learning_rate(std::span<const SparseRow> rows, double l2) {
  double max_norm = 0.0;
  for (const auto& row : rows) {
    double n = 1.0;  // bias column
    for (double v : row.value) n += v * v;
    max_norm = std::max(max_norm, n);
  }
  return 1.0 / (0.25 * max_norm + l2);
}

LogisticFit fit_logistic(std::span<const SparseRow> rows, std::span<const double> y,
                         std::size_t n_features, const LogisticHyper& hyper) {
  LogisticFit fit;
  fit.weights.assign(n_features, 0.0);
  double loss = logistic_objective(rows, y, fit.weights, fit.bias, hyper.l2);
  fit.loss_history.push_back(loss);
  double step = hyper.learning_rate;
  std::vector<double> gw;
  double gb = 0.0;
  std::vector<double> trial(n_features);
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    logistic_gradient(rows, y, fit.weights, fit.bias, hyper.l2, gw, gb);
    bool accepted = false;
    double trial_bias = 0.0;
    double trial_loss = loss;
    for (int attempt = 0; attempt < 60; ++attempt) {
      for (std::size_t j = 0; j < n_features; ++j) trial[j] = fit.weights[j] - step * gw[j];
      trial_bias = fit.bias - step * gb;
      trial_loss = logistic_objective(rows, y, trial, trial_bias, hyper.l2);
      if (trial_loss <= loss) {
        accepted = true;
        break;
      }
      step *= 0.5;
      ++fit.backtracks;
    }
    if (!accepted) {
      fit.loss_history.push_back(loss);
      continue;
    }
    fit.weights.swap(trial);
    trial.resize(n_features);
    fit.bias = trial_bias;
    loss = trial_loss;
    fit.loss_history.push_back(loss);
  }
  return fit;
}

}  // namespace hearings

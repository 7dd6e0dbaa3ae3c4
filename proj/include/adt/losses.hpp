// Copyright 2026 the ADT authors
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
#include <span>

#include "adt/errors.hpp"

namespace adt {

/// Focal loss parameters. alpha weights the loss, gamma down-weights easy
/// examples; gamma = 0, alpha = 1 reduces to plain cross-entropy.
struct FocalParams {
  double alpha = 0.25;
  double gamma = 2.0;
};

inline void validate(const FocalParams& p) {
  if (!(p.alpha > 0.0 && p.alpha <= 1.0)) throw ConfigError("focal: alpha must be in (0,1]");
  if (!(p.gamma >= 0.0)) throw ConfigError("focal: gamma must be >= 0");
}

/// FL(p_t) = -alpha * (1 - p_t)^gamma * ln(p_t), with p_t the probability of
/// the true class. Callers apply their own softmax/sigmoid.
inline double focal_loss(double p_t, const FocalParams& params) {
  validate(params);
  if (!(p_t > 0.0)) throw DomainError("focal: p_t must be > 0");
  if (p_t > 1.0) throw DomainError("focal: p_t must be <= 1");
  return -params.alpha * std::pow(1.0 - p_t, params.gamma) * std::log(p_t);
}

/// smooth_l1(x) = 0.5 x^2 / beta for |x| < beta, |x| - 0.5 beta otherwise.
inline double smooth_l1(double x, double beta = 1.0) {
  if (!(beta > 0.0)) throw DomainError("smooth_l1: beta must be > 0");
  const double ax = std::abs(x);
  return ax < beta ? 0.5 * x * x / beta : ax - 0.5 * beta;
}

/// Mean smooth-L1 between predicted densities and the ground-truth targets
/// produced by geometry::density. Targets must lie in [0,1].
inline double density_loss(std::span<const double> pred, std::span<const double> target,
                           double beta = 1.0) {
  if (pred.size() != target.size()) throw ShapeError("density_loss: length mismatch");
  if (pred.empty()) throw ShapeError("density_loss: empty input");
  double sum = 0.0;
  for (size_t i = 0; i < pred.size(); ++i) {
    if (!(target[i] >= 0.0 && target[i] <= 1.0)) {
      throw IntegrityError("density_loss: target outside [0,1]");
    }
    sum += smooth_l1(pred[i] - target[i], beta);
  }
  return sum / static_cast<double>(pred.size());
}

}  // namespace adt

// Copyright 2026 The bgt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bgt/qch.hpp"

#include <cmath>

namespace bgt {

namespace {

Behavior stable_softmax(const Vector& x) {
  Vector y = (x.array() - x.maxCoeff()).exp();
  return y / y.sum();
}

}  // namespace

Behavior qbr(const Game& g, const Behavior& opp, double precision) {
  if (opp.size() != g.cols()) {
    throw DimensionMismatch("opponent behavior does not match column count");
  }
  const Vector expected = g.u1 * opp;
  return stable_softmax(precision * expected);
}

Vector poisson_levels(double rate, int max_level) {
  if (rate <= 0.0) throw BadConstants("poisson rate must be positive");
  if (max_level < 0) throw BadConstants("negative truncation depth");
  // Work with log weights k log(rate) - log(k!); the common exp(-rate)
  // factor cancels in the normalization.
  Vector logw(max_level + 1);
  for (int k = 0; k <= max_level; ++k) {
    logw(k) = k * std::log(rate) - std::lgamma(static_cast<double>(k) + 1.0);
  }
  return stable_softmax(logw);
}

Vector histogram_levels(const Vector& logits) {
  if (logits.size() == 0) throw EmptyInput("histogram with no levels");
  return stable_softmax(logits);
}

}  // namespace bgt

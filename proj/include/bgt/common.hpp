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

#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace bgt {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// A mixed strategy over one player's actions: entries in [0,1], sum 1
// within kProbTol.
using Behavior = Eigen::VectorXd;

// Absolute tolerance for payoff ties (argmax sets, symmetry detection).
inline constexpr double kTieTol = 1e-9;

// Tolerance for probability-vector validation.
inline constexpr double kProbTol = 1e-9;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Payoff matrices whose pooled standard deviation is zero.
struct DegenerateGame : Error {
  using Error::Error;
};

// Action permutation is not a bijection on the expected index range.
struct BadPermutation : Error {
  using Error::Error;
};

// Observation with zero total count.
struct EmptyObservation : Error {
  using Error::Error;
};

// Operands whose dimensions do not line up (game vs. behavior, counts
// vs. actions, matrix vs. matrix).
struct DimensionMismatch : Error {
  using Error::Error;
};

// Graph node built from inputs of incompatible shapes.
struct ShapeMismatch : Error {
  using Error::Error;
};

// backward() called on a node that is not 1x1.
struct NotScalarRoot : Error {
  using Error::Error;
};

// Training objective became NaN or infinite.
struct NonFiniteLoss : Error {
  using Error::Error;
};

// A dataset split that is required but contains no observations.
struct EmptySplit : Error {
  using Error::Error;
};

// Statistic requested over an empty sample.
struct EmptyInput : Error {
  using Error::Error;
};

// Learned potential with both coefficients exactly zero.
struct ZeroCoefficients : Error {
  using Error::Error;
};

// Nonsensical generator constants (e.g. non-positive payoff cap).
struct BadConstants : Error {
  using Error::Error;
};

// Malformed input file or records.
struct ParseError : Error {
  using Error::Error;
};

inline bool is_valid_behavior(const Behavior& b, double tol = kProbTol) {
  if (b.size() == 0) return false;
  if ((b.array() < -tol).any() || (b.array() > 1.0 + tol).any()) return false;
  return std::abs(b.sum() - 1.0) <= tol * static_cast<double>(b.size());
}

}  // namespace bgt

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

#include <string>
#include <vector>

#include "bgt/common.hpp"
#include "bgt/game.hpp"

namespace bgt {

// Parameter-free starting-point rules. Each returns a row-player mixed
// strategy that is uniform over the rule's selected action set; payoff
// comparisons treat values within kTieTol of the optimum as tied.
enum class Heuristic {
  kUniform,
  kMaxmax,
  kMaxmin,
  kMinimaxRegret,
  kMaxSymmetric,
  kMaxmaxFairness,
  kMaxmaxWelfare,
};

std::string to_string(Heuristic h);
Heuristic heuristic_from_string(const std::string& name);
const std::vector<Heuristic>& all_heuristics();

// Uniform over all rows.
Behavior uniform_behavior(Eigen::Index n);

// Rows whose best own payoff attains the global best own payoff.
Behavior maxmax(const Game& g);

// Rows whose worst own payoff is as large as possible.
Behavior maxmin(const Game& g);

// Rows minimizing the worst-case regret max_j [max_i' u1(i',j) - u1(i,j)].
Behavior minimax_regret(const Game& g);

// For symmetric games (square, u1 == u2^T within kTieTol): rows with the
// best diagonal payoff. Falls back to uniform on non-symmetric games.
Behavior max_symmetric(const Game& g);

// Rows containing a cell with the smallest payoff difference |u1 - u2|.
Behavior maxmax_fairness(const Game& g);

// Rows containing a cell with the largest payoff sum u1 + u2.
Behavior maxmax_welfare(const Game& g);

Behavior apply_heuristic(Heuristic h, const Game& g);

}  // namespace bgt

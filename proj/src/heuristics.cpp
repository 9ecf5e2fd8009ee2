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

#include "bgt/heuristics.hpp"

namespace bgt {

namespace {

// Uniform over { i : score(i) >= max score - kTieTol }.
Behavior spread_over_best(const Vector& score) {
  const double best = score.maxCoeff();
  Behavior out = (score.array() >= best - kTieTol).cast<double>();
  return out / out.sum();
}

}  // namespace

std::string to_string(Heuristic h) {
  switch (h) {
    case Heuristic::kUniform: return "uniform";
    case Heuristic::kMaxmax: return "maxmax";
    case Heuristic::kMaxmin: return "maxmin";
    case Heuristic::kMinimaxRegret: return "minimax_regret";
    case Heuristic::kMaxSymmetric: return "max_symmetric";
    case Heuristic::kMaxmaxFairness: return "maxmax_fairness";
    case Heuristic::kMaxmaxWelfare: return "maxmax_welfare";
  }
  throw Error("unreachable heuristic");
}

Heuristic heuristic_from_string(const std::string& name) {
  for (Heuristic h : all_heuristics()) {
    if (to_string(h) == name) return h;
  }
  throw ParseError("unknown heuristic '" + name + "'");
}

const std::vector<Heuristic>& all_heuristics() {
  static const std::vector<Heuristic> kAll = {
      Heuristic::kUniform,        Heuristic::kMaxmax,
      Heuristic::kMaxmin,         Heuristic::kMinimaxRegret,
      Heuristic::kMaxSymmetric,   Heuristic::kMaxmaxFairness,
      Heuristic::kMaxmaxWelfare,
  };
  return kAll;
}

Behavior uniform_behavior(Eigen::Index n) {
  return Behavior::Constant(n, 1.0 / static_cast<double>(n));
}

Behavior maxmax(const Game& g) {
  return spread_over_best(g.u1.rowwise().maxCoeff());
}

Behavior maxmin(const Game& g) {
  return spread_over_best(g.u1.rowwise().minCoeff());
}

Behavior minimax_regret(const Game& g) {
  // Regret of (i,j) is the payoff left on the table relative to the best
  // reply to column j.
  Matrix regret = g.u1.colwise().maxCoeff().replicate(g.rows(), 1) - g.u1;
  return spread_over_best(-regret.rowwise().maxCoeff());
}

Behavior max_symmetric(const Game& g) {
  const bool symmetric =
      g.rows() == g.cols() &&
      (g.u1 - g.u2.transpose()).cwiseAbs().maxCoeff() <= kTieTol;
  if (!symmetric) return uniform_behavior(g.rows());
  return spread_over_best(g.u1.diagonal());
}

Behavior maxmax_fairness(const Game& g) {
  Matrix diff = (g.u1 - g.u2).cwiseAbs();
  return spread_over_best(-diff.rowwise().minCoeff());
}

Behavior maxmax_welfare(const Game& g) {
  return spread_over_best((g.u1 + g.u2).rowwise().maxCoeff());
}

Behavior apply_heuristic(Heuristic h, const Game& g) {
  switch (h) {
    case Heuristic::kUniform: return uniform_behavior(g.rows());
    case Heuristic::kMaxmax: return maxmax(g);
    case Heuristic::kMaxmin: return maxmin(g);
    case Heuristic::kMinimaxRegret: return minimax_regret(g);
    case Heuristic::kMaxSymmetric: return max_symmetric(g);
    case Heuristic::kMaxmaxFairness: return maxmax_fairness(g);
    case Heuristic::kMaxmaxWelfare: return maxmax_welfare(g);
  }
  throw Error("unreachable heuristic");
}

}  // namespace bgt

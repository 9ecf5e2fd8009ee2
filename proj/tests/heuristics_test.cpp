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

#include <doctest.h>

#include <random>
#include <vector>

#include "bgt/common.hpp"
#include "bgt/game.hpp"

namespace bgt {
namespace {

// Reference implementations, written against the documented contracts
// only: compute a per-row score with plain loops, select every row
// within kTieTol of the optimum, spread mass uniformly.
Behavior rows_to_behavior(const std::vector<bool>& selected) {
  int count = 0;
  for (bool s : selected) count += s ? 1 : 0;
  Behavior b = Behavior::Zero(selected.size());
  for (std::size_t i = 0; i < selected.size(); ++i) {
    if (selected[i]) b(i) = 1.0 / count;
  }
  return b;
}

Behavior pick_max(const std::vector<double>& score) {
  double best = score[0];
  for (double s : score) best = std::max(best, s);
  std::vector<bool> sel(score.size());
  for (std::size_t i = 0; i < score.size(); ++i) {
    sel[i] = score[i] >= best - kTieTol;
  }
  return rows_to_behavior(sel);
}

Behavior pick_min(const std::vector<double>& score) {
  std::vector<double> neg;
  for (double s : score) neg.push_back(-s);
  return pick_max(neg);
}

Behavior oracle_maxmax(const Game& g) {
  std::vector<double> best_own(g.rows());
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    double m = g.u1(i, 0);
    for (Eigen::Index j = 1; j < g.cols(); ++j) m = std::max(m, g.u1(i, j));
    best_own[i] = m;
  }
  return pick_max(best_own);
}

Behavior oracle_maxmin(const Game& g) {
  std::vector<double> worst_own(g.rows());
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    double m = g.u1(i, 0);
    for (Eigen::Index j = 1; j < g.cols(); ++j) m = std::min(m, g.u1(i, j));
    worst_own[i] = m;
  }
  return pick_max(worst_own);
}

Behavior oracle_minimax_regret(const Game& g) {
  std::vector<double> worst_regret(g.rows(), 0.0);
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    double worst = -1.0;
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      double col_best = g.u1(0, j);
      for (Eigen::Index k = 1; k < g.rows(); ++k) {
        col_best = std::max(col_best, g.u1(k, j));
      }
      worst = std::max(worst, col_best - g.u1(i, j));
    }
    worst_regret[i] = worst;
  }
  return pick_min(worst_regret);
}

Behavior oracle_max_symmetric(const Game& g) {
  if (g.rows() != g.cols()) return uniform_behavior(g.rows());
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      if (std::abs(g.u1(i, j) - g.u2(j, i)) > kTieTol) {
        return uniform_behavior(g.rows());
      }
    }
  }
  std::vector<double> diag(g.rows());
  for (Eigen::Index i = 0; i < g.rows(); ++i) diag[i] = g.u1(i, i);
  return pick_max(diag);
}

Behavior oracle_maxmax_fairness(const Game& g) {
  std::vector<double> best_fair(g.rows());
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    double m = std::abs(g.u1(i, 0) - g.u2(i, 0));
    for (Eigen::Index j = 1; j < g.cols(); ++j) {
      m = std::min(m, std::abs(g.u1(i, j) - g.u2(i, j)));
    }
    best_fair[i] = m;
  }
  return pick_min(best_fair);
}

Behavior oracle_maxmax_welfare(const Game& g) {
  std::vector<double> best_welfare(g.rows());
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    double m = g.u1(i, 0) + g.u2(i, 0);
    for (Eigen::Index j = 1; j < g.cols(); ++j) {
      m = std::max(m, g.u1(i, j) + g.u2(i, j));
    }
    best_welfare[i] = m;
  }
  return pick_max(best_welfare);
}

Behavior oracle(Heuristic h, const Game& g) {
  switch (h) {
    case Heuristic::kUniform: return uniform_behavior(g.rows());
    case Heuristic::kMaxmax: return oracle_maxmax(g);
    case Heuristic::kMaxmin: return oracle_maxmin(g);
    case Heuristic::kMinimaxRegret: return oracle_minimax_regret(g);
    case Heuristic::kMaxSymmetric: return oracle_max_symmetric(g);
    case Heuristic::kMaxmaxFairness: return oracle_maxmax_fairness(g);
    case Heuristic::kMaxmaxWelfare: return oracle_maxmax_welfare(g);
  }
  throw Error("unreachable heuristic");
}

Game random_game(int n, int m, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Matrix u1(n, m), u2(n, m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      u1(i, j) = nd(rng);
      u2(i, j) = nd(rng);
    }
  }
  return Game(std::move(u1), std::move(u2));
}

TEST_CASE("heuristic names round-trip") {
  for (Heuristic h : all_heuristics()) {
    CHECK(heuristic_from_string(to_string(h)) == h);
  }
  CHECK_THROWS_AS(heuristic_from_string("galaxy-brain"), Error);
  CHECK(all_heuristics().size() == 7);
}

TEST_CASE("hand-worked 3x3 example") {
  Matrix u1(3, 3), u2(3, 3);
  u1 << 10, 0, 0,
         3, 3, 3,
         0, 0, 9;
  u2 <<  0, 1, 2,
         8, 1, 0,
         0, 7, 9;
  Game g(u1, u2);

  // Row 0 holds the single best payoff.
  CHECK(maxmax(g)(0) == 1.0);
  // Row 1 guarantees 3; the others can hit 0.
  CHECK(maxmin(g)(1) == 1.0);
  // Worst regrets: row 0 -> 9, row 1 -> 7, row 2 -> 10.
  CHECK(minimax_regret(g)(1) == 1.0);
  // Not symmetric, so uniform.
  Behavior sym = max_symmetric(g);
  CHECK(sym(0) == doctest::Approx(1.0 / 3.0));
  // Smallest |u1-u2| per row: row 0 -> 1, row 1 -> 2, row 2 -> 0 at
  // the (9,9) cell.
  CHECK(maxmax_fairness(g)(2) == 1.0);
  // Best sums: row 0 -> 10, row 1 -> 11, row 2 -> 18.
  CHECK(maxmax_welfare(g)(2) == 1.0);
}

TEST_CASE("symmetric game selects the best diagonal") {
  Matrix u1(2, 2), u2(2, 2);
  u1 << 3, 0,
        5, 1;
  u2 = u1.transpose();
  Game g(u1, u2);
  Behavior b = max_symmetric(g);
  CHECK(b(0) == 1.0);
  CHECK(b(1) == 0.0);
}

TEST_CASE("ties split mass uniformly") {
  Matrix u1(3, 2), u2(3, 2);
  u1 << 5, 0,
        5, 1,
        2, 2;
  u2.setZero();
  Game g(u1, u2);
  Behavior b = maxmax(g);
  CHECK(b(0) == doctest::Approx(0.5));
  CHECK(b(1) == doctest::Approx(0.5));
  CHECK(b(2) == 0.0);
}

TEST_CASE("every heuristic matches the reference on random games") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> size(1, 5);
  for (int t = 0; t < 300; ++t) {
    Game g = random_game(size(rng), size(rng), rng);
    for (Heuristic h : all_heuristics()) {
      Behavior got = apply_heuristic(h, g);
      Behavior want = oracle(h, g);
      REQUIRE(got.size() == want.size());
      CHECK((got - want).cwiseAbs().maxCoeff() == 0.0);
      CHECK(is_valid_behavior(got));
    }
  }
}

TEST_CASE("heuristics matched on symmetric random games too") {
  // Symmetric games exercise the max_symmetric fast path; the payoff
  // standardization used at ingestion preserves symmetry.
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> size(2, 5);
  for (int t = 0; t < 100; ++t) {
    int n = size(rng);
    Game raw = random_game(n, n, rng);
    Game g(raw.u1, raw.u1.transpose());
    Game s = standardize(g);
    for (Heuristic h : all_heuristics()) {
      Behavior got = apply_heuristic(h, s);
      Behavior want = oracle(h, s);
      CHECK((got - want).cwiseAbs().maxCoeff() == 0.0);
    }
    Behavior sym = max_symmetric(s);
    CHECK(sym.maxCoeff() == 1.0);  // generic diagonal has a unique best
  }
}

}  // namespace
}  // namespace bgt

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

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bgt/common.hpp"

namespace bgt {

// Two-player normal-form game. u1 and u2 are both n x m: rows index the
// row player's actions, columns the column player's actions, and u2(i,j)
// is the column player's payoff in cell (i,j). Every model in this
// library predicts behavior for the row player; to ask about the column
// player, transpose the game first (transpose_for_column).
struct Game {
  Matrix u1;
  Matrix u2;

  Game() = default;
  Game(Matrix a, Matrix b);

  Eigen::Index rows() const { return u1.rows(); }
  Eigen::Index cols() const { return u1.cols(); }
};

// Swaps the players' seats: the column player of g becomes the row
// player of the result. Involution: applying it twice returns g.
Game transpose_for_column(const Game& g);

// Centers and scales both payoff matrices jointly so that the pooled
// 2nm entries have mean 0 and population standard deviation 1.
// Throws DegenerateGame when every entry is equal. Idempotent up to
// floating-point roundoff.
Game standardize(const Game& g);

// Relabels actions: row i of the result is row perm_rows[i] of g, and
// likewise for columns. Both permutations must be bijections; throws
// BadPermutation otherwise.
Game permute(const Game& g, const std::vector<int>& perm_rows,
             const std::vector<int>& perm_cols);

// One aggregated record of play: how often each row action was chosen
// by subjects seated as the row player of `game`. Records that observed
// the column seat are transposed into this form at ingestion, so counts
// always has game.rows() entries.
struct Observation {
  std::string game_id;
  std::string source;
  Game game;
  Eigen::VectorXi counts;
};

// Frequencies counts / sum(counts). Throws EmptyObservation when the
// total count is zero and DimensionMismatch when counts does not have
// one entry per row action.
Behavior empirical_distribution(const Observation& obs);

enum class Split { kTrain, kVal, kTest };

std::string to_string(Split s);
Split split_from_string(const std::string& s);

// A collection of observations plus a train/val/test label per game.
// Splits partition games, never observations: all observations sharing
// a game_id carry the game's label.
struct Dataset {
  std::vector<Observation> observations;
  std::map<std::string, Split> splits;

  // Deterministically shuffles the distinct game_ids with `seed` and
  // assigns the first fractions[0] of games to train, the next
  // fractions[1] to val and the rest to test. Each split receives at
  // least one game when there are three or more games.
  void assign_splits(std::uint64_t seed,
                     const std::array<double, 3>& fractions = {0.6, 0.2, 0.2});

  Split split_of(const std::string& game_id) const;
  std::vector<const Observation*> split_observations(Split s) const;
  std::size_t total_count(Split s) const;
};

}  // namespace bgt

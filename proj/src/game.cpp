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

#include "bgt/game.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace bgt {

Game::Game(Matrix a, Matrix b) : u1(std::move(a)), u2(std::move(b)) {
  if (u1.rows() != u2.rows() || u1.cols() != u2.cols()) {
    throw DimensionMismatch("payoff matrices differ in shape");
  }
  if (u1.rows() < 1 || u1.cols() < 1) {
    throw DimensionMismatch("game must have at least one action per player");
  }
  if (!u1.allFinite() || !u2.allFinite()) {
    throw Error("payoff matrices must be finite");
  }
}

Game transpose_for_column(const Game& g) {
  // The column player's own payoffs become u1 of the flipped game.
  return Game(g.u2.transpose(), g.u1.transpose());
}

Game standardize(const Game& g) {
  const double n = static_cast<double>(2 * g.u1.size());
  const double mean = (g.u1.sum() + g.u2.sum()) / n;
  const double ss = (g.u1.array() - mean).square().sum() +
                    (g.u2.array() - mean).square().sum();
  const double sd = std::sqrt(ss / n);
  if (sd == 0.0) {
    throw DegenerateGame("all payoff entries are equal");
  }
  return Game((g.u1.array() - mean) / sd, (g.u2.array() - mean) / sd);
}

namespace {

void check_permutation(const std::vector<int>& perm, Eigen::Index size,
                       const char* which) {
  if (static_cast<Eigen::Index>(perm.size()) != size) {
    throw BadPermutation(std::string(which) + " permutation has wrong length");
  }
  std::vector<bool> seen(perm.size(), false);
  for (int p : perm) {
    if (p < 0 || p >= static_cast<int>(perm.size()) || seen[p]) {
      throw BadPermutation(std::string(which) + " permutation is not a bijection");
    }
    seen[p] = true;
  }
}

}  // namespace

Game permute(const Game& g, const std::vector<int>& perm_rows,
             const std::vector<int>& perm_cols) {
  check_permutation(perm_rows, g.rows(), "row");
  check_permutation(perm_cols, g.cols(), "column");
  Matrix a(g.rows(), g.cols());
  Matrix b(g.rows(), g.cols());
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      a(i, j) = g.u1(perm_rows[i], perm_cols[j]);
      b(i, j) = g.u2(perm_rows[i], perm_cols[j]);
    }
  }
  return Game(std::move(a), std::move(b));
}

Behavior empirical_distribution(const Observation& obs) {
  if (obs.counts.size() != obs.game.rows()) {
    throw DimensionMismatch("observation '" + obs.game_id +
                            "': counts do not match the action set");
  }
  if ((obs.counts.array() < 0).any()) {
    throw Error("observation '" + obs.game_id + "': negative count");
  }
  const long total = obs.counts.sum();
  if (total == 0) {
    throw EmptyObservation("observation '" + obs.game_id + "' has no plays");
  }
  return obs.counts.cast<double>() / static_cast<double>(total);
}

std::string to_string(Split s) {
  switch (s) {
    case Split::kTrain: return "train";
    case Split::kVal: return "val";
    case Split::kTest: return "test";
  }
  throw Error("unreachable split");
}

Split split_from_string(const std::string& s) {
  if (s == "train") return Split::kTrain;
  if (s == "val") return Split::kVal;
  if (s == "test") return Split::kTest;
  throw ParseError("unknown split label '" + s + "'");
}

void Dataset::assign_splits(std::uint64_t seed,
                            const std::array<double, 3>& fractions) {
  std::set<std::string> ids;
  for (const auto& obs : observations) ids.insert(obs.game_id);
  std::vector<std::string> order(ids.begin(), ids.end());
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  const auto n = order.size();
  auto n_train = static_cast<std::size_t>(std::llround(fractions[0] * n));
  auto n_val = static_cast<std::size_t>(std::llround(fractions[1] * n));
  // With three or more games every split gets at least one.
  if (n >= 3) {
    n_train = std::clamp<std::size_t>(n_train, 1, n - 2);
    n_val = std::clamp<std::size_t>(n_val, 1, n - n_train - 1);
  } else {
    n_train = std::min(n_train, n);
    n_val = std::min(n_val, n - n_train);
  }

  splits.clear();
  for (std::size_t i = 0; i < n; ++i) {
    Split s = i < n_train            ? Split::kTrain
              : i < n_train + n_val ? Split::kVal
                                    : Split::kTest;
    splits[order[i]] = s;
  }
}

Split Dataset::split_of(const std::string& game_id) const {
  auto it = splits.find(game_id);
  if (it == splits.end()) {
    throw Error("game '" + game_id + "' has no split label");
  }
  return it->second;
}

std::vector<const Observation*> Dataset::split_observations(Split s) const {
  std::vector<const Observation*> out;
  for (const auto& obs : observations) {
    if (split_of(obs.game_id) == s) out.push_back(&obs);
  }
  return out;
}

std::size_t Dataset::total_count(Split s) const {
  std::size_t total = 0;
  for (const auto* obs : split_observations(s)) {
    total += static_cast<std::size_t>(obs->counts.sum());
  }
  return total;
}

}  // namespace bgt

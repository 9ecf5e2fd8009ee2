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

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bgt/autodiff.hpp"
#include "bgt/common.hpp"
#include "bgt/enet.hpp"
#include "bgt/game.hpp"
#include "bgt/gamenet.hpp"
#include "bgt/heuristics.hpp"
#include "bgt/qch.hpp"

namespace bgt {

enum class Level0Kind { kUniform, kHeuristic, kGameNet, kENet };
enum class PotentialsKind { kLearned, kFixed4, kOwnOnly };
enum class StrategicKind { kNone, kQchPoisson, kQchHist };

struct Level0Spec {
  Level0Kind kind = Level0Kind::kUniform;
  Heuristic heuristic = Heuristic::kUniform;  // kHeuristic only
  std::vector<int> widths = {50};             // kGameNet / kENet responses
  PotentialsKind potentials = PotentialsKind::kLearned;  // kENet only
  int potential_count = 1;                    // kENet learned only
};

struct StrategicSpec {
  StrategicKind kind = StrategicKind::kNone;
  // Deepest iterated level; level weights cover 0..max_level.
  int max_level = 4;
};

// A behavioral model: a starting-point rule plus, optionally, an
// iterated quantal-response layer on top of it. Both players are
// assumed to draw their level from the same distribution and share the
// starting rule, so one spec covers both seats.
struct ModelSpec {
  Level0Spec level0;
  StrategicSpec strategic;
};

std::string model_name(const ModelSpec& spec);
ENetConfig enet_config(const Level0Spec& level0);

// Draws every trainable tensor for the spec. Order of draws is fixed:
// level-0 parameters first (layer by layer), then the strategic
// parameters. Precision starts log-uniform on [0.03, 0.3], the level
// rate uniform on [0.5, 1.5] (stored as logs), histogram logits
// standard normal.
ParameterSet init_parameters(const ModelSpec& spec, std::mt19937_64& rng);

struct BuildOptions {
  bool training = false;
  double dropout = 0.0;
  std::mt19937_64* rng = nullptr;
};

// Handles into a prediction graph for one game, row player's seat.
struct ModelGraph {
  NodeId prediction = -1;
  // Populated for strategic models: per-level behaviors for the row
  // player and, in the transposed game, the column player.
  std::vector<NodeId> row_levels;
  std::vector<NodeId> col_levels;
  NodeId level_dist = -1;
};

ModelGraph build_model(Tape& tape, const ModelSpec& spec, const Game& g,
                       const BuildOptions& opts);

// Evaluation-mode prediction for the row player of g.
Behavior predict(const ModelSpec& spec, const ParameterSet& params,
                 const Game& g);

// Per-level behaviors and the level weights, evaluation mode.
struct LevelProfile {
  std::vector<Behavior> row;
  std::vector<Behavior> col;
  Vector dist;
};
LevelProfile qch_levels(const ModelSpec& spec, const ParameterSet& params,
                        const Game& g);

// The level weights implied by the parameters (exp of the stored log
// rate for the Poisson family, softmax of the logits otherwise). A
// model without a strategic layer sits entirely at level 0.
Vector level_distribution(const ModelSpec& spec, const ParameterSet& params);

}  // namespace bgt

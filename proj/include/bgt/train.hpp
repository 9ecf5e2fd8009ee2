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

#include <cstdint>
#include <vector>

#include "bgt/game.hpp"
#include "bgt/model.hpp"

namespace bgt {

// Squared L2 distance between a predicted and an observed action
// distribution.
double l2_loss(const Behavior& predicted, const Behavior& observed);

// Mean of per-observation l2_loss over one split, weighted by each
// observation's share of the split's play counts. Evaluation mode (no
// dropout, no penalty). Throws EmptySplit when the split has no
// observations.
double dataset_loss(const ModelSpec& spec, const ParameterSet& params,
                    const Dataset& data, Split split);

// Euclidean projection onto { x : x >= 0, sum x = 1 }.
Vector project_simplex(const Vector& v);

struct TrainConfig {
  std::uint64_t seed = 0;
  int epochs = 5000;
  double lr = 3e-4;
  double l1 = 0.0;       // applies to network weight matrices only
  double dropout = 0.0;  // hidden channel dropout probability
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
};

struct TrainResult {
  ModelSpec spec;
  TrainConfig config;
  ParameterSet params;
  // Objective (data term plus L1 penalty) at the start of each epoch.
  std::vector<double> train_trace;
  double train_loss = 0.0;  // evaluation-mode losses of the final params
  double val_loss = 0.0;
  double test_loss = 0.0;
  // Diagnostic only: final objective above the initial one.
  bool loss_increased = false;
};

// Full-batch Adam on the training split with the simplex parameters
// projected after every step. Deterministic given config.seed. Requires
// non-empty train and val splits; throws NonFiniteLoss as soon as the
// objective stops being finite. epochs == 0 returns the initial draw
// and its losses.
TrainResult train(const ModelSpec& spec, const Dataset& data,
                  const TrainConfig& config);

enum class SweepGrid { kENet, kGameNet };

struct SweepRun {
  double l1 = 0.0;
  double dropout = 0.0;
  int replicate = 0;
  std::uint64_t seed = 0;
  double val_loss = 0.0;
  double test_loss = 0.0;
};

struct SweepResult {
  TrainResult best;
  std::vector<SweepRun> runs;
  int best_index = -1;
};

// Fixed hyperparameter grids, replicated twice with fresh random
// initializations:
//   elementary: L1 in {1e-4, 1e-5, 1e-6} x dropout in {0, .01, .02, .05}
//   gamenet:    L1 in {1e-3, 1e-4, 1e-5} x dropout in {0, .01, .02, .05, .1}
// Winner is the lowest validation loss; ties keep the earliest run in
// grid order (L1 outer, dropout inner, replicate innermost). `jobs`
// runs trainings concurrently without changing any result.
SweepResult sweep(const ModelSpec& spec, const Dataset& data,
                  const TrainConfig& base, SweepGrid grid, int jobs = 1);

}  // namespace bgt

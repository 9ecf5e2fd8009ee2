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
#include <optional>
#include <string>

#include "bgt/game.hpp"
#include "bgt/model.hpp"

namespace bgt {

// kNormal / kUniform draw every payoff independently. kCyclic builds
// square games with rock-paper-scissors dominance and random win/loss
// stakes; successive reasoning levels then favor different actions,
// which is what makes level parameters recoverable from play counts.
enum class PayoffDist { kNormal, kUniform, kCyclic };

std::string to_string(PayoffDist d);
PayoffDist payoff_dist_from_string(const std::string& s);

// Recipe for a simulated dataset: a generating model with randomly
// drawn parameters plays the row seat of `games` random games, and each
// game records a multinomial sample of `plays` choices from the model's
// predicted distribution. Games are standardized at generation so the
// file round-trips through ingestion unchanged.
struct SynthConfig {
  ModelSpec model;
  int games = 50;
  int rows = 3;
  int cols = 3;
  int plays = 500;
  std::uint64_t seed = 0;
  PayoffDist payoffs = PayoffDist::kNormal;
  // Payoff spread before any standardization. The generating model sees
  // the same games the file records, so the precision that applies is
  // relative to this scale.
  double scale = 1.0;
  // When false the sampled payoffs are kept raw. Raw files re-enter the
  // ingestion pipeline standardized, which changes each game's scale;
  // fit raw data through the library directly instead.
  bool standardize = true;
  std::string source = "synth";
  // Overrides applied on top of the random parameter draw, so the
  // strategic ground truth can be pinned while the rest stays random.
  std::optional<double> lambda;  // quantal precision
  std::optional<double> tau;     // mean reasoning level
};

struct SynthOutput {
  Dataset data;
  ParameterSet teacher;  // the parameters that generated the counts
};

// Deterministic in config.seed, byte for byte once serialized. Throws
// Error when games, plays or the game shape is not positive.
SynthOutput synth_dataset(const SynthConfig& config);

}  // namespace bgt

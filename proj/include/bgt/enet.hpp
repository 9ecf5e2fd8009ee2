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

#include <random>
#include <string>
#include <vector>

#include "bgt/autodiff.hpp"
#include "bgt/common.hpp"
#include "bgt/game.hpp"
#include "bgt/gamenet.hpp"

namespace bgt {

// An elementary model scores each cell with a scalar potential of that
// cell's payoff pair alone, runs a feature stack over each potential
// matrix separately (one input channel), and convexly mixes the
// resulting distributions. By construction it can never compare
// payoffs across cells except through the potentials.
enum class PotentialKind {
  kLearned,   // (t0*own + t1*other) / ||t||, coefficients trained
  kFixedOwn,  // own
  kFixedOpp,  // other
  kFixedSum,  // own + other
  kFixedDiff, // own - other
};

std::string to_string(PotentialKind k);

// Applies the potential entrywise to (u1(i,j), u2(i,j)). `theta` is
// required for kLearned and must not be (0,0) (ZeroCoefficients).
Matrix potential_matrix(const Game& g, PotentialKind kind,
                        const Vector* theta = nullptr);

struct ENetConfig {
  std::vector<PotentialKind> potentials;
  FeatureLayerConfig response;  // same widths for every response function
};

// Four fixed potentials in the order own, opp, sum, diff. With the
// uniform mixing init this starts at weight 0.25 each and has no
// trainable potential parameters.
ENetConfig make_fixed_potential_config(const FeatureLayerConfig& response);

// Parameter names: l0.p<k>.theta (learned potentials only, unit-circle
// init), l0.h<k>.* (response stacks), l0.mix (simplex over potentials).
void init_enet_params(const ENetConfig& config, std::mt19937_64& rng,
                      ParameterSet* out);

NodeId build_enet(Tape& tape, const ENetConfig& config, const Game& g,
                  const FeatureBuildOptions& opts);

// Evaluation-mode forward.
Behavior enet_forward(const ENetConfig& config, const ParameterSet& params,
                      const Game& g);

}  // namespace bgt

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

namespace bgt {

// Stack of permutation-equivariant matrix layers. Layer l maps C_{l-1}
// channel matrices to widths[l-1] channels: each input channel is
// expanded into [identity, rowmax, colmax] pooling units (in that
// order), and every output channel is a relu of an affine combination
// of all pooled units. The output head turns the last layer's channels
// into action distributions (softmax of row sums) and mixes them with
// simplex-constrained weights. Nothing depends on the game size, so one
// parameter set serves any n x m game.
struct FeatureLayerConfig {
  std::vector<int> widths;
};

// [channels..., rowmax(channels)..., colmax(channels)...].
std::vector<Matrix> pool_channels(const std::vector<Matrix>& channels);

// Creates `prefix.w<l>` (widths[l-1] x 3*C_{l-1}), `prefix.b<l>`
// (widths[l-1] x 1) and `prefix.out` (simplex over the last width).
// Weights are Gaussian with std 1/sqrt(fan-in), biases zero, output
// mix uniform.
void init_feature_params(const std::string& prefix, int in_channels,
                         const FeatureLayerConfig& config,
                         std::mt19937_64& rng, ParameterSet* out);

struct FeatureBuildOptions {
  bool training = false;
  double dropout = 0.0;
  std::mt19937_64* rng = nullptr;  // required when training with dropout
};

// Appends the stack to the tape and returns the mixed output
// distribution node (rows(input) x 1). Dropout, when active, zeroes
// whole hidden channels after the relu and rescales survivors by
// 1/(1-p) so evaluation needs no correction.
NodeId build_feature_stack(Tape& tape, const std::string& prefix,
                           const FeatureLayerConfig& config,
                           const std::vector<NodeId>& input_channels,
                           const FeatureBuildOptions& opts);

// Evaluation-mode forward over the two payoff channels (U1, U2).
Behavior feature_forward(const FeatureLayerConfig& config,
                         const ParameterSet& params, const std::string& prefix,
                         const Game& g);

// Hand-set three-layer stack (widths 2,2,1) that reproduces, exactly,
// the quantal best response at precision 1 to the opponent's
// highest-payoff action, on games whose payoff entries are pairwise at
// least `cgap` apart and lie in (0, cmax] (or in [-cmax, cmax] for the
// shifted variant). Throws BadConstants for non-positive constants.
struct CertificateModel {
  FeatureLayerConfig config;
  ParameterSet params;
  std::string prefix = "l0.fl";
};
CertificateModel theorem31_certificate(double cmax, double cgap,
                                       bool negative_payoffs);

}  // namespace bgt

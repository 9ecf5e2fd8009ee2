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

#include "bgt/enet.hpp"

#include <cmath>
#include <numbers>

namespace bgt {

std::string to_string(PotentialKind k) {
  switch (k) {
    case PotentialKind::kLearned: return "learned";
    case PotentialKind::kFixedOwn: return "own";
    case PotentialKind::kFixedOpp: return "opp";
    case PotentialKind::kFixedSum: return "sum";
    case PotentialKind::kFixedDiff: return "diff";
  }
  throw Error("unreachable potential kind");
}

Matrix potential_matrix(const Game& g, PotentialKind kind,
                        const Vector* theta) {
  switch (kind) {
    case PotentialKind::kLearned: {
      if (theta == nullptr || theta->size() != 2) {
        throw DimensionMismatch("learned potential needs two coefficients");
      }
      const double norm = std::hypot((*theta)(0), (*theta)(1));
      if (norm == 0.0) {
        throw ZeroCoefficients("learned potential with theta == (0,0)");
      }
      return ((*theta)(0) * g.u1 + (*theta)(1) * g.u2) / norm;
    }
    case PotentialKind::kFixedOwn: return g.u1;
    case PotentialKind::kFixedOpp: return g.u2;
    case PotentialKind::kFixedSum: return g.u1 + g.u2;
    case PotentialKind::kFixedDiff: return g.u1 - g.u2;
  }
  throw Error("unreachable potential kind");
}

ENetConfig make_fixed_potential_config(const FeatureLayerConfig& response) {
  ENetConfig config;
  config.potentials = {PotentialKind::kFixedOwn, PotentialKind::kFixedOpp,
                       PotentialKind::kFixedSum, PotentialKind::kFixedDiff};
  config.response = response;
  return config;
}

void init_enet_params(const ENetConfig& config, std::mt19937_64& rng,
                      ParameterSet* out) {
  if (config.potentials.empty()) {
    throw BadConstants("elementary model needs at least one potential");
  }
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (std::size_t k = 0; k < config.potentials.size(); ++k) {
    const std::string idx = std::to_string(k);
    if (config.potentials[k] == PotentialKind::kLearned) {
      const double a = angle(rng);
      Param theta;
      theta.value.resize(2, 1);
      theta.value << std::cos(a), std::sin(a);
      (*out)["l0.p" + idx + ".theta"] = std::move(theta);
    }
    init_feature_params("l0.h" + idx, 1, config.response, rng, out);
  }
  Param mix;
  const auto p = static_cast<double>(config.potentials.size());
  mix.value = Matrix::Constant(config.potentials.size(), 1, 1.0 / p);
  mix.constraint = Constraint::kSimplex;
  (*out)["l0.mix"] = std::move(mix);
}

NodeId build_enet(Tape& tape, const ENetConfig& config, const Game& g,
                  const FeatureBuildOptions& opts) {
  std::vector<NodeId> responses;
  responses.reserve(config.potentials.size());
  for (std::size_t k = 0; k < config.potentials.size(); ++k) {
    const std::string idx = std::to_string(k);
    NodeId pot;
    if (config.potentials[k] == PotentialKind::kLearned) {
      pot = tape.linear_potential(tape.parameter("l0.p" + idx + ".theta"),
                                  g.u1, g.u2);
    } else {
      pot = tape.constant(potential_matrix(g, config.potentials[k]));
    }
    responses.push_back(
        build_feature_stack(tape, "l0.h" + idx, config.response, {pot}, opts));
  }
  return tape.mix(tape.parameter("l0.mix"), responses);
}

Behavior enet_forward(const ENetConfig& config, const ParameterSet& params,
                      const Game& g) {
  Tape tape(&params);
  const NodeId out = build_enet(tape, config, g, FeatureBuildOptions{});
  tape.forward();
  return tape.value(out);
}

}  // namespace bgt

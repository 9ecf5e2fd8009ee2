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

#include "bgt/model.hpp"

#include <cmath>

namespace bgt {

std::string model_name(const ModelSpec& spec) {
  std::string name;
  switch (spec.level0.kind) {
    case Level0Kind::kUniform:
      name = "uniform";
      break;
    case Level0Kind::kHeuristic:
      name = to_string(spec.level0.heuristic);
      break;
    case Level0Kind::kGameNet:
      name = "gamenet";
      break;
    case Level0Kind::kENet:
      switch (spec.level0.potentials) {
        case PotentialsKind::kLearned:
          name = "enet-learned" + std::to_string(spec.level0.potential_count);
          break;
        case PotentialsKind::kFixed4:
          name = "enet-fixed4";
          break;
        case PotentialsKind::kOwnOnly:
          name = "enet-own";
          break;
      }
      break;
  }
  switch (spec.strategic.kind) {
    case StrategicKind::kNone:
      break;
    case StrategicKind::kQchPoisson:
      name += "+qchp" + std::to_string(spec.strategic.max_level);
      break;
    case StrategicKind::kQchHist:
      name += "+qch" + std::to_string(spec.strategic.max_level);
      break;
  }
  return name;
}

ENetConfig enet_config(const Level0Spec& level0) {
  ENetConfig config;
  config.response.widths = level0.widths;
  switch (level0.potentials) {
    case PotentialsKind::kLearned:
      if (level0.potential_count < 1) {
        throw BadConstants("need at least one learned potential");
      }
      config.potentials.assign(level0.potential_count,
                               PotentialKind::kLearned);
      break;
    case PotentialsKind::kFixed4:
      config.potentials = {PotentialKind::kFixedOwn, PotentialKind::kFixedOpp,
                           PotentialKind::kFixedSum,
                           PotentialKind::kFixedDiff};
      break;
    case PotentialsKind::kOwnOnly:
      config.potentials = {PotentialKind::kFixedOwn};
      break;
  }
  return config;
}

ParameterSet init_parameters(const ModelSpec& spec, std::mt19937_64& rng) {
  ParameterSet params;
  switch (spec.level0.kind) {
    case Level0Kind::kUniform:
    case Level0Kind::kHeuristic:
      break;
    case Level0Kind::kGameNet: {
      FeatureLayerConfig config{spec.level0.widths};
      init_feature_params("l0.fl", 2, config, rng, &params);
      break;
    }
    case Level0Kind::kENet:
      init_enet_params(enet_config(spec.level0), rng, &params);
      break;
  }
  if (spec.strategic.kind != StrategicKind::kNone) {
    if (spec.strategic.max_level < 0) {
      throw BadConstants("negative truncation depth");
    }
    std::uniform_real_distribution<double> log_prec(std::log(0.03),
                                                    std::log(0.3));
    Param lambda;
    lambda.value = Matrix::Constant(1, 1, log_prec(rng));
    lambda.constraint = Constraint::kLogSpace;
    params["qch.log_lambda"] = std::move(lambda);

    if (spec.strategic.kind == StrategicKind::kQchPoisson) {
      std::uniform_real_distribution<double> rate(0.5, 1.5);
      Param log_rate;
      log_rate.value = Matrix::Constant(1, 1, std::log(rate(rng)));
      log_rate.constraint = Constraint::kLogSpace;
      params["qch.log_rate"] = std::move(log_rate);
    } else {
      std::normal_distribution<double> gauss(0.0, 1.0);
      Param logits;
      logits.value.resize(spec.strategic.max_level + 1, 1);
      for (Eigen::Index i = 0; i < logits.value.rows(); ++i) {
        logits.value(i, 0) = gauss(rng);
      }
      params["qch.logits"] = std::move(logits);
    }
  }
  return params;
}

namespace {

// Row player's starting behavior in g, as a graph node. Heuristics have
// no trainable parameters and enter as constants.
NodeId build_level0(Tape& tape, const Level0Spec& level0, const Game& g,
                    const BuildOptions& opts) {
  FeatureBuildOptions fopts{opts.training, opts.dropout, opts.rng};
  switch (level0.kind) {
    case Level0Kind::kUniform:
      return tape.constant(uniform_behavior(g.rows()));
    case Level0Kind::kHeuristic:
      return tape.constant(apply_heuristic(level0.heuristic, g));
    case Level0Kind::kGameNet: {
      FeatureLayerConfig config{level0.widths};
      const NodeId u1 = tape.constant(g.u1);
      const NodeId u2 = tape.constant(g.u2);
      return build_feature_stack(tape, "l0.fl", config, {u1, u2}, fopts);
    }
    case Level0Kind::kENet:
      return build_enet(tape, enet_config(level0), g, fopts);
  }
  throw Error("unreachable level0 kind");
}

// Level weights D(0..K) as a graph node.
NodeId build_level_dist(Tape& tape, const StrategicSpec& strategic) {
  const int k_max = strategic.max_level;
  if (strategic.kind == StrategicKind::kQchPoisson) {
    // log D(k) = k log(rate) - log(k!) + const; softmax drops the const.
    Vector ks(k_max + 1), lgam(k_max + 1);
    for (int k = 0; k <= k_max; ++k) {
      ks(k) = static_cast<double>(k);
      lgam(k) = std::lgamma(static_cast<double>(k) + 1.0);
    }
    const NodeId scaled =
        tape.mul_scalar(tape.constant(ks), tape.parameter("qch.log_rate"));
    return tape.softmax(tape.sub(scaled, tape.constant(lgam)));
  }
  return tape.softmax(tape.parameter("qch.logits"));
}

}  // namespace

ModelGraph build_model(Tape& tape, const ModelSpec& spec, const Game& g,
                       const BuildOptions& opts) {
  ModelGraph graph;
  if (spec.strategic.kind == StrategicKind::kNone) {
    graph.prediction = build_level0(tape, spec.level0, g, opts);
    return graph;
  }

  const Game flipped = transpose_for_column(g);
  graph.level_dist = build_level_dist(tape, spec.strategic);
  const NodeId precision = tape.exp(tape.parameter("qch.log_lambda"));
  const NodeId own_payoffs = tape.constant(g.u1);
  const NodeId opp_payoffs = tape.constant(flipped.u1);

  graph.row_levels.push_back(build_level0(tape, spec.level0, g, opts));
  graph.col_levels.push_back(build_level0(tape, spec.level0, flipped, opts));

  for (int k = 1; k <= spec.strategic.max_level; ++k) {
    // Level k best-responds to the level-weighted mixture of everything
    // below it, renormalized over levels 0..k-1.
    const NodeId opp_mix = tape.normalized_mix(graph.level_dist,
                                               graph.col_levels);
    const NodeId row_mix = tape.normalized_mix(graph.level_dist,
                                               graph.row_levels);
    graph.row_levels.push_back(tape.softmax(
        tape.mul_scalar(tape.matvec(own_payoffs, opp_mix), precision)));
    graph.col_levels.push_back(tape.softmax(
        tape.mul_scalar(tape.matvec(opp_payoffs, row_mix), precision)));
  }
  graph.prediction = tape.mix(graph.level_dist, graph.row_levels);
  return graph;
}

Behavior predict(const ModelSpec& spec, const ParameterSet& params,
                 const Game& g) {
  Tape tape(&params);
  const ModelGraph graph = build_model(tape, spec, g, BuildOptions{});
  tape.forward();
  return tape.value(graph.prediction);
}

LevelProfile qch_levels(const ModelSpec& spec, const ParameterSet& params,
                        const Game& g) {
  if (spec.strategic.kind == StrategicKind::kNone) {
    throw Error("level profile requires a strategic model");
  }
  Tape tape(&params);
  const ModelGraph graph = build_model(tape, spec, g, BuildOptions{});
  tape.forward();
  LevelProfile profile;
  for (NodeId id : graph.row_levels) profile.row.push_back(tape.value(id));
  for (NodeId id : graph.col_levels) profile.col.push_back(tape.value(id));
  profile.dist = tape.value(graph.level_dist);
  return profile;
}

Vector level_distribution(const ModelSpec& spec, const ParameterSet& params) {
  switch (spec.strategic.kind) {
    case StrategicKind::kNone:
      return Vector::Ones(1);
    case StrategicKind::kQchPoisson:
      return poisson_levels(std::exp(params.at("qch.log_rate").value(0, 0)),
                            spec.strategic.max_level);
    case StrategicKind::kQchHist:
      return histogram_levels(params.at("qch.logits").value.col(0));
  }
  throw Error("unreachable strategic kind");
}

}  // namespace bgt

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

#include "bgt/train.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <optional>

namespace bgt {

double l2_loss(const Behavior& predicted, const Behavior& observed) {
  if (predicted.size() != observed.size()) {
    throw DimensionMismatch("behavior lengths differ");
  }
  return (predicted - observed).squaredNorm();
}

double dataset_loss(const ModelSpec& spec, const ParameterSet& params,
                    const Dataset& data, Split split) {
  const auto observations = data.split_observations(split);
  if (observations.empty()) {
    throw EmptySplit("no observations in split '" + to_string(split) + "'");
  }
  double total_weight = 0.0;
  double loss = 0.0;
  for (const Observation* obs : observations) {
    const double w = static_cast<double>(obs->counts.sum());
    loss += w * l2_loss(predict(spec, params, obs->game),
                        empirical_distribution(*obs));
    total_weight += w;
  }
  return loss / total_weight;
}

Vector project_simplex(const Vector& v) {
  if (v.size() == 0) throw EmptyInput("projecting an empty vector");
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumulative = 0.0;
  double threshold = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumulative += u[j];
    const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (u[j] - candidate > 0.0) threshold = candidate;
  }
  return (v.array() - threshold).cwiseMax(0.0);
}

namespace {

// Training objective on the given observations: count-weighted mean of
// per-game squared errors plus the L1 penalty on weight matrices.
NodeId build_objective(Tape& tape, const ModelSpec& spec,
                       const std::vector<const Observation*>& observations,
                       const ParameterSet& params, const TrainConfig& config,
                       bool training, std::mt19937_64* rng) {
  BuildOptions opts;
  opts.training = training;
  opts.dropout = config.dropout;
  opts.rng = rng;

  double total_weight = 0.0;
  for (const Observation* obs : observations) {
    total_weight += static_cast<double>(obs->counts.sum());
  }
  std::vector<NodeId> pieces;
  std::vector<double> weights;
  for (const Observation* obs : observations) {
    const ModelGraph graph = build_model(tape, spec, obs->game, opts);
    const NodeId target = tape.constant(empirical_distribution(*obs));
    pieces.push_back(
        tape.sum(tape.square(tape.sub(graph.prediction, target))));
    weights.push_back(static_cast<double>(obs->counts.sum()) / total_weight);
  }
  if (config.l1 > 0.0) {
    for (const auto& [name, param] : params) {
      if (!param.l1_penalized) continue;
      pieces.push_back(tape.abs_sum(tape.parameter(name)));
      weights.push_back(config.l1);
    }
  }
  return tape.lincomb(pieces, weights);
}

struct AdamState {
  Matrix m;
  Matrix v;
};

}  // namespace

TrainResult train(const ModelSpec& spec, const Dataset& data,
                  const TrainConfig& config) {
  if (config.epochs < 0) throw BadConstants("negative epoch count");
  if (config.lr <= 0.0) throw BadConstants("learning rate must be positive");
  if (config.dropout < 0.0 || config.dropout >= 1.0) {
    throw BadConstants("dropout must lie in [0, 1)");
  }
  const auto train_obs = data.split_observations(Split::kTrain);
  if (train_obs.empty()) throw EmptySplit("empty training split");

  std::mt19937_64 rng(config.seed);
  TrainResult result;
  result.spec = spec;
  result.config = config;
  result.params = init_parameters(spec, rng);

  std::map<std::string, AdamState> adam;
  for (const auto& [name, param] : result.params) {
    adam[name] = {Matrix::Zero(param.value.rows(), param.value.cols()),
                  Matrix::Zero(param.value.rows(), param.value.cols())};
  }

  // With dropout off the graph never changes, so build it once and just
  // refresh parameter values each epoch. Dropout masks are baked into
  // the graph and force a rebuild.
  const bool rebuild = config.dropout > 0.0;
  std::optional<Tape> tape;
  NodeId objective = -1;
  if (!rebuild) {
    tape.emplace(&result.params);
    objective = build_objective(*tape, spec, train_obs, result.params, config,
                                /*training=*/true, nullptr);
  }

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    if (rebuild) {
      tape.emplace(&result.params);
      objective = build_objective(*tape, spec, train_obs, result.params,
                                  config, /*training=*/true, &rng);
    }
    tape->forward();
    const double loss = tape->value(objective)(0, 0);
    if (!std::isfinite(loss)) {
      throw NonFiniteLoss("objective is not finite at epoch " +
                          std::to_string(epoch));
    }
    result.train_trace.push_back(loss);
    tape->backward(objective);
    const GradientMap& grads = tape->gradients();

    const double t = static_cast<double>(epoch + 1);
    const double correct1 = 1.0 - std::pow(config.adam_beta1, t);
    const double correct2 = 1.0 - std::pow(config.adam_beta2, t);
    for (auto& [name, param] : result.params) {
      auto g = grads.find(name);
      if (g == grads.end()) continue;
      AdamState& state = adam[name];
      state.m = config.adam_beta1 * state.m +
                (1.0 - config.adam_beta1) * g->second;
      state.v = config.adam_beta2 * state.v +
                (1.0 - config.adam_beta2) *
                    g->second.array().square().matrix();
      param.value.array() -=
          config.lr * (state.m.array() / correct1) /
          ((state.v.array() / correct2).sqrt() + config.adam_eps);
      if (param.constraint == Constraint::kSimplex) {
        param.value.col(0) = project_simplex(param.value.col(0));
      }
      // Learned potential coefficients must stay away from the origin
      // where the normalization is undefined.
      if (name.size() > 6 && name.substr(name.size() - 6) == ".theta" &&
          param.value.cwiseAbs().maxCoeff() == 0.0) {
        param.value.array() += 1e-6;
      }
    }
  }

  result.train_loss = dataset_loss(spec, result.params, data, Split::kTrain);
  result.val_loss = dataset_loss(spec, result.params, data, Split::kVal);
  result.test_loss = dataset_loss(spec, result.params, data, Split::kTest);
  result.loss_increased =
      !result.train_trace.empty() &&
      result.train_trace.back() > result.train_trace.front();
  return result;
}

SweepResult sweep(const ModelSpec& spec, const Dataset& data,
                  const TrainConfig& base, SweepGrid grid, int jobs) {
  const std::vector<double> l1s = grid == SweepGrid::kENet
                                      ? std::vector<double>{1e-4, 1e-5, 1e-6}
                                      : std::vector<double>{1e-3, 1e-4, 1e-5};
  const std::vector<double> dropouts =
      grid == SweepGrid::kENet ? std::vector<double>{0.0, 0.01, 0.02, 0.05}
                               : std::vector<double>{0.0, 0.01, 0.02, 0.05, 0.1};
  constexpr int kReplicates = 2;

  std::vector<TrainConfig> configs;
  for (double l1 : l1s) {
    for (double dropout : dropouts) {
      for (int rep = 0; rep < kReplicates; ++rep) {
        TrainConfig c = base;
        c.l1 = l1;
        c.dropout = dropout;
        // Fresh initialization (in particular of the precision and
        // level parameters) for every run.
        c.seed = base.seed + configs.size();
        configs.push_back(c);
      }
    }
  }

  std::vector<TrainResult> results(configs.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < configs.size(); ++i) {
      results[i] = train(spec, data, configs[i]);
    }
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      for (std::size_t i = next++; i < configs.size(); i = next++) {
        results[i] = train(spec, data, configs[i]);
      }
    };
    std::vector<std::future<void>> futures;
    const int n = std::min<int>(jobs, static_cast<int>(configs.size()));
    futures.reserve(n);
    for (int j = 0; j < n; ++j) {
      futures.push_back(std::async(std::launch::async, worker));
    }
    for (auto& f : futures) f.get();
  }

  SweepResult out;
  for (std::size_t i = 0; i < results.size(); ++i) {
    SweepRun run;
    run.l1 = configs[i].l1;
    run.dropout = configs[i].dropout;
    run.replicate = static_cast<int>(i % kReplicates);
    run.seed = configs[i].seed;
    run.val_loss = results[i].val_loss;
    run.test_loss = results[i].test_loss;
    out.runs.push_back(run);
    if (out.best_index < 0 ||
        run.val_loss < out.runs[out.best_index].val_loss) {
      out.best_index = static_cast<int>(i);
    }
  }
  out.best = std::move(results[out.best_index]);
  return out;
}

}  // namespace bgt

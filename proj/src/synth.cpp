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

#include "bgt/synth.hpp"

#include <cmath>
#include <random>

namespace bgt {

std::string to_string(PayoffDist d) {
  switch (d) {
    case PayoffDist::kNormal:
      return "normal";
    case PayoffDist::kUniform:
      return "uniform";
    case PayoffDist::kCyclic:
      return "cyclic";
  }
  throw Error("unknown payoff distribution");
}

PayoffDist payoff_dist_from_string(const std::string& s) {
  if (s == "normal") return PayoffDist::kNormal;
  if (s == "uniform") return PayoffDist::kUniform;
  if (s == "cyclic") return PayoffDist::kCyclic;
  throw Error("unknown payoff distribution \"" + s + "\"");
}

namespace {

Matrix sample_payoffs(int rows, int cols, PayoffDist dist, double scale,
                      std::mt19937_64& rng) {
  Matrix m(rows, cols);
  if (dist == PayoffDist::kNormal) {
    std::normal_distribution<double> draw(0.0, scale);
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) {
        m(i, j) = draw(rng);
      }
    }
  } else {
    std::uniform_real_distribution<double> draw(0.0, scale);
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) {
        m(i, j) = draw(rng);
      }
    }
  }
  return m;
}

// Action i beats i-1 and loses to i+1 (indices mod n). Win and loss
// stakes are drawn per action and per player, so which action a given
// reasoning depth favors varies from game to game.
Game sample_cyclic(int n, double scale, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> stake(0.5, 1.5);
  std::normal_distribution<double> noise(0.0, 0.15);
  std::vector<double> row_win(n), row_loss(n), col_win(n), col_loss(n);
  for (int i = 0; i < n; ++i) {
    row_win[i] = stake(rng);
    row_loss[i] = stake(rng);
    col_win[i] = stake(rng);
    col_loss[i] = stake(rng);
  }
  Matrix u1(n, n), u2(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int d = ((i - j) % n + n) % n;
      double v1 = 0.0;
      if (d == 1) v1 = row_win[i];
      if (d == n - 1) v1 = -row_loss[i];
      const int e = ((j - i) % n + n) % n;
      double v2 = 0.0;
      if (e == 1) v2 = col_win[j];
      if (e == n - 1) v2 = -col_loss[j];
      u1(i, j) = scale * (v1 + noise(rng));
      u2(i, j) = scale * (v2 + noise(rng));
    }
  }
  return Game(std::move(u1), std::move(u2));
}

Eigen::VectorXi multinomial(const Behavior& p, int plays,
                            std::mt19937_64& rng) {
  Eigen::VectorXi counts = Eigen::VectorXi::Zero(p.size());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < plays; ++t) {
    const double u = unit(rng);
    double cum = 0.0;
    Eigen::Index pick = p.size() - 1;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      cum += p(i);
      if (u < cum) {
        pick = i;
        break;
      }
    }
    ++counts(pick);
  }
  return counts;
}

}  // namespace

SynthOutput synth_dataset(const SynthConfig& config) {
  if (config.games < 1) {
    throw Error("synth: games must be positive");
  }
  if (config.plays < 1) {
    throw Error("synth: plays must be positive");
  }
  if (config.rows < 1 || config.cols < 1) {
    throw Error("synth: game shape must be positive");
  }
  if (config.scale <= 0.0) {
    throw Error("synth: payoff scale must be positive");
  }

  std::mt19937_64 rng(config.seed);
  ParameterSet teacher = init_parameters(config.model, rng);
  if (config.lambda) {
    if (*config.lambda <= 0.0) {
      throw Error("synth: lambda must be positive");
    }
    if (auto it = teacher.find("qch.log_lambda"); it != teacher.end()) {
      it->second.value(0, 0) = std::log(*config.lambda);
    }
  }
  if (config.tau) {
    if (*config.tau <= 0.0) {
      throw Error("synth: tau must be positive");
    }
    if (auto it = teacher.find("qch.log_rate"); it != teacher.end()) {
      it->second.value(0, 0) = std::log(*config.tau);
    }
  }

  SynthOutput out;
  out.teacher = teacher;
  out.data.observations.reserve(config.games);
  const int id_width = static_cast<int>(std::to_string(config.games).size());
  if (config.payoffs == PayoffDist::kCyclic && config.rows != config.cols) {
    throw Error("synth: cyclic payoffs need square games");
  }

  for (int g = 0; g < config.games; ++g) {
    Game game =
        config.payoffs == PayoffDist::kCyclic
            ? sample_cyclic(config.rows, config.scale, rng)
            : Game(sample_payoffs(config.rows, config.cols, config.payoffs,
                                  config.scale, rng),
                   sample_payoffs(config.rows, config.cols, config.payoffs,
                                  config.scale, rng));
    if (config.standardize) game = standardize(game);

    Observation obs;
    std::string index = std::to_string(g);
    obs.game_id = config.source + "-" +
                  std::string(id_width - index.size(), '0') + index;
    obs.source = config.source;
    obs.game = game;
    obs.counts = multinomial(predict(config.model, teacher, game),
                             config.plays, rng);
    out.data.observations.push_back(std::move(obs));
  }
  return out;
}

}  // namespace bgt

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

#include <doctest.h>

#include <cmath>
#include <random>

#include "bgt/common.hpp"
#include "bgt/game.hpp"
#include "bgt/heuristics.hpp"
#include "bgt/qch.hpp"

namespace bgt {
namespace {

Game random_game(int n, int m, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Matrix u1(n, m), u2(n, m);
  for (int i = 0; i < n * m; ++i) {
    u1(i) = nd(rng);
    u2(i) = nd(rng);
  }
  return Game(std::move(u1), std::move(u2));
}

ModelSpec make_spec(Level0Kind kind, StrategicKind strategic) {
  ModelSpec spec;
  spec.level0.kind = kind;
  spec.level0.widths = {4};
  spec.level0.potential_count = 2;
  spec.strategic.kind = strategic;
  return spec;
}

TEST_CASE("model names are unambiguous") {
  ModelSpec a = make_spec(Level0Kind::kUniform, StrategicKind::kQchPoisson);
  CHECK(model_name(a) == "uniform+qchp4");
  a.strategic.max_level = 2;
  CHECK(model_name(a) == "uniform+qchp2");

  ModelSpec b = make_spec(Level0Kind::kENet, StrategicKind::kNone);
  b.level0.potentials = PotentialsKind::kLearned;
  CHECK(model_name(b) == "enet-learned2");
  b.level0.potentials = PotentialsKind::kFixed4;
  CHECK(model_name(b) == "enet-fixed4");
  b.level0.potentials = PotentialsKind::kOwnOnly;
  b.strategic.kind = StrategicKind::kQchHist;
  CHECK(model_name(b) == "enet-own+qch4");

  ModelSpec c = make_spec(Level0Kind::kHeuristic, StrategicKind::kNone);
  c.level0.heuristic = Heuristic::kMaxmin;
  CHECK(model_name(c) == to_string(Heuristic::kMaxmin));

  ModelSpec d = make_spec(Level0Kind::kGameNet, StrategicKind::kQchPoisson);
  CHECK(model_name(d) == "gamenet+qchp4");
}

TEST_CASE("init_parameters covers the documented ranges") {
  ModelSpec spec = make_spec(Level0Kind::kUniform, StrategicKind::kQchPoisson);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    std::mt19937_64 rng(seed);
    ParameterSet params = init_parameters(spec, rng);
    REQUIRE(params.count("qch.log_lambda") == 1);
    REQUIRE(params.count("qch.log_rate") == 1);
    const double lambda = std::exp(params.at("qch.log_lambda").value(0, 0));
    const double rate = std::exp(params.at("qch.log_rate").value(0, 0));
    CHECK(lambda >= 0.03);
    CHECK(lambda <= 0.3);
    CHECK(rate >= 0.5);
    CHECK(rate <= 1.5);
    CHECK(params.at("qch.log_lambda").constraint == Constraint::kLogSpace);
    CHECK(params.at("qch.log_rate").constraint == Constraint::kLogSpace);
  }

  // Same seed, same draw; the draw is consumed in a fixed order.
  std::mt19937_64 r1(9), r2(9);
  ModelSpec net = make_spec(Level0Kind::kGameNet, StrategicKind::kQchPoisson);
  ParameterSet a = init_parameters(net, r1);
  ParameterSet b = init_parameters(net, r2);
  REQUIRE(a.size() == b.size());
  for (const auto& [name, p] : a) {
    CHECK(p.value == b.at(name).value);
  }
  CHECK(a.count("l0.fl.w1") == 1);

  ModelSpec hist = make_spec(Level0Kind::kUniform, StrategicKind::kQchHist);
  std::mt19937_64 r3(1);
  ParameterSet h = init_parameters(hist, r3);
  CHECK(h.count("qch.logits") == 1);
  CHECK(h.at("qch.logits").value.rows() == hist.strategic.max_level + 1);
  CHECK(h.count("qch.log_rate") == 0);
}

TEST_CASE("predict returns valid behavior for every family") {
  std::mt19937_64 game_rng(17);
  std::vector<ModelSpec> specs;
  specs.push_back(make_spec(Level0Kind::kUniform, StrategicKind::kNone));
  specs.push_back(make_spec(Level0Kind::kUniform, StrategicKind::kQchPoisson));
  specs.push_back(make_spec(Level0Kind::kHeuristic, StrategicKind::kQchHist));
  specs.back().level0.heuristic = Heuristic::kMaxmax;
  specs.push_back(make_spec(Level0Kind::kGameNet, StrategicKind::kQchPoisson));
  ModelSpec enet = make_spec(Level0Kind::kENet, StrategicKind::kQchPoisson);
  enet.level0.potentials = PotentialsKind::kLearned;
  specs.push_back(enet);
  enet.level0.potentials = PotentialsKind::kFixed4;
  enet.strategic.kind = StrategicKind::kNone;
  specs.push_back(enet);

  for (const ModelSpec& spec : specs) {
    std::mt19937_64 rng(3);
    ParameterSet params = init_parameters(spec, rng);
    for (auto [n, m] : {std::pair{2, 3}, {3, 3}, {4, 2}}) {
      Game g = random_game(n, m, game_rng);
      Behavior p = predict(spec, params, g);
      REQUIRE(p.size() == n);
      CHECK(is_valid_behavior(p));
    }
  }
}

TEST_CASE("non-strategic uniform model predicts uniform") {
  ModelSpec spec = make_spec(Level0Kind::kUniform, StrategicKind::kNone);
  std::mt19937_64 rng(1);
  ParameterSet params = init_parameters(spec, rng);
  CHECK(params.empty());
  Game g = random_game(3, 2, rng);
  Behavior p = predict(spec, params, g);
  CHECK(p(0) == doctest::Approx(1.0 / 3.0));
  CHECK(p(2) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("level profile is consistent with the prediction") {
  ModelSpec spec = make_spec(Level0Kind::kGameNet, StrategicKind::kQchPoisson);
  std::mt19937_64 rng(23);
  ParameterSet params = init_parameters(spec, rng);
  Game g = random_game(3, 4, rng);
  LevelProfile prof = qch_levels(spec, params, g);
  REQUIRE(prof.row.size() == 5);
  REQUIRE(prof.col.size() == 5);
  CHECK(prof.row[0].size() == 3);
  CHECK(prof.col[0].size() == 4);  // the other seat has 4 actions
  CHECK(prof.dist.sum() == doctest::Approx(1.0));

  Behavior mixed = Behavior::Zero(3);
  for (int k = 0; k < 5; ++k) mixed += prof.dist(k) * prof.row[k];
  Behavior direct = predict(spec, params, g);
  CHECK((mixed - direct).cwiseAbs().maxCoeff() < 1e-12);

  // Level 0 of the profile is the starting rule itself.
  Behavior l0 = feature_forward(FeatureLayerConfig{spec.level0.widths}, params,
                                "l0.fl", g);
  CHECK((prof.row[0] - l0).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("level_distribution matches the stored parameters") {
  ModelSpec spec = make_spec(Level0Kind::kUniform, StrategicKind::kQchPoisson);
  std::mt19937_64 rng(29);
  ParameterSet params = init_parameters(spec, rng);
  Vector d = level_distribution(spec, params);
  Vector want =
      poisson_levels(std::exp(params.at("qch.log_rate").value(0, 0)), 4);
  CHECK((d - want).cwiseAbs().maxCoeff() < 1e-15);

  ModelSpec hist = make_spec(Level0Kind::kUniform, StrategicKind::kQchHist);
  std::mt19937_64 rng2(31);
  ParameterSet hp = init_parameters(hist, rng2);
  Vector hd = level_distribution(hist, hp);
  Vector hwant = histogram_levels(hp.at("qch.logits").value.col(0));
  CHECK((hd - hwant).cwiseAbs().maxCoeff() < 1e-15);

  ModelSpec none = make_spec(Level0Kind::kUniform, StrategicKind::kNone);
  ParameterSet empty;
  Vector point = level_distribution(none, empty);
  REQUIRE(point.size() == 1);
  CHECK(point(0) == 1.0);
}

TEST_CASE("column seat predictions come from the transposed game") {
  ModelSpec spec = make_spec(Level0Kind::kUniform, StrategicKind::kQchPoisson);
  std::mt19937_64 rng(37);
  ParameterSet params = init_parameters(spec, rng);
  Game g = random_game(2, 5, rng);
  LevelProfile prof = qch_levels(spec, params, g);
  LevelProfile flipped = qch_levels(spec, params, transpose_for_column(g));
  for (std::size_t k = 0; k < prof.col.size(); ++k) {
    CHECK((prof.col[k] - flipped.row[k]).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("build_model exposes graph handles that match predict") {
  ModelSpec spec = make_spec(Level0Kind::kENet, StrategicKind::kQchPoisson);
  spec.level0.potentials = PotentialsKind::kFixed4;
  std::mt19937_64 rng(41);
  ParameterSet params = init_parameters(spec, rng);
  Game g = random_game(3, 3, rng);
  Tape tape(&params);
  ModelGraph graph = build_model(tape, spec, g, {});
  tape.forward();
  Behavior from_graph = tape.value(graph.prediction).col(0);
  Behavior direct = predict(spec, params, g);
  CHECK((from_graph - direct).cwiseAbs().maxCoeff() < 1e-14);
  REQUIRE(graph.row_levels.size() == 5);
  CHECK(tape.value(graph.level_dist).rows() == 5);

  // The graph stays usable after a parameter update.
  params.at("qch.log_lambda").value(0, 0) += 0.5;
  tape.forward();
  Behavior updated = tape.value(graph.prediction).col(0);
  Behavior direct2 = predict(spec, params, g);
  CHECK((updated - direct2).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((updated - direct).cwiseAbs().maxCoeff() > 1e-6);
}

TEST_CASE("enet_config rejects a nonpositive potential count") {
  Level0Spec level0;
  level0.kind = Level0Kind::kENet;
  level0.potentials = PotentialsKind::kLearned;
  level0.potential_count = 0;
  CHECK_THROWS_AS(enet_config(level0), BadConstants);
}

}  // namespace
}  // namespace bgt

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

#include "bgt/serialize.hpp"

#include <doctest.h>

#include <cstdio>
#include <random>
#include <string>

#include "bgt/common.hpp"
#include "bgt/synth.hpp"
#include "bgt/train.hpp"

namespace bgt {
namespace {

TEST_CASE("matrices round-trip through nested arrays") {
  Matrix m(2, 3);
  m << 1.5, -2.0, 0.25,
       3.0, 4.0, -5.5;
  Json j = matrix_to_json(m);
  Matrix back = matrix_from_json(j, "test matrix");
  CHECK(back == m);

  CHECK_THROWS_AS(matrix_from_json(Json::parse("[[1,2],[3]]"), "ragged"),
                  ParseError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse("[]"), "empty"), ParseError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse("[[]]"), "empty row"),
                  ParseError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse("[[1,\"x\"]]"), "text"),
                  ParseError);
}

TEST_CASE("load_json names the offending file") {
  try {
    load_json("/nonexistent/path/data.json");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("/nonexistent/path/data.json") !=
          std::string::npos);
  }
}

TEST_CASE("datasets round-trip") {
  SynthConfig config;
  config.model.level0.kind = Level0Kind::kUniform;
  config.model.strategic.kind = StrategicKind::kQchPoisson;
  config.games = 6;
  config.plays = 40;
  config.seed = 3;
  Dataset data = synth_dataset(config).data;
  data.assign_splits(5);

  Json doc = dataset_to_json(data);
  Dataset back = dataset_from_json(doc);
  REQUIRE(back.observations.size() == data.observations.size());
  for (std::size_t i = 0; i < data.observations.size(); ++i) {
    const Observation& a = data.observations[i];
    const Observation& b = back.observations[i];
    CHECK(a.game_id == b.game_id);
    CHECK(a.source == b.source);
    CHECK(a.counts == b.counts);
    // Payoffs were standardized at generation, so re-ingestion only
    // touches them at roundoff level.
    CHECK((a.game.u1 - b.game.u1).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((a.game.u2 - b.game.u2).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK(back.splits == data.splits);
}

TEST_CASE("column-seat records are transposed at ingestion") {
  Json doc;
  doc["observations"] = Json::array();
  Json rec;
  rec["game_id"] = "flip";
  rec["source"] = "unit";
  rec["role"] = "column";
  rec["u1"] = Json::parse("[[0.0, 1.0], [2.0, 3.0], [4.0, 5.0]]");
  rec["u2"] = Json::parse("[[5.0, 4.0], [3.0, 2.0], [1.0, 0.0]]");
  rec["counts"] = Json::parse("[7, 9]");
  doc["observations"].push_back(rec);

  IngestOptions raw;
  raw.standardize = false;
  Dataset data = dataset_from_json(doc, raw);
  REQUIRE(data.observations.size() == 1);
  const Observation& obs = data.observations[0];
  // The column seat had 2 actions; after the flip they are rows.
  CHECK(obs.game.rows() == 2);
  CHECK(obs.game.cols() == 3);
  CHECK(obs.counts(0) == 7);
  // The recorded u2 (column player's payoffs) is now the row player's.
  CHECK(obs.game.u1(0, 0) == 5.0);
  CHECK(obs.game.u1(1, 2) == 0.0);
  CHECK(obs.game.u2(0, 1) == 2.0);
}

TEST_CASE("dataset validation errors name the record") {
  Json doc;
  Json rec;
  rec["game_id"] = "bad-counts";
  rec["source"] = "unit";
  rec["role"] = "row";
  rec["u1"] = Json::parse("[[1.0, 2.0], [3.0, 4.0]]");
  rec["u2"] = Json::parse("[[0.0, 1.0], [1.0, 0.0]]");
  rec["counts"] = Json::parse("[1, 2, 3]");
  doc["observations"].push_back(rec);
  try {
    dataset_from_json(doc);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("bad-counts") != std::string::npos);
  }

  doc["observations"][0]["counts"] = Json::parse("[1, -2]");
  CHECK_THROWS_AS(dataset_from_json(doc), ParseError);
  doc["observations"][0]["counts"] = Json::parse("[1, 2.5]");
  CHECK_THROWS_AS(dataset_from_json(doc), ParseError);
  doc["observations"][0]["counts"] = Json::parse("[1, 2]");
  doc["observations"][0]["role"] = "diagonal";
  CHECK_THROWS_AS(dataset_from_json(doc), ParseError);
  doc["observations"][0]["role"] = "row";
  CHECK_NOTHROW(dataset_from_json(doc));

  // Splits must cover every game with a known label.
  doc["splits"] = {{"bad-counts", "train"}, {"ghost", "val"}};
  CHECK_THROWS_AS(dataset_from_json(doc), ParseError);
  doc["splits"] = {{"bad-counts", "everything"}};
  CHECK_THROWS_AS(dataset_from_json(doc), ParseError);
}

TEST_CASE("specs round-trip for every family") {
  std::vector<std::string> texts = {
      R"({"level0": {"kind": "uniform"},
          "strategic": {"kind": "qch_poisson", "max_level": 3}})",
      R"({"level0": {"kind": "maxmax"}, "strategic": {"kind": "none"}})",
      R"({"level0": {"kind": "gamenet", "layers": [10, 5]},
          "strategic": {"kind": "qch_hist"}})",
      R"({"level0": {"kind": "enet", "layers": [4],
                     "potentials": "learned:2"},
          "strategic": {"kind": "qch_poisson"}})",
      R"({"level0": {"kind": "enet", "layers": [4], "potentials": "fixed4"},
          "strategic": {"kind": "none"}})",
      R"({"level0": {"kind": "enet", "layers": [4], "potentials": "own"},
          "strategic": {"kind": "none"}})",
  };
  for (const std::string& text : texts) {
    ModelSpec spec = spec_from_json(Json::parse(text));
    ModelSpec back = spec_from_json(spec_to_json(spec));
    CHECK(model_name(back) == model_name(spec));
    CHECK(back.level0.widths == spec.level0.widths);
    CHECK(back.strategic.max_level == spec.strategic.max_level);
  }

  CHECK_THROWS_AS(
      spec_from_json(Json::parse(R"({"level0": {"kind": "psychic"}})")),
      ParseError);
}

TEST_CASE("potential strings parse and print") {
  Level0Spec level0;
  potentials_from_string("learned:3", &level0);
  CHECK(level0.potentials == PotentialsKind::kLearned);
  CHECK(level0.potential_count == 3);
  CHECK(potentials_to_string(level0.potentials, level0.potential_count) ==
        "learned:3");
  potentials_from_string("fixed4", &level0);
  CHECK(level0.potentials == PotentialsKind::kFixed4);
  potentials_from_string("own", &level0);
  CHECK(level0.potentials == PotentialsKind::kOwnOnly);
  CHECK_THROWS_AS(potentials_from_string("learned:0", &level0), ParseError);
  CHECK_THROWS_AS(potentials_from_string("mystery", &level0), ParseError);
}

TEST_CASE("train overrides replace only the named fields") {
  TrainConfig base;
  base.epochs = 100;
  base.lr = 0.01;
  Json doc = Json::parse(R"({"train": {"epochs": 7, "l1": 0.5}})");
  TrainConfig merged = train_overrides_from_json(doc, base);
  CHECK(merged.epochs == 7);
  CHECK(merged.l1 == 0.5);
  CHECK(merged.lr == 0.01);

  CHECK_THROWS_AS(train_overrides_from_json(
                      Json::parse(R"({"train": {"learning_rate": 1}})"), base),
                  ParseError);
  TrainConfig untouched = train_overrides_from_json(Json::parse("{}"), base);
  CHECK(untouched.epochs == 100);
}

TEST_CASE("parameter sets round-trip with their constraints") {
  ParameterSet params;
  Param w;
  w.value = (Matrix(2, 2) << 1, 2, 3, 4).finished();
  w.l1_penalized = true;
  params["net.w1"] = w;
  Param mix;
  mix.value = (Matrix(3, 1) << 0.2, 0.3, 0.5).finished();
  mix.constraint = Constraint::kSimplex;
  params["mix"] = mix;
  Param lam;
  lam.value = Matrix::Constant(1, 1, -1.2);
  lam.constraint = Constraint::kLogSpace;
  params["qch.log_lambda"] = lam;

  ParameterSet back = params_from_json(params_to_json(params));
  REQUIRE(back.size() == 3);
  CHECK(back.at("net.w1").value == w.value);
  CHECK(back.at("net.w1").l1_penalized);
  CHECK(back.at("net.w1").constraint == Constraint::kFree);
  CHECK(back.at("mix").constraint == Constraint::kSimplex);
  CHECK(back.at("qch.log_lambda").constraint == Constraint::kLogSpace);
  CHECK_FALSE(back.at("mix").l1_penalized);

  CHECK_THROWS_AS(
      params_from_json(Json::parse(
          R"({"p": {"value": [[1]], "constraint": "banana"}})")),
      ParseError);
}

TEST_CASE("train results round-trip") {
  SynthConfig sc;
  sc.model.level0.kind = Level0Kind::kUniform;
  sc.model.strategic.kind = StrategicKind::kQchPoisson;
  sc.games = 6;
  sc.plays = 30;
  sc.seed = 1;
  Dataset data = synth_dataset(sc).data;
  data.assign_splits(2);
  TrainConfig config;
  config.seed = 4;
  config.epochs = 10;
  config.lr = 0.05;
  TrainResult result = train(sc.model, data, config);

  Json doc = train_result_to_json(result);
  CHECK(doc.at("model") == "uniform+qchp4");
  TrainResult back = train_result_from_json(doc);
  CHECK(model_name(back.spec) == model_name(result.spec));
  CHECK(back.config.epochs == 10);
  CHECK(back.config.seed == 4);
  CHECK(back.train_trace == result.train_trace);
  CHECK(back.train_loss == result.train_loss);
  CHECK(back.val_loss == result.val_loss);
  CHECK(back.test_loss == result.test_loss);
  CHECK(back.loss_increased == result.loss_increased);
  for (const auto& [name, p] : result.params) {
    CHECK(back.params.at(name).value == p.value);
  }
}

TEST_CASE("sweep and comparison documents expose the run tables") {
  SweepResult sweep_result;
  sweep_result.best_index = 1;
  SweepRun run;
  run.l1 = 1e-4;
  run.dropout = 0.01;
  run.replicate = 1;
  run.seed = 77;
  run.val_loss = 0.25;
  run.test_loss = 0.5;
  sweep_result.runs = {run, run};
  sweep_result.best.spec.level0.kind = Level0Kind::kUniform;
  Json doc = sweep_result_to_json(sweep_result);
  CHECK(doc.at("best_index") == 1);
  REQUIRE(doc.at("runs").size() == 2);
  CHECK(doc.at("runs")[0].at("l1") == 1e-4);
  CHECK(doc.at("runs")[0].at("seed") == 77);
  CHECK(doc.at("best").contains("params"));

  ComparisonRow row;
  row.model = "a";
  row.mean_diff = -0.5;
  row.lo68 = -0.6;
  row.hi68 = -0.4;
  row.lo95 = -0.7;
  row.hi95 = -0.3;
  Json table = comparison_to_json({row});
  REQUIRE(table.is_array());
  CHECK(table[0].at("model") == "a");
  CHECK(table[0].at("lo95") == -0.7);
}

TEST_CASE("summarize_sources aggregates by source name") {
  Dataset data;
  auto add = [&data](const std::string& source, const std::string& id,
                     int plays) {
    Observation obs;
    obs.game_id = id;
    obs.source = source;
    obs.game = Game(Matrix::Identity(2, 2), Matrix::Identity(2, 2));
    obs.counts = Eigen::VectorXi::Constant(2, plays);
    data.observations.push_back(obs);
  };
  add("b-lab", "g1", 5);
  add("a-lab", "g2", 2);
  add("b-lab", "g3", 1);
  std::vector<SourceSummary> table = summarize_sources(data);
  REQUIRE(table.size() == 2);
  CHECK(table[0].source == "a-lab");
  CHECK(table[0].games == 1);
  CHECK(table[0].observations == 4);
  CHECK(table[1].source == "b-lab");
  CHECK(table[1].games == 2);
  CHECK(table[1].observations == 12);
}

TEST_CASE("documents survive a disk round-trip") {
  std::string path = "/tmp/bgt_serialize_test.json";
  Json doc;
  doc["model"] = "unit";
  doc["values"] = {1, 2, 3};
  save_json(doc, path);
  Json back = load_json(path);
  CHECK(back == doc);
  std::remove(path.c_str());
}

}  // namespace
}  // namespace bgt

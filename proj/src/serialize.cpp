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

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace bgt {

namespace {

// Context-tagged field access so error messages say which record or
// document is malformed.
const Json& require(const Json& j, const std::string& key,
                    const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw ParseError(where + ": missing field \"" + key + "\"");
  }
  return *it;
}

std::string require_string(const Json& j, const std::string& key,
                           const std::string& where) {
  const Json& v = require(j, key, where);
  if (!v.is_string()) {
    throw ParseError(where + ": field \"" + key + "\" must be a string");
  }
  return v.get<std::string>();
}

double require_number(const Json& j, const std::string& key,
                      const std::string& where) {
  const Json& v = require(j, key, where);
  if (!v.is_number()) {
    throw ParseError(where + ": field \"" + key + "\" must be a number");
  }
  return v.get<double>();
}

}  // namespace

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open " + path);
  }
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void save_json(const Json& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write " + path);
  }
  out << doc.dump(2) << '\n';
  if (!out) {
    throw Error("write failed for " + path);
  }
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(m(i, j));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) {
    throw ParseError(what + ": expected a non-empty array of rows");
  }
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = -1;
  Matrix m;
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || row.empty()) {
      throw ParseError(what + ": row " + std::to_string(i) +
                       " is not a non-empty array");
    }
    if (cols < 0) {
      cols = static_cast<Eigen::Index>(row.size());
      m.resize(rows, cols);
    }
    if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw ParseError(what + ": ragged rows");
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      const Json& cell = row[static_cast<std::size_t>(k)];
      if (!cell.is_number()) {
        throw ParseError(what + ": entry (" + std::to_string(i) + "," +
                         std::to_string(k) + ") is not a number");
      }
      m(i, k) = cell.get<double>();
    }
  }
  return m;
}

// ---- datasets -------------------------------------------------------

Dataset dataset_from_json(const Json& doc, const IngestOptions& opts) {
  if (!doc.is_object()) {
    throw ParseError("dataset: top level must be an object");
  }
  const Json& records = require(doc, "observations", "dataset");
  if (!records.is_array()) {
    throw ParseError("dataset: \"observations\" must be an array");
  }

  Dataset data;
  data.observations.reserve(records.size());
  for (std::size_t idx = 0; idx < records.size(); ++idx) {
    const Json& rec = records[idx];
    const std::string where = "observation " + std::to_string(idx);
    if (!rec.is_object()) {
      throw ParseError(where + ": expected an object");
    }
    Observation obs;
    obs.game_id = require_string(rec, "game_id", where);
    obs.source = rec.contains("source")
                     ? require_string(rec, "source", where)
                     : std::string("unknown");
    const std::string tag = where + " (game_id " + obs.game_id + ")";

    Game raw;
    try {
      raw = Game(matrix_from_json(require(rec, "u1", tag), tag + " u1"),
                 matrix_from_json(require(rec, "u2", tag), tag + " u2"));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(tag + ": " + e.what());
    }

    const std::string role = require_string(rec, "role", tag);
    if (role == "column") {
      raw = transpose_for_column(raw);
    } else if (role != "row") {
      throw ParseError(tag + ": role must be \"row\" or \"column\"");
    }
    obs.game = opts.standardize ? standardize(raw) : raw;

    const Json& counts = require(rec, "counts", tag);
    if (!counts.is_array()) {
      throw ParseError(tag + ": counts must be an array");
    }
    if (static_cast<Eigen::Index>(counts.size()) != obs.game.rows()) {
      throw ParseError(tag + ": counts has " + std::to_string(counts.size()) +
                       " entries for " + std::to_string(obs.game.rows()) +
                       " actions");
    }
    obs.counts.resize(obs.game.rows());
    for (Eigen::Index i = 0; i < obs.counts.size(); ++i) {
      const Json& c = counts[static_cast<std::size_t>(i)];
      if (!c.is_number_integer() || c.get<long long>() < 0) {
        throw ParseError(tag + ": counts must be non-negative integers");
      }
      obs.counts(i) = static_cast<int>(c.get<long long>());
    }
    data.observations.push_back(std::move(obs));
  }

  if (doc.contains("splits")) {
    const Json& splits = doc["splits"];
    if (!splits.is_object()) {
      throw ParseError("dataset: \"splits\" must map game_id to split name");
    }
    for (auto it = splits.begin(); it != splits.end(); ++it) {
      if (!it.value().is_string()) {
        throw ParseError("dataset: split for game " + it.key() +
                         " must be a string");
      }
      data.splits[it.key()] = split_from_string(it.value().get<std::string>());
    }
    std::set<std::string> known;
    for (const Observation& obs : data.observations) {
      known.insert(obs.game_id);
      if (!data.splits.count(obs.game_id)) {
        throw ParseError("dataset: game " + obs.game_id +
                         " is missing from \"splits\"");
      }
    }
    for (const auto& [game_id, _] : data.splits) {
      if (!known.count(game_id)) {
        throw ParseError("dataset: split for unknown game " + game_id);
      }
    }
  }
  return data;
}

Dataset load_dataset(const std::string& path, const IngestOptions& opts) {
  return dataset_from_json(load_json(path), opts);
}

Json dataset_to_json(const Dataset& data) {
  Json records = Json::array();
  for (const Observation& obs : data.observations) {
    Json rec;
    rec["game_id"] = obs.game_id;
    rec["source"] = obs.source;
    rec["role"] = "row";
    rec["u1"] = matrix_to_json(obs.game.u1);
    rec["u2"] = matrix_to_json(obs.game.u2);
    Json counts = Json::array();
    for (Eigen::Index i = 0; i < obs.counts.size(); ++i) {
      counts.push_back(obs.counts(i));
    }
    rec["counts"] = std::move(counts);
    records.push_back(std::move(rec));
  }
  Json doc;
  doc["observations"] = std::move(records);
  if (!data.splits.empty()) {
    Json splits = Json::object();
    for (const auto& [game_id, split] : data.splits) {
      splits[game_id] = to_string(split);
    }
    doc["splits"] = std::move(splits);
  }
  return doc;
}

std::vector<SourceSummary> summarize_sources(const Dataset& data) {
  std::map<std::string, SourceSummary> by_source;
  std::map<std::string, std::map<std::string, bool>> seen_games;
  for (const Observation& obs : data.observations) {
    SourceSummary& s = by_source[obs.source];
    s.source = obs.source;
    if (!seen_games[obs.source].count(obs.game_id)) {
      seen_games[obs.source][obs.game_id] = true;
      ++s.games;
    }
    s.observations += obs.counts.cast<long long>().sum();
  }
  std::vector<SourceSummary> out;
  out.reserve(by_source.size());
  for (auto& [_, s] : by_source) {
    out.push_back(s);
  }
  return out;
}

// ---- model specs ----------------------------------------------------

std::string potentials_to_string(PotentialsKind kind, int count) {
  switch (kind) {
    case PotentialsKind::kLearned:
      return "learned:" + std::to_string(count);
    case PotentialsKind::kFixed4:
      return "fixed4";
    case PotentialsKind::kOwnOnly:
      return "own";
  }
  throw Error("unknown potentials kind");
}

void potentials_from_string(const std::string& text, Level0Spec* out) {
  if (text == "fixed4") {
    out->potentials = PotentialsKind::kFixed4;
    out->potential_count = 4;
    return;
  }
  if (text == "own") {
    out->potentials = PotentialsKind::kOwnOnly;
    out->potential_count = 1;
    return;
  }
  if (text == "learned" || text.rfind("learned:", 0) == 0) {
    out->potentials = PotentialsKind::kLearned;
    out->potential_count = 1;
    if (text.size() > 8) {
      std::size_t used = 0;
      int count = 0;
      try {
        count = std::stoi(text.substr(8), &used);
      } catch (const std::exception&) {
        throw ParseError("bad potential count in \"" + text + "\"");
      }
      if (used != text.size() - 8 || count < 1) {
        throw ParseError("bad potential count in \"" + text + "\"");
      }
      out->potential_count = count;
    }
    return;
  }
  throw ParseError("unknown potentials \"" + text +
                   "\" (want learned[:K], fixed4 or own)");
}

namespace {

std::vector<int> layers_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) {
    throw ParseError(where + ": \"layers\" must be a non-empty array");
  }
  std::vector<int> widths;
  widths.reserve(j.size());
  for (const Json& v : j) {
    if (!v.is_number_integer() || v.get<long long>() < 1) {
      throw ParseError(where + ": layer widths must be positive integers");
    }
    widths.push_back(static_cast<int>(v.get<long long>()));
  }
  return widths;
}

Level0Spec level0_from_json(const Json& j) {
  if (!j.is_object()) {
    throw ParseError("spec: \"level0\" must be an object");
  }
  Level0Spec out;
  const std::string kind = require_string(j, "kind", "spec level0");
  if (kind == "uniform") {
    out.kind = Level0Kind::kUniform;
  } else if (kind == "gamenet") {
    out.kind = Level0Kind::kGameNet;
    if (j.contains("layers")) {
      out.widths = layers_from_json(j["layers"], "spec level0");
    }
  } else if (kind == "enet") {
    out.kind = Level0Kind::kENet;
    if (j.contains("layers")) {
      out.widths = layers_from_json(j["layers"], "spec level0");
    }
    if (j.contains("potentials")) {
      potentials_from_string(
          require_string(j, "potentials", "spec level0"), &out);
    }
  } else {
    try {
      out.heuristic = heuristic_from_string(kind);
    } catch (const Error&) {
      throw ParseError("spec level0: unknown kind \"" + kind + "\"");
    }
    out.kind = Level0Kind::kHeuristic;
  }
  return out;
}

StrategicSpec strategic_from_json(const Json& j) {
  if (!j.is_object()) {
    throw ParseError("spec: \"strategic\" must be an object");
  }
  StrategicSpec out;
  const std::string kind = require_string(j, "kind", "spec strategic");
  if (kind == "none") {
    out.kind = StrategicKind::kNone;
  } else if (kind == "qch_poisson") {
    out.kind = StrategicKind::kQchPoisson;
  } else if (kind == "qch_hist") {
    out.kind = StrategicKind::kQchHist;
  } else {
    throw ParseError("spec strategic: unknown kind \"" + kind + "\"");
  }
  if (j.contains("max_level")) {
    const double k = require_number(j, "max_level", "spec strategic");
    if (k != static_cast<int>(k) || k < 1) {
      throw ParseError("spec strategic: max_level must be a positive integer");
    }
    out.max_level = static_cast<int>(k);
  }
  return out;
}

}  // namespace

ModelSpec spec_from_json(const Json& doc) {
  if (!doc.is_object()) {
    throw ParseError("spec: top level must be an object");
  }
  ModelSpec spec;
  if (doc.contains("level0")) {
    spec.level0 = level0_from_json(doc["level0"]);
  }
  if (doc.contains("strategic")) {
    spec.strategic = strategic_from_json(doc["strategic"]);
  }
  return spec;
}

Json spec_to_json(const ModelSpec& spec) {
  Json level0;
  switch (spec.level0.kind) {
    case Level0Kind::kUniform:
      level0["kind"] = "uniform";
      break;
    case Level0Kind::kHeuristic:
      level0["kind"] = to_string(spec.level0.heuristic);
      break;
    case Level0Kind::kGameNet:
      level0["kind"] = "gamenet";
      level0["layers"] = spec.level0.widths;
      break;
    case Level0Kind::kENet:
      level0["kind"] = "enet";
      level0["layers"] = spec.level0.widths;
      level0["potentials"] = potentials_to_string(
          spec.level0.potentials, spec.level0.potential_count);
      break;
  }
  Json strategic;
  switch (spec.strategic.kind) {
    case StrategicKind::kNone:
      strategic["kind"] = "none";
      break;
    case StrategicKind::kQchPoisson:
      strategic["kind"] = "qch_poisson";
      strategic["max_level"] = spec.strategic.max_level;
      break;
    case StrategicKind::kQchHist:
      strategic["kind"] = "qch_hist";
      strategic["max_level"] = spec.strategic.max_level;
      break;
  }
  Json doc;
  doc["level0"] = std::move(level0);
  doc["strategic"] = std::move(strategic);
  return doc;
}

ModelSpec load_spec(const std::string& path) {
  return spec_from_json(load_json(path));
}

TrainConfig train_overrides_from_json(const Json& doc, TrainConfig base) {
  if (!doc.is_object() || !doc.contains("train")) {
    return base;
  }
  const Json& t = doc["train"];
  if (!t.is_object()) {
    throw ParseError("spec: \"train\" must be an object");
  }
  for (auto it = t.begin(); it != t.end(); ++it) {
    const std::string& key = it.key();
    if (key == "seed") {
      base.seed = it.value().get<std::uint64_t>();
    } else if (key == "epochs") {
      base.epochs = it.value().get<int>();
    } else if (key == "lr") {
      base.lr = it.value().get<double>();
    } else if (key == "l1") {
      base.l1 = it.value().get<double>();
    } else if (key == "dropout") {
      base.dropout = it.value().get<double>();
    } else {
      throw ParseError("spec train: unknown key \"" + key + "\"");
    }
  }
  return base;
}

// ---- parameters and results ----------------------------------------

namespace {

std::string constraint_to_string(Constraint c) {
  switch (c) {
    case Constraint::kFree:
      return "free";
    case Constraint::kSimplex:
      return "simplex";
    case Constraint::kLogSpace:
      return "log";
  }
  throw Error("unknown constraint");
}

Constraint constraint_from_string(const std::string& s) {
  if (s == "free") return Constraint::kFree;
  if (s == "simplex") return Constraint::kSimplex;
  if (s == "log") return Constraint::kLogSpace;
  throw ParseError("unknown constraint \"" + s + "\"");
}

}  // namespace

Json params_to_json(const ParameterSet& params) {
  Json out = Json::object();
  for (const auto& [name, param] : params) {
    Json p;
    p["value"] = matrix_to_json(param.value);
    p["constraint"] = constraint_to_string(param.constraint);
    p["l1_penalized"] = param.l1_penalized;
    out[name] = std::move(p);
  }
  return out;
}

ParameterSet params_from_json(const Json& j) {
  if (!j.is_object()) {
    throw ParseError("params: expected an object keyed by parameter name");
  }
  ParameterSet params;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string where = "param " + it.key();
    const Json& p = it.value();
    Param param;
    param.value = matrix_from_json(require(p, "value", where), where);
    param.constraint =
        constraint_from_string(require_string(p, "constraint", where));
    param.l1_penalized = require(p, "l1_penalized", where).get<bool>();
    params[it.key()] = std::move(param);
  }
  return params;
}

Json train_config_to_json(const TrainConfig& config) {
  Json j;
  j["seed"] = config.seed;
  j["epochs"] = config.epochs;
  j["lr"] = config.lr;
  j["l1"] = config.l1;
  j["dropout"] = config.dropout;
  return j;
}

TrainConfig train_config_from_json(const Json& j) {
  TrainConfig config;
  config.seed = require(j, "seed", "train config").get<std::uint64_t>();
  config.epochs = require(j, "epochs", "train config").get<int>();
  config.lr = require_number(j, "lr", "train config");
  config.l1 = require_number(j, "l1", "train config");
  config.dropout = require_number(j, "dropout", "train config");
  return config;
}

Json train_result_to_json(const TrainResult& result) {
  Json j;
  j["model"] = model_name(result.spec);
  j["spec"] = spec_to_json(result.spec);
  j["config"] = train_config_to_json(result.config);
  j["params"] = params_to_json(result.params);
  j["train_trace"] = result.train_trace;
  j["train_loss"] = result.train_loss;
  j["val_loss"] = result.val_loss;
  j["test_loss"] = result.test_loss;
  j["loss_increased"] = result.loss_increased;
  return j;
}

TrainResult train_result_from_json(const Json& j) {
  TrainResult result;
  result.spec = spec_from_json(require(j, "spec", "result"));
  result.config = train_config_from_json(require(j, "config", "result"));
  result.params = params_from_json(require(j, "params", "result"));
  if (j.contains("train_trace")) {
    result.train_trace = j["train_trace"].get<std::vector<double>>();
  }
  result.train_loss = require_number(j, "train_loss", "result");
  result.val_loss = require_number(j, "val_loss", "result");
  result.test_loss = require_number(j, "test_loss", "result");
  result.loss_increased = j.value("loss_increased", false);
  return result;
}

TrainResult load_result(const std::string& path) {
  return train_result_from_json(load_json(path));
}

Json sweep_result_to_json(const SweepResult& result) {
  Json runs = Json::array();
  for (const SweepRun& run : result.runs) {
    Json r;
    r["l1"] = run.l1;
    r["dropout"] = run.dropout;
    r["replicate"] = run.replicate;
    r["seed"] = run.seed;
    r["val_loss"] = run.val_loss;
    r["test_loss"] = run.test_loss;
    runs.push_back(std::move(r));
  }
  Json j;
  j["best"] = train_result_to_json(result.best);
  j["best_index"] = result.best_index;
  j["runs"] = std::move(runs);
  return j;
}

// ---- evaluation tables ----------------------------------------------

Json comparison_to_json(const std::vector<ComparisonRow>& rows) {
  Json out = Json::array();
  for (const ComparisonRow& row : rows) {
    Json r;
    r["model"] = row.model;
    r["mean_diff"] = row.mean_diff;
    r["lo68"] = row.lo68;
    r["hi68"] = row.hi68;
    r["lo95"] = row.lo95;
    r["hi95"] = row.hi95;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace bgt

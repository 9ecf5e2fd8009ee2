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

#include <string>
#include <vector>

#include <json.hpp>

#include "bgt/game.hpp"
#include "bgt/model.hpp"
#include "bgt/stats.hpp"
#include "bgt/train.hpp"

namespace bgt {

using Json = nlohmann::json;

// Reads a whole JSON document; throws ParseError naming the file on
// missing files and syntax errors.
Json load_json(const std::string& path);
void save_json(const Json& doc, const std::string& path);

// Matrices travel as nested row-major arrays; all rows must have the
// same length and at least one entry.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const std::string& what);

// ---- datasets -------------------------------------------------------

struct IngestOptions {
  // Standardize each game's payoffs after role normalization. Off only
  // for tooling that needs the raw matrices back.
  bool standardize = true;
};

// Dataset documents look like
//   {"observations": [{"game_id": ..., "role": "row"|"column",
//                      "u1": [[...]], "u2": [[...]],
//                      "counts": [...], "source": ...}, ...],
//    "splits": {"game_id": "train"|"val"|"test", ...}}   (optional)
// Records taken from the column seat are transposed into row form, so
// every stored observation predicts its game's row player. Validation
// failures name the offending game_id or record index.
Dataset dataset_from_json(const Json& doc, const IngestOptions& opts = {});
Dataset load_dataset(const std::string& path, const IngestOptions& opts = {});

// Inverse of the reader for already-normalized data: every record is
// written with role "row". Explicit splits are emitted when present.
Json dataset_to_json(const Dataset& data);

struct SourceSummary {
  std::string source;
  int games = 0;
  long long observations = 0;  // total play count, not record count
};

// Per-source counts, sorted by source name.
std::vector<SourceSummary> summarize_sources(const Dataset& data);

// ---- model specs ----------------------------------------------------

// Spec documents:
//   {"level0": {"kind": "uniform" | <heuristic name> | "gamenet" | "enet",
//               "layers": [50, 50],            (gamenet, enet)
//               "potentials": "learned:2" | "fixed4" | "own"},  (enet)
//    "strategic": {"kind": "none" | "qch_poisson" | "qch_hist",
//                  "max_level": 4},
//    "train": {"epochs": ..., "lr": ..., "l1": ..., "dropout": ...,
//              "seed": ...}}                    (optional overrides)
ModelSpec spec_from_json(const Json& doc);
Json spec_to_json(const ModelSpec& spec);
ModelSpec load_spec(const std::string& path);

// "learned:3" <-> (kLearned, 3) and so on.
std::string potentials_to_string(PotentialsKind kind, int count);
void potentials_from_string(const std::string& text, Level0Spec* out);

// Overlays the document's "train" object, when present, onto `base`.
// Unknown keys are rejected so typos do not silently fall back to
// defaults.
TrainConfig train_overrides_from_json(const Json& doc, TrainConfig base);

// ---- parameters and results ----------------------------------------

Json params_to_json(const ParameterSet& params);
ParameterSet params_from_json(const Json& j);

Json train_config_to_json(const TrainConfig& config);
TrainConfig train_config_from_json(const Json& j);

Json train_result_to_json(const TrainResult& result);
TrainResult train_result_from_json(const Json& j);
TrainResult load_result(const std::string& path);

Json sweep_result_to_json(const SweepResult& result);

// ---- evaluation tables ----------------------------------------------

Json comparison_to_json(const std::vector<ComparisonRow>& rows);

}  // namespace bgt

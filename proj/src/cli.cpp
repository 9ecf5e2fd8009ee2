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

#include "bgt/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bgt/probes.hpp"
#include "bgt/serialize.hpp"
#include "bgt/synth.hpp"

namespace bgt {

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<int> parse_layers(const std::string& text) {
  std::vector<int> widths;
  for (const std::string& item : split_list(text)) {
    int w = 0;
    try {
      w = std::stoi(item);
    } catch (const std::exception&) {
      throw ParseError("bad layer width \"" + item + "\"");
    }
    if (w < 1) throw ParseError("layer widths must be positive");
    widths.push_back(w);
  }
  if (widths.empty()) throw ParseError("at least one layer width required");
  return widths;
}

std::vector<double> parse_doubles(const std::string& text,
                                  const std::string& what) {
  std::vector<double> values;
  for (const std::string& item : split_list(text)) {
    try {
      values.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ParseError("bad " + what + " \"" + item + "\"");
    }
  }
  if (values.empty()) throw ParseError("empty " + what + " list");
  return values;
}

// Model selection shared by synth and by specs given inline.
struct ModelFlags {
  std::string level0 = "uniform";
  std::string layers = "50";
  std::string potentials = "learned:1";
  std::string strategic = "qch_poisson";
  int max_level = 4;
};

void add_model_flags(CLI::App* cmd, ModelFlags* flags) {
  cmd->add_option("--level0", flags->level0,
                  "level-0 rule: uniform, a heuristic name, gamenet or enet")
      ->capture_default_str();
  cmd->add_option("--layers", flags->layers,
                  "comma-separated feature layer widths (gamenet, enet)")
      ->capture_default_str();
  cmd->add_option("--potentials", flags->potentials,
                  "enet potentials: learned[:K], fixed4 or own")
      ->capture_default_str();
  cmd->add_option("--strategic", flags->strategic,
                  "strategic layer: none, qch_poisson or qch_hist")
      ->capture_default_str();
  cmd->add_option("--max-level", flags->max_level,
                  "deepest reasoning level of the strategic layer")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

ModelSpec spec_from_flags(const ModelFlags& flags) {
  Json level0;
  level0["kind"] = flags.level0;
  if (flags.level0 == "gamenet" || flags.level0 == "enet") {
    level0["layers"] = parse_layers(flags.layers);
  }
  if (flags.level0 == "enet") {
    level0["potentials"] = flags.potentials;
  }
  Json strategic;
  strategic["kind"] = flags.strategic;
  if (flags.strategic != "none") {
    strategic["max_level"] = flags.max_level;
  }
  Json doc;
  doc["level0"] = std::move(level0);
  doc["strategic"] = std::move(strategic);
  return spec_from_json(doc);
}

std::string basename_stem(const std::string& path) {
  const std::size_t slash = path.find_last_of('/');
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  const std::size_t dot = name.find_last_of('.');
  if (dot != std::string::npos && dot > 0) name = name.substr(0, dot);
  return name;
}

// One comparable unit: a model name and its per-split test losses in
// split order.
struct LoadedRuns {
  std::string path;
  std::string name;
  std::vector<TrainResult> runs;

  std::vector<double> test_losses() const {
    std::vector<double> out;
    out.reserve(runs.size());
    for (const TrainResult& r : runs) out.push_back(r.test_loss);
    return out;
  }
};

LoadedRuns load_runs(const std::string& path) {
  const Json doc = load_json(path);
  LoadedRuns loaded;
  loaded.path = path;
  if (doc.contains("runs")) {
    const Json& runs = doc["runs"];
    if (!runs.is_array() || runs.empty()) {
      throw ParseError(path + ": \"runs\" must be a non-empty array");
    }
    for (const Json& r : runs) {
      loaded.runs.push_back(train_result_from_json(r));
    }
  } else {
    loaded.runs.push_back(train_result_from_json(doc));
  }
  loaded.name = doc.contains("model") && doc["model"].is_string()
                    ? doc["model"].get<std::string>()
                    : model_name(loaded.runs.front().spec);
  return loaded;
}

// Reference lookup tries the literal path, then file stems, then model
// names; each must identify exactly one result.
const LoadedRuns& resolve_reference(const std::vector<LoadedRuns>& all,
                                    const std::string& wanted) {
  const LoadedRuns* found = nullptr;
  auto consider = [&](const LoadedRuns& cand, const std::string& key) {
    if (key != wanted) return;
    if (found && found != &cand) {
      throw Error("reference \"" + wanted + "\" is ambiguous");
    }
    found = &cand;
  };
  for (const LoadedRuns& cand : all) consider(cand, cand.path);
  if (!found) {
    for (const LoadedRuns& cand : all) consider(cand, basename_stem(cand.path));
  }
  if (!found) {
    for (const LoadedRuns& cand : all) consider(cand, cand.name);
  }
  if (!found) {
    throw Error("reference \"" + wanted + "\" does not match any result");
  }
  return *found;
}

void emit(const Json& doc, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << doc.dump(2) << '\n';
  } else {
    save_json(doc, out_path);
  }
}

// ---- subcommand bodies ----------------------------------------------

void cmd_ingest(const std::string& path) {
  const Dataset data = load_dataset(path);
  const std::vector<SourceSummary> sources = summarize_sources(data);

  std::size_t width = 6;
  for (const SourceSummary& s : sources) {
    width = std::max(width, s.source.size());
  }
  std::cout << std::left << std::setw(static_cast<int>(width) + 2) << "source"
            << std::right << std::setw(8) << "games" << std::setw(14)
            << "observations" << '\n';
  long long total_games = 0;
  long long total_obs = 0;
  for (const SourceSummary& s : sources) {
    std::cout << std::left << std::setw(static_cast<int>(width) + 2)
              << s.source << std::right << std::setw(8) << s.games
              << std::setw(14) << s.observations << '\n';
    total_games += s.games;
    total_obs += s.observations;
  }
  std::cout << std::left << std::setw(static_cast<int>(width) + 2) << "total"
            << std::right << std::setw(8) << total_games << std::setw(14)
            << total_obs << '\n';
  if (!data.splits.empty()) {
    int counts[3] = {0, 0, 0};
    for (const auto& [_, split] : data.splits) {
      ++counts[static_cast<int>(split)];
    }
    std::cout << "splits: train=" << counts[0] << " val=" << counts[1]
              << " test=" << counts[2] << '\n';
  }
}

void cmd_synth(const SynthConfig& config, const std::string& out,
               const std::string& teacher_out) {
  const SynthOutput result = synth_dataset(config);
  save_json(dataset_to_json(result.data), out);
  if (!teacher_out.empty()) {
    Json teacher;
    teacher["model"] = model_name(config.model);
    teacher["spec"] = spec_to_json(config.model);
    teacher["params"] = params_to_json(result.teacher);
    save_json(teacher, teacher_out);
  }
  std::cout << "wrote " << result.data.observations.size() << " games ("
            << config.plays << " plays each) to " << out << '\n';
}

void print_losses(const std::string& label, const TrainResult& result) {
  std::cout << label << ": train=" << result.train_loss
            << " val=" << result.val_loss << " test=" << result.test_loss
            << (result.loss_increased ? "  [objective increased]" : "")
            << '\n';
}

void cmd_train(const ModelSpec& spec, const Dataset& base_data,
               const TrainConfig& base, int replications,
               const std::string& out) {
  if (replications < 1) throw Error("replications must be positive");
  if (replications == 1) {
    Dataset data = base_data;
    if (data.splits.empty()) data.assign_splits(base.seed);
    const TrainResult result = train(spec, data, base);
    save_json(train_result_to_json(result), out);
    print_losses(model_name(spec), result);
    return;
  }
  if (!base_data.splits.empty()) {
    throw Error(
        "replications need seed-assigned splits; drop the explicit split "
        "map from the dataset");
  }
  Json runs = Json::array();
  for (int r = 0; r < replications; ++r) {
    Dataset data = base_data;
    TrainConfig config = base;
    config.seed = base.seed + static_cast<std::uint64_t>(r);
    data.assign_splits(config.seed);
    const TrainResult result = train(spec, data, config);
    print_losses("split " + std::to_string(r), result);
    runs.push_back(train_result_to_json(result));
  }
  Json doc;
  doc["model"] = model_name(spec);
  doc["runs"] = std::move(runs);
  save_json(doc, out);
}

void cmd_sweep(const ModelSpec& spec, const Dataset& base_data,
               const TrainConfig& base, SweepGrid grid, int jobs,
               const std::string& out) {
  Dataset data = base_data;
  if (data.splits.empty()) data.assign_splits(base.seed);
  const SweepResult result = sweep(spec, data, base, grid, jobs);
  save_json(sweep_result_to_json(result), out);
  std::cout << result.runs.size() << " runs; best l1="
            << result.runs[result.best_index].l1
            << " dropout=" << result.runs[result.best_index].dropout << '\n';
  print_losses("best " + model_name(spec), result.best);
}

void cmd_compare(const std::vector<std::string>& result_paths,
                 const std::string& reference, double level, int resamples,
                 std::uint64_t seed, int jobs, const std::string& out) {
  if (result_paths.size() < 2) {
    throw Error("compare needs at least two result files");
  }
  std::vector<LoadedRuns> all;
  all.reserve(result_paths.size());
  for (const std::string& path : result_paths) {
    all.push_back(load_runs(path));
  }
  const LoadedRuns& ref = resolve_reference(all, reference);
  const std::vector<double> ref_losses = ref.test_losses();

  std::vector<ComparisonRow> rows;
  for (const LoadedRuns& cand : all) {
    const std::vector<double> losses = cand.test_losses();
    if (losses.size() != ref_losses.size()) {
      throw DimensionMismatch(cand.path + " has " +
                              std::to_string(losses.size()) + " runs, " +
                              ref.path + " has " +
                              std::to_string(ref_losses.size()));
    }
    rows.push_back(
        compare_paired(cand.name, losses, ref_losses, resamples, seed, jobs));
  }

  for (const ComparisonRow& row : rows) {
    const double lo = level == 0.68 ? row.lo68 : row.lo95;
    const double hi = level == 0.68 ? row.hi68 : row.hi95;
    std::cout << row.model << ": mean_diff=" << row.mean_diff << " ["
              << lo << ", " << hi << "]"
              << (lo > 0 || hi < 0 ? "  [excludes zero]" : "") << '\n';
  }
  Json doc;
  doc["reference"] = ref.name;
  doc["level"] = level;
  doc["rows"] = comparison_to_json(rows);
  emit(doc, out);
}

void cmd_report(const std::vector<std::string>& result_paths,
                const std::string& reference, int resamples,
                std::uint64_t seed, int jobs, const std::string& out) {
  std::vector<LoadedRuns> all;
  for (const std::string& path : result_paths) {
    all.push_back(load_runs(path));
  }
  const LoadedRuns* ref = nullptr;
  std::vector<double> ref_losses;
  if (!reference.empty()) {
    ref = &resolve_reference(all, reference);
    ref_losses = ref->test_losses();
  }

  Json rows = Json::array();
  for (const LoadedRuns& cand : all) {
    double train_sum = 0.0, val_sum = 0.0, test_sum = 0.0;
    for (const TrainResult& r : cand.runs) {
      train_sum += r.train_loss;
      val_sum += r.val_loss;
      test_sum += r.test_loss;
    }
    const double n = static_cast<double>(cand.runs.size());
    Json row;
    row["model"] = cand.name;
    row["runs"] = cand.runs.size();
    row["train_loss"] = train_sum / n;
    row["val_loss"] = val_sum / n;
    row["test_loss"] = test_sum / n;
    std::cout << cand.name << ": train=" << train_sum / n
              << " val=" << val_sum / n << " test=" << test_sum / n;
    if (ref) {
      const std::vector<double> losses = cand.test_losses();
      if (losses.size() != ref_losses.size()) {
        throw DimensionMismatch(cand.path + " and " + ref->path +
                                " have different run counts");
      }
      const ComparisonRow cmp = compare_paired(cand.name, losses, ref_losses,
                                               resamples, seed, jobs);
      row["mean_diff"] = cmp.mean_diff;
      row["lo68"] = cmp.lo68;
      row["hi68"] = cmp.hi68;
      row["lo95"] = cmp.lo95;
      row["hi95"] = cmp.hi95;
      std::cout << " diff=" << cmp.mean_diff << " [" << cmp.lo95 << ", "
                << cmp.hi95 << "]";
    }
    std::cout << '\n';
    rows.push_back(std::move(row));
  }
  Json doc;
  if (ref) doc["reference"] = ref->name;
  doc["rows"] = std::move(rows);
  emit(doc, out);
}

Json game_to_json(const Game& g) {
  Json j;
  j["u1"] = matrix_to_json(g.u1);
  j["u2"] = matrix_to_json(g.u2);
  return j;
}

void cmd_probe(const std::string& model_path, const std::string& check,
               int trials, std::uint64_t seed, double cmax, double cgap,
               bool negative, double b, const std::string& zetas_text,
               const std::string& out) {
  const TrainResult result = load_result(model_path);
  const ModelSpec spec = result.spec;
  const ParameterSet params = result.params;
  const BehavioralModel model = [&spec, &params](const Game& g) {
    return predict(spec, params, g);
  };

  Json doc;
  doc["model"] = model_name(spec);
  doc["check"] = check;
  if (check == "dominance") {
    const std::vector<double> zetas = parse_doubles(zetas_text, "zeta");
    const DominanceReport report =
        dominance_probe(model, 3, 3, zetas, trials, seed);
    Json curve = Json::array();
    for (std::size_t i = 0; i < zetas.size(); ++i) {
      Json point;
      point["zeta"] = report.zetas[i];
      point["min_prob"] = report.min_prob[i];
      point["modal_fraction"] = report.modal_fraction[i];
      curve.push_back(std::move(point));
      std::cout << "zeta=" << report.zetas[i]
                << " min_prob=" << report.min_prob[i]
                << " modal_fraction=" << report.modal_fraction[i] << '\n';
    }
    doc["trials"] = trials;
    doc["curve"] = std::move(curve);
  } else if (check == "other") {
    const OtherResponseReport report =
        other_responsiveness_probe(model, trials, seed);
    doc["responsive"] = report.responsive;
    doc["max_output_gap"] = report.max_output_gap;
    if (report.responsive) {
      doc["witness"] = Json::object();
      doc["witness"]["g"] = game_to_json(report.g);
      doc["witness"]["g_prime"] = game_to_json(report.g_prime);
    }
    std::cout << (report.responsive
                      ? "responds to opponent payoffs (gap "
                      : "no response to opponent payoffs found (gap ")
              << report.max_output_gap << ")\n";
  } else if (check == "theorem31") {
    const EmulationReport report =
        qbr_maxmax_deviation(model, cmax, cgap, negative, trials, seed);
    doc["trials"] = report.trials;
    doc["max_deviation"] = report.max_deviation;
    doc["matches"] = report.ok;
    if (!report.warning.empty()) doc["warning"] = report.warning;
    std::cout << "max deviation from quantal response to maxmax: "
              << report.max_deviation << '\n';
  } else if (check == "bottleneck") {
    auto theta_it = params.find("l0.p0.theta");
    if (spec.level0.kind != Level0Kind::kENet ||
        spec.level0.potentials != PotentialsKind::kLearned ||
        theta_it == params.end()) {
      throw Error(
          "bottleneck probe needs a learned-potential elementary model");
    }
    const Vector theta = theta_it->second.value.col(0);
    const BottleneckPair pair = make_bottleneck_pair(theta, b);
    const Behavior out_g = model(pair.g);
    const Behavior out_gp = model(pair.g_prime);
    const double output_gap = (out_g - out_gp).cwiseAbs().maxCoeff();
    const double p_dom_g = out_g(pair.dominant_row_g);
    const double p_dom_gp = out_gp(pair.dominant_row_g_prime);
    const double mix_weight = params.at("l0.mix").value(0, 0);
    const double bound = 1.0 - mix_weight / 2.0;
    doc["b"] = b;
    doc["potential_gap"] = pair.potential_gap;
    doc["output_gap"] = output_gap;
    doc["dominant_prob_g"] = p_dom_g;
    doc["dominant_prob_g_prime"] = p_dom_gp;
    doc["bound"] = bound;
    doc["bound_respected"] = std::min(p_dom_g, p_dom_gp) <= bound + 1e-9;
    std::cout << "output gap " << output_gap << "; dominant-action probs "
              << p_dom_g << " / " << p_dom_gp << " vs bound " << bound
              << '\n';
  } else {
    throw Error("unknown check \"" + check +
                "\" (want dominance, other, theorem31 or bottleneck)");
  }
  emit(doc, out);
}

void cmd_verify31(double cmax, double cgap, bool negative, int trials,
                  std::uint64_t seed, const std::string& out) {
  const EmulationReport report =
      theorem31_emulation_check(cmax, cgap, negative, trials, seed);
  std::cout << "certificate (" << (negative ? "negative" : "positive")
            << " payoffs, cmax=" << cmax << ", cgap=" << cgap << "): max "
            << "deviation " << report.max_deviation << " over "
            << report.trials << " trials: " << (report.ok ? "OK" : "FAIL")
            << '\n';
  if (!report.warning.empty()) {
    std::cout << "warning: " << report.warning << '\n';
  }
  if (!out.empty()) {
    Json doc;
    doc["negative"] = negative;
    doc["cmax"] = cmax;
    doc["cgap"] = cgap;
    doc["trials"] = report.trials;
    doc["max_deviation"] = report.max_deviation;
    doc["ok"] = report.ok;
    if (!report.warning.empty()) doc["warning"] = report.warning;
    save_json(doc, out);
  }
  if (!report.ok) {
    throw Error("certificate deviation exceeded tolerance");
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"behavioral game theory models: fitting, probing, reporting"};
  app.require_subcommand(1);

  try {
    // ingest ----------------------------------------------------------
    auto ingest_path = std::make_shared<std::string>();
    CLI::App* ingest =
        app.add_subcommand("ingest", "validate a dataset and summarize it");
    ingest->add_option("data", *ingest_path, "dataset JSON file")->required();
    ingest->callback([=]() { cmd_ingest(*ingest_path); });

    // synth -----------------------------------------------------------
    auto synth_flags = std::make_shared<ModelFlags>();
    auto synth_cfg = std::make_shared<SynthConfig>();
    auto synth_out = std::make_shared<std::string>();
    auto synth_teacher = std::make_shared<std::string>();
    auto synth_payoffs = std::make_shared<std::string>("normal");
    auto synth_lambda = std::make_shared<double>(-1.0);
    auto synth_tau = std::make_shared<double>(-1.0);
    CLI::App* synth = app.add_subcommand(
        "synth", "simulate a dataset from a known generating model");
    synth->add_option("--out", *synth_out, "output dataset file")->required();
    synth->add_option("--seed", synth_cfg->seed, "random seed")
        ->envname("BGT_SEED");
    synth->add_option("--games", synth_cfg->games, "number of games")
        ->capture_default_str();
    synth->add_option("--rows", synth_cfg->rows, "row actions per game")
        ->capture_default_str();
    synth->add_option("--cols", synth_cfg->cols, "column actions per game")
        ->capture_default_str();
    synth->add_option("--plays", synth_cfg->plays, "plays recorded per game")
        ->capture_default_str();
    synth->add_option("--payoffs", *synth_payoffs,
                      "payoff distribution: normal or uniform")
        ->capture_default_str();
    synth->add_option("--scale", synth_cfg->scale, "payoff spread")
        ->capture_default_str();
    synth
        ->add_flag("--standardized,!--raw", synth_cfg->standardize,
                   "standardize sampled payoffs (--raw keeps them as drawn)")
        ->capture_default_str();
    synth->add_option("--source", synth_cfg->source, "source label")
        ->capture_default_str();
    synth->add_option("--lambda", *synth_lambda,
                      "pin the generating quantal precision");
    synth->add_option("--tau", *synth_tau,
                      "pin the generating mean reasoning level");
    synth->add_option("--teacher-out", *synth_teacher,
                      "also write the generating parameters here");
    add_model_flags(synth, synth_flags.get());
    synth->callback([=]() {
      SynthConfig config = *synth_cfg;
      config.model = spec_from_flags(*synth_flags);
      config.payoffs = payoff_dist_from_string(*synth_payoffs);
      if (*synth_lambda > 0) config.lambda = *synth_lambda;
      if (*synth_tau > 0) config.tau = *synth_tau;
      cmd_synth(config, *synth_out, *synth_teacher);
    });

    // train / sweep ---------------------------------------------------
    struct FitFlags {
      std::string spec_path;
      std::string data_path;
      std::string out;
      std::uint64_t seed = 0;
      bool seed_given = false;
      int epochs = -1;
      double lr = -1.0;
      double l1 = -1.0;
      double dropout = -1.0;
      int jobs = 1;
    };
    auto add_fit_flags = [](CLI::App* cmd, FitFlags* f) {
      cmd->add_option("--spec", f->spec_path, "model spec JSON file")
          ->required();
      cmd->add_option("--data", f->data_path, "dataset JSON file")->required();
      cmd->add_option("--out", f->out, "output result file")->required();
      cmd->add_option("--seed", f->seed, "random seed (overrides the spec)")
          ->envname("BGT_SEED")
          ->trigger_on_parse()
          ->each([f](const std::string&) { f->seed_given = true; });
      cmd->add_option("--epochs", f->epochs, "epochs (overrides the spec)");
      cmd->add_option("--lr", f->lr, "learning rate (overrides the spec)");
      cmd->add_option("--l1", f->l1, "L1 penalty (overrides the spec)");
      cmd->add_option("--dropout", f->dropout,
                      "dropout probability (overrides the spec)");
    };
    auto fit_config = [](const FitFlags& f, const Json& spec_doc) {
      TrainConfig config = train_overrides_from_json(spec_doc, TrainConfig{});
      if (f.seed_given) config.seed = f.seed;
      if (f.epochs >= 0) config.epochs = f.epochs;
      if (f.lr >= 0) config.lr = f.lr;
      if (f.l1 >= 0) config.l1 = f.l1;
      if (f.dropout >= 0) config.dropout = f.dropout;
      return config;
    };

    auto train_flags = std::make_shared<FitFlags>();
    auto train_reps = std::make_shared<int>(1);
    CLI::App* train_cmd =
        app.add_subcommand("train", "fit one model to a dataset");
    add_fit_flags(train_cmd, train_flags.get());
    train_cmd->add_option("--replications", *train_reps,
                          "train once per seed-derived split assignment")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    train_cmd->callback([=]() {
      const Json spec_doc = load_json(train_flags->spec_path);
      cmd_train(spec_from_json(spec_doc),
                load_dataset(train_flags->data_path),
                fit_config(*train_flags, spec_doc), *train_reps,
                train_flags->out);
    });

    auto sweep_flags = std::make_shared<FitFlags>();
    auto sweep_grid = std::make_shared<std::string>();
    CLI::App* sweep_cmd = app.add_subcommand(
        "sweep", "grid-search L1 and dropout, keep the best by validation");
    add_fit_flags(sweep_cmd, sweep_flags.get());
    sweep_cmd->add_option("--grid", *sweep_grid, "grid: enet or gamenet")
        ->required();
    sweep_cmd->add_option("--jobs", sweep_flags->jobs, "parallel trainings")
        ->check(CLI::PositiveNumber);
    sweep_cmd->callback([=]() {
      SweepGrid grid;
      if (*sweep_grid == "enet") {
        grid = SweepGrid::kENet;
      } else if (*sweep_grid == "gamenet") {
        grid = SweepGrid::kGameNet;
      } else {
        throw Error("unknown grid \"" + *sweep_grid +
                    "\" (want enet or gamenet)");
      }
      const Json spec_doc = load_json(sweep_flags->spec_path);
      cmd_sweep(spec_from_json(spec_doc),
                load_dataset(sweep_flags->data_path),
                fit_config(*sweep_flags, spec_doc), grid, sweep_flags->jobs,
                sweep_flags->out);
    });

    // compare / report --------------------------------------------------
    auto cmp_results = std::make_shared<std::string>();
    auto cmp_reference = std::make_shared<std::string>();
    auto cmp_level = std::make_shared<double>(0.95);
    auto cmp_resamples = std::make_shared<int>(10000);
    auto cmp_seed = std::make_shared<std::uint64_t>(0);
    auto cmp_jobs = std::make_shared<int>(1);
    auto cmp_out = std::make_shared<std::string>();
    CLI::App* compare_cmd = app.add_subcommand(
        "compare", "paired-difference intervals against a reference model");
    compare_cmd
        ->add_option("--results", *cmp_results,
                     "comma-separated result files")
        ->required();
    compare_cmd->add_option("--reference", *cmp_reference,
                            "reference result (path, stem or model name)")
        ->required();
    compare_cmd->add_option("--level", *cmp_level, "headline level")
        ->check(CLI::IsMember({0.68, 0.95}))
        ->capture_default_str();
    compare_cmd->add_option("--resamples", *cmp_resamples,
                            "bootstrap resamples")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    compare_cmd->add_option("--seed", *cmp_seed, "bootstrap seed")
        ->envname("BGT_SEED");
    compare_cmd->add_option("--jobs", *cmp_jobs, "parallel bootstrap chunks")
        ->check(CLI::PositiveNumber);
    compare_cmd->add_option("--out", *cmp_out, "output table file");
    compare_cmd->callback([=]() {
      cmd_compare(split_list(*cmp_results), *cmp_reference, *cmp_level,
                  *cmp_resamples, *cmp_seed, *cmp_jobs, *cmp_out);
    });

    auto rep_results = std::make_shared<std::string>();
    auto rep_reference = std::make_shared<std::string>();
    auto rep_resamples = std::make_shared<int>(10000);
    auto rep_seed = std::make_shared<std::uint64_t>(0);
    auto rep_jobs = std::make_shared<int>(1);
    auto rep_out = std::make_shared<std::string>();
    CLI::App* report_cmd = app.add_subcommand(
        "report", "absolute losses, plus paired intervals when a reference "
                  "is given");
    report_cmd
        ->add_option("--results", *rep_results, "comma-separated result files")
        ->required();
    report_cmd->add_option("--reference", *rep_reference,
                           "optional reference result");
    report_cmd->add_option("--resamples", *rep_resamples,
                           "bootstrap resamples")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    report_cmd->add_option("--seed", *rep_seed, "bootstrap seed")
        ->envname("BGT_SEED");
    report_cmd->add_option("--jobs", *rep_jobs, "parallel bootstrap chunks")
        ->check(CLI::PositiveNumber);
    report_cmd->add_option("--out", *rep_out, "output table file");
    report_cmd->callback([=]() {
      cmd_report(split_list(*rep_results), *rep_reference, *rep_resamples,
                 *rep_seed, *rep_jobs, *rep_out);
    });

    // probe / verify-theorem31 ------------------------------------------
    auto probe_model = std::make_shared<std::string>();
    auto probe_check = std::make_shared<std::string>();
    auto probe_trials = std::make_shared<int>(200);
    auto probe_seed = std::make_shared<std::uint64_t>(0);
    auto probe_cmax = std::make_shared<double>(10.0);
    auto probe_cgap = std::make_shared<double>(0.1);
    auto probe_negative = std::make_shared<bool>(false);
    auto probe_b = std::make_shared<double>(10.0);
    auto probe_zetas = std::make_shared<std::string>("0.1,0.5,1,2");
    auto probe_out = std::make_shared<std::string>();
    CLI::App* probe_cmd = app.add_subcommand(
        "probe", "run a behavioral property probe against a fitted model");
    probe_cmd->add_option("--model", *probe_model, "result JSON file")
        ->required();
    probe_cmd
        ->add_option("--check", *probe_check,
                     "dominance, other, theorem31 or bottleneck")
        ->required();
    probe_cmd->add_option("--trials", *probe_trials, "probe trials")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    probe_cmd->add_option("--seed", *probe_seed, "random seed")
        ->envname("BGT_SEED");
    probe_cmd->add_option("--cmax", *probe_cmax, "payoff bound (theorem31)")
        ->capture_default_str();
    probe_cmd->add_option("--cgap", *probe_cgap, "pairwise gap (theorem31)")
        ->capture_default_str();
    probe_cmd->add_flag("--negative", *probe_negative,
                        "allow negative payoffs (theorem31)");
    probe_cmd->add_option("--b", *probe_b, "pair scale (bottleneck)")
        ->capture_default_str();
    probe_cmd->add_option("--zetas", *probe_zetas,
                          "comma-separated margins (dominance)")
        ->capture_default_str();
    probe_cmd->add_option("--out", *probe_out, "output report file");
    probe_cmd->callback([=]() {
      cmd_probe(*probe_model, *probe_check, *probe_trials, *probe_seed,
                *probe_cmax, *probe_cgap, *probe_negative, *probe_b,
                *probe_zetas, *probe_out);
    });

    auto v31_cmax = std::make_shared<double>(10.0);
    auto v31_cgap = std::make_shared<double>(0.1);
    auto v31_trials = std::make_shared<int>(1000);
    auto v31_negative = std::make_shared<bool>(false);
    auto v31_seed = std::make_shared<std::uint64_t>(0);
    auto v31_out = std::make_shared<std::string>();
    CLI::App* v31 = app.add_subcommand(
        "verify-theorem31",
        "check the hand-built feature network against its closed form");
    v31->add_option("--cmax", *v31_cmax, "payoff bound")->capture_default_str();
    v31->add_option("--cgap", *v31_cgap, "pairwise payoff gap")
        ->capture_default_str();
    v31->add_option("--trials", *v31_trials, "random games to test")
        ->capture_default_str();
    v31->add_flag("--negative", *v31_negative, "allow negative payoffs");
    v31->add_option("--seed", *v31_seed, "random seed")->envname("BGT_SEED");
    v31->add_option("--out", *v31_out, "output report file");
    v31->callback([=]() {
      cmd_verify31(*v31_cmax, *v31_cgap, *v31_negative, *v31_trials, *v31_seed,
                   *v31_out);
    });

    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const NonFiniteLoss& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace bgt

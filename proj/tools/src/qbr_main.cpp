// Copyright 2026 The qbr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qbr — quaternion knowledge-graph embeddings with bidirectional rotation
// and a learned distance-adaptive translation. Subcommands cover the whole
// workflow: train, eval, ablate, classify-relations, verify-patterns,
// export-embeddings, check-stats. Machine-readable records (JSON lines) go
// to stdout; human-readable tables go to stderr; every run writes one
// manifest describing the resolved configuration.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qbr/checkpoint.hpp"
#include "qbr/dataset.hpp"
#include "qbr/error.hpp"
#include "qbr/evaluator.hpp"
#include "qbr/model.hpp"
#include "qbr/patterns.hpp"
#include "qbr/presets.hpp"
#include "qbr/trainer.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr const char* kDataDirEnv = "QBR_DATA_DIR";

void emit(const json& record) { std::cout << record.dump() << "\n"; }

std::uint64_t fnv1a_file(const fs::path& path, std::uint64_t hash) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qbr::ConfigError("cannot open " + path.string());
  char buf[1 << 16];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    const auto n = in.gcount();
    for (std::streamsize i = 0; i < n; ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 0x100000001b3ull;
    }
  }
  return hash;
}

std::string hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// ---------------------------------------------------------------------------
// Dataset / hyperparameter resolution

struct DataArgs {
  std::string dataset;  // preset name or directory
  std::string train_path, valid_path, test_path;
};

struct ResolvedData {
  fs::path train, valid, test;
  const qbr::DatasetPreset* preset = nullptr;  // set when a preset named the dataset
};

ResolvedData resolve_data(const DataArgs& args, bool require_paths) {
  ResolvedData out;
  if (!args.dataset.empty()) out.preset = qbr::find_preset(args.dataset);

  if (!args.train_path.empty() || !args.valid_path.empty() || !args.test_path.empty()) {
    if (args.train_path.empty() || args.valid_path.empty() || args.test_path.empty()) {
      throw qbr::ConfigError("--train/--valid/--test must be given together");
    }
    out.train = args.train_path;
    out.valid = args.valid_path;
    out.test = args.test_path;
    return out;
  }
  if (args.dataset.empty()) {
    if (require_paths) {
      throw qbr::ConfigError("no dataset: pass --dataset <preset|dir> or --train/--valid/--test");
    }
    return out;
  }

  fs::path dir;
  if (out.preset != nullptr) {
    const char* root = std::getenv(kDataDirEnv);
    dir = fs::path(root != nullptr ? root : "data") / std::string(out.preset->directory);
  } else {
    dir = args.dataset;
  }
  out.train = dir / "train.txt";
  out.valid = dir / "valid.txt";
  out.test = dir / "test.txt";
  return out;
}

void add_data_options(CLI::App* cmd, DataArgs& args) {
  cmd->add_option("--dataset", args.dataset,
                  "Dataset preset (wn18rr, fb15k237, wn18, fb15k) or a directory "
                  "containing train.txt/valid.txt/test.txt");
  cmd->add_option("--train", args.train_path, "Train triples (TSV)");
  cmd->add_option("--valid", args.valid_path, "Validation triples (TSV)");
  cmd->add_option("--test", args.test_path, "Test triples (TSV)");
}

qbr::ModelVariant parse_variant(const std::string& name) {
  if (name == "full") return qbr::ModelVariant::full;
  if (name == "i" || name == "variant_i") return qbr::ModelVariant::variant_i;
  if (name == "ii" || name == "variant_ii") return qbr::ModelVariant::variant_ii;
  throw qbr::ConfigError("unknown variant '" + name + "' (expected full, i or ii)");
}

qbr::Split parse_split(const std::string& name) {
  if (name == "valid") return qbr::Split::valid;
  if (name == "test") return qbr::Split::test;
  throw qbr::ConfigError("unknown split '" + name + "' (expected valid or test)");
}

// Hyperparameters with Table-style per-dataset defaults; explicit flags win.
struct HyperArgs {
  std::optional<double> lr;
  std::optional<int> neg;
  std::optional<int> dim;
  std::optional<double> eta1, eta2;
  std::optional<int> epochs;
  std::optional<int> eval_every;
  std::optional<int> num_batches;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::string variant = "full";
  std::string preset;
};

void add_hyper_options(CLI::App* cmd, HyperArgs& args, bool with_variant) {
  cmd->add_option("--preset", args.preset,
                  "Hyperparameter preset (wn18rr, fb15k237, wn18, fb15k); "
                  "individual flags override preset values");
  cmd->add_option("--lr", args.lr, "Learning rate");
  cmd->add_option("--neg", args.neg, "Negatives sampled per positive");
  cmd->add_option("--dim", args.dim, "Embedding dimension n (must be divisible by 4)");
  cmd->add_option("--eta1", args.eta1, "Entity regularization rate");
  cmd->add_option("--eta2", args.eta2, "Relation regularization rate");
  cmd->add_option("--epochs", args.epochs, "Training epochs");
  cmd->add_option("--eval-every", args.eval_every, "Validation cadence in epochs");
  cmd->add_option("--num-batches", args.num_batches, "Batches per epoch");
  cmd->add_option("--seed", args.seed, "Random seed");
  cmd->add_option("--threads", args.threads, "Evaluation threads (0 = hardware)");
  if (with_variant) {
    cmd->add_option("--variant", args.variant, "Model variant: full, i or ii");
  }
}

qbr::TrainConfig resolve_config(const HyperArgs& args, const ResolvedData& data) {
  const qbr::DatasetPreset* preset = nullptr;
  if (!args.preset.empty()) {
    preset = qbr::find_preset(args.preset);
    if (preset == nullptr) throw qbr::ConfigError("unknown preset '" + args.preset + "'");
  } else {
    preset = data.preset;  // a preset-named --dataset also carries defaults
  }

  qbr::TrainConfig config;
  config.lr = args.lr.value_or(preset != nullptr ? preset->lr : 0.1);
  const int dim = args.dim.value_or(preset != nullptr ? preset->dim : 500);
  if (dim <= 0 || dim % 4 != 0) {
    throw qbr::ConfigError("--dim must be a positive multiple of 4, got " +
                           std::to_string(dim));
  }
  config.k = static_cast<std::size_t>(dim / 4);
  config.neg = args.neg.value_or(preset != nullptr ? preset->neg : 5);
  config.eta1 = args.eta1.value_or(preset != nullptr ? preset->eta1 : 0.5);
  config.eta2 = args.eta2.value_or(preset != nullptr ? preset->eta2 : 0.01);
  config.epochs = args.epochs.value_or(5000);
  config.eval_every = args.eval_every.value_or(100);
  config.num_batches = args.num_batches.value_or(100);
  config.seed = args.seed.value_or(1);
  config.eval_threads = args.threads.value_or(0);
  config.variant = parse_variant(args.variant);
  config.validate();
  return config;
}

// ---------------------------------------------------------------------------
// Manifest

class Manifest {
 public:
  Manifest(std::string command, fs::path path)
      : path_(std::move(path)), started_(std::chrono::steady_clock::now()) {
    body_["command"] = std::move(command);
    body_["version"] = kVersion;
  }

  json& body() { return body_; }

  void set_dataset(const ResolvedData& data) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (const auto* p : {&data.train, &data.valid, &data.test}) hash = fnv1a_file(*p, hash);
    body_["dataset"] = {{"train", data.train.string()},
                        {"valid", data.valid.string()},
                        {"test", data.test.string()},
                        {"checksum", "fnv1a:" + hex64(hash)}};
  }

  void set_config(const qbr::TrainConfig& config) {
    body_["config"] = {{"lr", config.lr},
                       {"dim", 4 * config.k},
                       {"k", config.k},
                       {"neg", config.neg},
                       {"eta1", config.eta1},
                       {"eta2", config.eta2},
                       {"num_batches", config.num_batches},
                       {"epochs", config.epochs},
                       {"eval_every", config.eval_every},
                       {"seed", config.seed},
                       {"variant", qbr::variant_name(config.variant)},
                       {"eval_threads", config.eval_threads}};
    body_["seed"] = config.seed;
    // Parameter updates are single-threaded; evaluation threads cannot
    // change ranks, so outputs are reproducible from this manifest.
    body_["deterministic"] = true;
  }

  void write() {
    body_["timings"]["total_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started_).count();
    std::ofstream out(path_);
    if (!out) throw qbr::ConfigError("cannot write manifest: " + path_.string());
    out << body_.dump(2) << "\n";
  }

 private:
  fs::path path_;
  json body_;
  std::chrono::steady_clock::time_point started_;
};

// ---------------------------------------------------------------------------
// Report rendering

json metrics_record(const char* type, const std::string& split, const std::string& scope,
                    const qbr::Metrics& m) {
  return {{"type", type},     {"split", split},   {"scope", scope},
          {"mr", m.mr},       {"mrr", m.mrr},     {"hits1", m.hits1},
          {"hits3", m.hits3}, {"hits10", m.hits10}, {"num_queries", m.num_queries}};
}

void print_metrics_row(const char* label, const qbr::Metrics& m) {
  std::fprintf(stderr, "%-10s %9.1f %8.4f %8.4f %8.4f %8.4f %10zu\n", label, m.mr, m.mrr,
               m.hits10, m.hits3, m.hits1, m.num_queries);
}

void print_report(const std::string& split, const qbr::EvalReport& report) {
  std::fprintf(stderr, "\n%s split, filtered ranking\n", split.c_str());
  std::fprintf(stderr, "%-10s %9s %8s %8s %8s %8s %10s\n", "scope", "MR", "MRR", "H@10",
               "H@3", "H@1", "queries");
  print_metrics_row("overall", report.overall);
  print_metrics_row("head", report.head);
  print_metrics_row("tail", report.tail);
  for (int c = 0; c < 4; ++c) {
    const auto cat = static_cast<qbr::RelationCategory>(c);
    print_metrics_row(qbr::category_name(cat), report.per_category[static_cast<std::size_t>(c)]);
  }
}

void emit_report(const std::string& split, const qbr::EvalReport& report) {
  emit(metrics_record("eval_report", split, "overall", report.overall));
  emit(metrics_record("eval_report", split, "head", report.head));
  emit(metrics_record("eval_report", split, "tail", report.tail));
  for (int c = 0; c < 4; ++c) {
    const auto cat = static_cast<qbr::RelationCategory>(c);
    emit(metrics_record("eval_report", split, qbr::category_name(cat),
                        report.per_category[static_cast<std::size_t>(c)]));
  }
  print_report(split, report);
}

json checkpoint_info_record(const qbr::CheckpointInfo& info) {
  return {{"type", "checkpoint_info"},
          {"entities", info.num_entities},
          {"relations", info.num_relations},
          {"k", info.k},
          {"dim", info.dim()},
          {"lambda", info.lambda},
          {"variant", qbr::variant_name(info.variant)},
          {"parameter_count", info.parameter_count()}};
}

qbr::TrainObserver streaming_observer() {
  return [](const qbr::TrainEvent& event) {
    if (event.epoch != nullptr) {
      emit({{"type", "epoch"},
            {"epoch", event.epoch->epoch},
            {"loss", event.epoch->loss},
            {"seconds", event.epoch->seconds}});
    } else if (event.validation != nullptr) {
      const auto& v = *event.validation;
      emit({{"type", "validation"},
            {"epoch", v.epoch},
            {"mr", v.mr},
            {"mrr", v.mrr},
            {"hits1", v.hits1},
            {"hits3", v.hits3},
            {"hits10", v.hits10}});
      std::fprintf(stderr, "epoch %6d  valid MRR %.4f  H@10 %.4f\n", v.epoch, v.mrr, v.hits10);
    }
  };
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_train(const DataArgs& data_args, const HyperArgs& hyper, const std::string& out,
              const std::string& manifest_path, bool dry_run) {
  Manifest manifest("train", manifest_path.empty() ? out + ".manifest.json" : manifest_path);
  const ResolvedData data = resolve_data(data_args, /*require_paths=*/!dry_run);
  const qbr::TrainConfig config = resolve_config(hyper, data);
  manifest.set_config(config);
  manifest.body()["outputs"] = {{"checkpoint", out}};

  if (dry_run) {
    manifest.body()["dry_run"] = true;
    manifest.write();
    emit({{"type", "resolved_config"}, {"config", manifest.body()["config"]}});
    return 0;
  }
  manifest.set_dataset(data);

  const qbr::TripleStore store = qbr::load_dataset(data.train, data.valid, data.test);
  emit({{"type", "dataset"},
        {"entities", store.num_entities()},
        {"relations", store.num_relations()},
        {"train", store.train.size()},
        {"valid", store.valid.size()},
        {"test", store.test.size()}});

  const auto t0 = std::chrono::steady_clock::now();
  const qbr::TrainResult result = qbr::train(store, config, streaming_observer());
  manifest.body()["timings"]["train_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  qbr::save_checkpoint(out, result.params, config.variant, &store);
  manifest.body()["best_epoch"] = result.log.best_epoch;
  manifest.body()["best_valid_hits10"] = result.log.best_hits10;
  manifest.write();

  emit(checkpoint_info_record(qbr::read_checkpoint_info(out)));
  emit({{"type", "train_summary"},
        {"best_epoch", result.log.best_epoch},
        {"best_valid_hits10", result.log.best_hits10},
        {"checkpoint", out}});
  std::fprintf(stderr, "checkpoint written to %s (best epoch %d, valid H@10 %.4f)\n",
               out.c_str(), result.log.best_epoch, result.log.best_hits10);
  return 0;
}

int cmd_eval(const DataArgs& data_args, const std::string& checkpoint,
             const std::string& split_name, const std::string& variant_flag, int threads,
             const std::string& manifest_path) {
  Manifest manifest("eval", manifest_path.empty() ? "qbr-eval.manifest.json" : manifest_path);
  const ResolvedData data = resolve_data(data_args, true);
  manifest.set_dataset(data);
  const qbr::Split split = parse_split(split_name);

  const qbr::LoadedCheckpoint loaded = qbr::load_checkpoint(checkpoint);
  const qbr::ModelVariant variant =
      variant_flag.empty() ? loaded.variant : parse_variant(variant_flag);
  const qbr::TripleStore store = qbr::load_dataset(data.train, data.valid, data.test);
  if (store.num_entities() != loaded.params.num_entities() ||
      store.num_relations() != loaded.params.num_relations()) {
    throw qbr::ConfigError("checkpoint shape does not match dataset vocabulary");
  }

  manifest.body()["config"] = {{"checkpoint", checkpoint},
                               {"split", split_name},
                               {"variant", qbr::variant_name(variant)},
                               {"threads", threads}};
  manifest.body()["deterministic"] = true;

  emit(checkpoint_info_record(qbr::read_checkpoint_info(checkpoint)));
  const qbr::EvalReport report = qbr::evaluate(loaded.params, store, split, variant, threads);
  emit_report(split_name, report);
  manifest.body()["results"] = {{"mr", report.overall.mr},
                                {"mrr", report.overall.mrr},
                                {"hits1", report.overall.hits1},
                                {"hits3", report.overall.hits3},
                                {"hits10", report.overall.hits10}};
  manifest.write();
  return 0;
}

int cmd_ablate(const DataArgs& data_args, const HyperArgs& hyper, const std::string& out_dir,
               const std::string& manifest_path, bool dry_run) {
  Manifest manifest("ablate", manifest_path.empty() ? (fs::path(out_dir) / "ablate.manifest.json").string()
                                                    : manifest_path);
  const ResolvedData data = resolve_data(data_args, !dry_run);
  qbr::TrainConfig config = resolve_config(hyper, data);
  fs::create_directories(out_dir);
  manifest.set_config(config);

  if (dry_run) {
    manifest.body()["dry_run"] = true;
    manifest.write();
    emit({{"type", "resolved_config"}, {"config", manifest.body()["config"]}});
    return 0;
  }
  manifest.set_dataset(data);

  const qbr::TripleStore store = qbr::load_dataset(data.train, data.valid, data.test);
  const qbr::ModelVariant variants[] = {qbr::ModelVariant::full, qbr::ModelVariant::variant_i,
                                        qbr::ModelVariant::variant_ii};
  json rows = json::array();
  for (const auto variant : variants) {
    config.variant = variant;  // identical seed and budget across variants
    const qbr::TrainResult result = qbr::train(store, config, streaming_observer());
    const fs::path ckpt = fs::path(out_dir) / (std::string("ablate-") +
                                               qbr::variant_name(variant) + ".ckpt");
    qbr::save_checkpoint(ckpt, result.params, variant, &store);
    const qbr::EvalReport test_report =
        qbr::evaluate(result.params, store, qbr::Split::test, variant, config.eval_threads);
    json row = metrics_record("ablation_row", "test", qbr::variant_name(variant),
                              test_report.overall);
    row["variant"] = qbr::variant_name(variant);
    row["checkpoint"] = ckpt.string();
    row["best_valid_hits10"] = result.log.best_hits10;
    emit(row);
    rows.push_back(row);
  }
  std::fprintf(stderr, "\nablation (test split)\n%-10s %9s %8s %8s %8s %8s\n", "variant",
               "MR", "MRR", "H@10", "H@3", "H@1");
  for (const auto& row : rows) {
    std::fprintf(stderr, "%-10s %9.1f %8.4f %8.4f %8.4f %8.4f\n",
                 row["variant"].get<std::string>().c_str(), row["mr"].get<double>(),
                 row["mrr"].get<double>(), row["hits10"].get<double>(),
                 row["hits3"].get<double>(), row["hits1"].get<double>());
  }
  manifest.body()["results"] = rows;
  manifest.write();
  return 0;
}

int cmd_classify(const DataArgs& data_args, const std::string& manifest_path) {
  Manifest manifest("classify-relations",
                    manifest_path.empty() ? "qbr-classify.manifest.json" : manifest_path);
  const ResolvedData data = resolve_data(data_args, true);
  manifest.set_dataset(data);
  const qbr::TripleStore store = qbr::load_dataset(data.train, data.valid, data.test);
  const qbr::RelationTypology typology = qbr::classify_relations(store);

  for (std::size_t r = 0; r < store.num_relations(); ++r) {
    emit({{"type", "relation_category"},
          {"relation", store.relations.name_of(static_cast<std::int32_t>(r))},
          {"eta_head", typology.eta_head[r]},
          {"eta_tail", typology.eta_tail[r]},
          {"category", qbr::category_name(typology.category[r])}});
  }
  std::fprintf(stderr, "%-8s %10s\n", "category", "test");
  json summary = json::array();
  for (int c = 0; c < 4; ++c) {
    const auto cat = static_cast<qbr::RelationCategory>(c);
    const auto count = typology.test_triple_counts[static_cast<std::size_t>(c)];
    emit({{"type", "category_summary"},
          {"category", qbr::category_name(cat)},
          {"test_triples", count}});
    summary.push_back({{"category", qbr::category_name(cat)}, {"test_triples", count}});
    std::fprintf(stderr, "%-8s %10zu\n", qbr::category_name(cat), count);
  }
  manifest.body()["results"] = summary;
  manifest.write();
  return 0;
}

int cmd_verify_patterns(std::size_t k, int trials, std::uint64_t seed,
                        const std::string& manifest_path) {
  Manifest manifest("verify-patterns",
                    manifest_path.empty() ? "qbr-verify.manifest.json" : manifest_path);
  manifest.body()["config"] = {{"k", k}, {"trials", trials}, {"seed", seed}};
  constexpr double tol = 1e-9;

  qbr::Rng rng = qbr::make_rng(seed, 0x9a77);
  const qbr::PatternReport reports[] = {
      qbr::verify_symmetry(trials, k, tol, rng),
      qbr::verify_antisymmetry(trials, k, rng),
      qbr::verify_inversion(trials, k, tol, rng),
      qbr::verify_composition(trials, k, tol, rng),
  };

  bool all_ok = true;
  std::fprintf(stderr, "%-14s %8s %14s %10s  %s\n", "pattern", "trials", "max|dev|",
               "fraction", "verdict");
  json rows = json::array();
  for (const auto& report : reports) {
    json extra = json::object();
    for (const auto& [key, value] : report.extra) extra[key] = value;
    json row = {{"type", "pattern_report"},
                {"pattern", qbr::pattern_name(report.pattern)},
                {"trials", report.trials},
                {"k", report.k},
                {"tolerance", report.tolerance},
                {"max_abs_deviation", report.max_abs_deviation},
                {"inequality_fraction", report.inequality_fraction},
                {"verdict", qbr::verdict_name(report.verdict)},
                {"extra", extra}};
    emit(row);
    rows.push_back(row);
    std::fprintf(stderr, "%-14s %8d %14.3e %10.4f  %s\n", qbr::pattern_name(report.pattern),
                 report.trials, report.max_abs_deviation, report.inequality_fraction,
                 qbr::verdict_name(report.verdict));
    all_ok = all_ok && report.verdict != qbr::PatternVerdict::failed;
  }
  manifest.body()["results"] = rows;
  manifest.write();
  return all_ok ? 0 : 1;
}

int cmd_export(const DataArgs& data_args, const std::string& checkpoint,
               const std::string& queries_path, const std::string& out_path,
               const std::string& manifest_path) {
  Manifest manifest("export-embeddings",
                    manifest_path.empty() ? "qbr-export.manifest.json" : manifest_path);
  const ResolvedData data = resolve_data(data_args, true);
  manifest.set_dataset(data);
  const qbr::TripleStore store = qbr::load_dataset(data.train, data.valid, data.test);
  const qbr::LoadedCheckpoint loaded = qbr::load_checkpoint(checkpoint);
  if (store.num_entities() != loaded.params.num_entities()) {
    throw qbr::ConfigError("checkpoint shape does not match dataset vocabulary");
  }

  std::vector<std::pair<std::string, std::string>> queries;
  {
    std::ifstream in(queries_path);
    if (!in) throw qbr::ConfigError("cannot open queries file: " + queries_path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      const auto tab = line.find('\t');
      if (tab == std::string::npos) {
        throw qbr::ParseError(queries_path, line_no, "expected head<TAB>relation");
      }
      queries.emplace_back(line.substr(0, tab), line.substr(tab + 1));
    }
  }

  qbr::ExportSummary summary;
  if (out_path == "-") {
    summary = qbr::export_embeddings(loaded.params, store, queries, std::cout);
  } else {
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw qbr::ConfigError("cannot write " + out_path);
    summary = qbr::export_embeddings(loaded.params, store, queries, out);
  }
  for (const auto& warning : summary.warnings) {
    std::fprintf(stderr, "warning: %s\n", warning.c_str());
  }
  std::fprintf(stderr, "exported %zu groups, %zu rows\n", summary.groups, summary.rows);
  manifest.body()["config"] = {{"checkpoint", checkpoint}, {"queries", queries_path}};
  manifest.body()["outputs"] = {{"export", out_path}};
  manifest.body()["results"] = {{"groups", summary.groups},
                                {"rows", summary.rows},
                                {"warnings", summary.warnings}};
  manifest.write();
  return 0;
}

int cmd_check_stats(const DataArgs& data_args, const std::string& expect,
                    const std::string& manifest_path) {
  Manifest manifest("check-stats",
                    manifest_path.empty() ? "qbr-check-stats.manifest.json" : manifest_path);
  const ResolvedData data = resolve_data(data_args, true);
  manifest.set_dataset(data);
  const qbr::DatasetPreset* preset = qbr::find_preset(expect);
  if (preset == nullptr) throw qbr::ConfigError("unknown stats preset '" + expect + "'");

  const qbr::TripleStore store = qbr::load_dataset(data.train, data.valid, data.test);
  const qbr::StatsReport report = qbr::check_stats(store, preset->stats);

  json mismatches = json::array();
  for (const auto& m : report.mismatches) {
    mismatches.push_back({{"field", m.field}, {"expected", m.expected}, {"actual", m.actual}});
    std::fprintf(stderr, "mismatch %s: expected %lld, actual %lld\n", m.field.c_str(),
                 static_cast<long long>(m.expected), static_cast<long long>(m.actual));
  }
  emit({{"type", "stats_check"},
        {"preset", std::string(preset->name)},
        {"pass", report.pass},
        {"entities", store.num_entities()},
        {"relations", store.num_relations()},
        {"train", store.train.size()},
        {"valid", store.valid.size()},
        {"test", store.test.size()},
        {"mismatches", mismatches}});
  std::fprintf(stderr, "check-stats %s: %s\n", preset->name.data(),
               report.pass ? "PASS" : "FAIL");
  manifest.body()["results"] = {{"pass", report.pass}, {"mismatches", mismatches}};
  manifest.write();
  return report.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qbr: quaternion knowledge-graph embeddings with bidirectional rotation "
               "and distance-adaptive translation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  // train
  auto* train_cmd = app.add_subcommand("train", "Train a model and write a checkpoint");
  DataArgs train_data;
  HyperArgs train_hyper;
  std::string train_out = "model.ckpt";
  std::string train_manifest;
  bool train_dry = false;
  add_data_options(train_cmd, train_data);
  add_hyper_options(train_cmd, train_hyper, /*with_variant=*/true);
  train_cmd->add_option("--out", train_out, "Checkpoint output path");
  train_cmd->add_option("--manifest", train_manifest, "Manifest path");
  train_cmd->add_flag("--dry-run", train_dry, "Resolve the configuration and exit");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Filtered link-prediction evaluation");
  DataArgs eval_data;
  std::string eval_ckpt, eval_split = "test", eval_variant, eval_manifest;
  int eval_threads = 0;
  add_data_options(eval_cmd, eval_data);
  eval_cmd->add_option("--checkpoint", eval_ckpt, "Checkpoint path")->required();
  eval_cmd->add_option("--split", eval_split, "valid or test");
  eval_cmd->add_option("--variant", eval_variant, "Override the checkpoint's variant");
  eval_cmd->add_option("--threads", eval_threads, "Evaluation threads (0 = hardware)");
  eval_cmd->add_option("--manifest", eval_manifest, "Manifest path");

  // ablate
  auto* ablate_cmd =
      app.add_subcommand("ablate", "Train full, variant_i and variant_ii under one budget");
  DataArgs ablate_data;
  HyperArgs ablate_hyper;
  std::string ablate_out = "ablation";
  std::string ablate_manifest;
  bool ablate_dry = false;
  add_data_options(ablate_cmd, ablate_data);
  add_hyper_options(ablate_cmd, ablate_hyper, /*with_variant=*/false);
  ablate_cmd->add_option("--out-dir", ablate_out, "Directory for the three checkpoints");
  ablate_cmd->add_option("--manifest", ablate_manifest, "Manifest path");
  ablate_cmd->add_flag("--dry-run", ablate_dry, "Resolve the configuration and exit");

  // classify-relations
  auto* classify_cmd =
      app.add_subcommand("classify-relations", "Relation cardinality categories");
  DataArgs classify_data;
  std::string classify_manifest;
  add_data_options(classify_cmd, classify_data);
  classify_cmd->add_option("--manifest", classify_manifest, "Manifest path");

  // verify-patterns
  auto* verify_cmd =
      app.add_subcommand("verify-patterns", "Numerical relation-pattern verification");
  std::size_t verify_k = 4;
  int verify_trials = 10000;
  std::uint64_t verify_seed = 1;
  std::string verify_manifest;
  verify_cmd->add_option("--k", verify_k, "Quaternion component count");
  verify_cmd->add_option("--trials", verify_trials, "Random trials per pattern");
  verify_cmd->add_option("--seed", verify_seed, "Random seed");
  verify_cmd->add_option("--manifest", verify_manifest, "Manifest path");

  // export-embeddings
  auto* export_cmd =
      app.add_subcommand("export-embeddings", "Write answer-entity embeddings per query");
  DataArgs export_data;
  std::string export_ckpt, export_queries, export_out = "-", export_manifest;
  add_data_options(export_cmd, export_data);
  export_cmd->add_option("--checkpoint", export_ckpt, "Checkpoint path")->required();
  export_cmd->add_option("--queries", export_queries, "File of head<TAB>relation lines")
      ->required();
  export_cmd->add_option("--out", export_out, "Output path ('-' = stdout)");
  export_cmd->add_option("--manifest", export_manifest, "Manifest path");

  // check-stats
  auto* stats_cmd = app.add_subcommand("check-stats", "Compare counts to a published preset");
  DataArgs stats_data;
  std::string stats_expect, stats_manifest;
  add_data_options(stats_cmd, stats_data);
  stats_cmd->add_option("--expect-stats", stats_expect, "Preset name to compare against")
      ->required();
  stats_cmd->add_option("--manifest", stats_manifest, "Manifest path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (train_cmd->parsed()) {
      return cmd_train(train_data, train_hyper, train_out, train_manifest, train_dry);
    }
    if (eval_cmd->parsed()) {
      return cmd_eval(eval_data, eval_ckpt, eval_split, eval_variant, eval_threads,
                      eval_manifest);
    }
    if (ablate_cmd->parsed()) {
      return cmd_ablate(ablate_data, ablate_hyper, ablate_out, ablate_manifest, ablate_dry);
    }
    if (classify_cmd->parsed()) return cmd_classify(classify_data, classify_manifest);
    if (verify_cmd->parsed()) {
      return cmd_verify_patterns(verify_k, verify_trials, verify_seed, verify_manifest);
    }
    if (export_cmd->parsed()) {
      return cmd_export(export_data, export_ckpt, export_queries, export_out, export_manifest);
    }
    if (stats_cmd->parsed()) return cmd_check_stats(stats_data, stats_expect, stats_manifest);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

// Copyright 2026 The jguard Authors.
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

#include "jguard/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "jguard/attack.hpp"
#include "jguard/corpus.hpp"
#include "jguard/detector.hpp"
#include "jguard/embedding.hpp"
#include "jguard/error.hpp"
#include "jguard/eval.hpp"
#include "jguard/jfeatures.hpp"
#include "jguard/model_io.hpp"
#include "jguard/random.hpp"
#include "jguard/report.hpp"

namespace jguard::cli {
namespace {

namespace fs = std::filesystem;

struct EmbeddingArgs {
  std::string path;
  std::string post_path;
  bool pseudo = false;
  int dim = 0;
};

struct Args {
  std::uint64_t seed = 0;

  std::string in, out, train, val, test, model, out_dir, paraphrases;
  std::vector<std::string> inputs;
  bool raw = false;
  std::string ratios = "7:2:1";
  std::string kind = "cyrillic";
  std::string name;
  std::string generator;

  LrConfig lr;
  TrainConfig fusion;
  bool end_to_end = false;
  int guidance_hidden = 0;
  int repeats = 10;

  EmbeddingArgs emb;
};

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw DataError("cannot write '" + path.string() + "'");
  file << content;
  if (!file) throw DataError("write failed for '" + path.string() + "'");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

std::string format_g9(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

std::optional<EmbeddingProvider> embeddings_from(const EmbeddingArgs& e, std::uint64_t seed,
                                                 bool post = false) {
  const std::string& path = post && !e.post_path.empty() ? e.post_path : e.path;
  if (!path.empty() && e.pseudo) throw UsageError("--embeddings and --pseudo-embeddings are exclusive");
  if (!path.empty()) return EmbeddingProvider::from_table(read_embeddings(path));
  if (e.pseudo) {
    if (e.dim < 1) throw UsageError("--pseudo-embeddings needs --dim >= 1");
    return EmbeddingProvider::pseudo(e.dim, seed, post ? "post" : "");
  }
  return std::nullopt;
}

std::string detector_name(const Args& a, const AnyModel& model) {
  if (!a.name.empty()) return a.name;
  return std::holds_alternative<FusionModel>(model) ? "Fusion" : "LR+JF";
}

AttackSpec attack_spec(const Args& a) {
  if (a.kind == "cyrillic") return AttackSpec::cyrillic();
  if (a.kind == "identity") return AttackSpec::identity();
  if (a.kind == "paraphrase") {
    if (a.paraphrases.empty()) throw UsageError("--kind paraphrase needs --paraphrases");
    return AttackSpec::paraphrase(a.paraphrases);
  }
  throw UsageError("unknown attack kind '" + a.kind + "'");
}

void cmd_extract(const Args& a, std::ostream&) {
  const Corpus corpus = load_corpus(a.in);
  std::vector<std::string_view> texts;
  for (const Article& art : corpus.articles) texts.emplace_back(art.text);
  const auto features = extract_batch(texts, !a.raw);

  std::string csv = "id,label";
  for (const auto& n : kFeatureNames) csv += "," + std::string(n);
  csv += '\n';
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    csv += csv_field(corpus.articles[k].id) + "," + std::to_string(corpus.articles[k].label);
    for (int f = 0; f < kNumFeatures; ++f) csv += "," + format_g9(features[k].values[f]);
    csv += '\n';
  }
  write_text(a.out, csv);
}

void cmd_split(const Args& a, std::ostream&) {
  const Corpus corpus = load_corpus(a.in);
  const CorpusSplit split = split_corpus(corpus, parse_split_ratios(a.ratios, a.seed));
  const fs::path dir = a.out_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create '" + dir.string() + "'");
  write_corpus(split.train, dir / "train.jsonl");
  write_corpus(split.test, dir / "test.jsonl");
  write_corpus(split.val, dir / "val.jsonl");
}

void cmd_train_lr(Args a, std::ostream&) {
  a.lr.seed = a.seed;
  const Corpus train = load_corpus(a.train);
  std::vector<std::string_view> texts;
  for (const Article& art : train.articles) texts.emplace_back(art.text);
  const LrModel model = train_lr(extract_batch(texts), labels_of(train), a.lr);
  save_model(model, a.out, config_digest(a.lr.canonical(), train.name));
}

FusionDataset dataset_for(const Corpus& corpus, const EmbeddingProvider& emb) {
  std::vector<std::string_view> texts;
  for (const Article& art : corpus.articles) texts.emplace_back(art.text);
  return {emb.matrix_for(corpus), feature_matrix(extract_batch(texts)), labels_of(corpus)};
}

void cmd_train_fusion(Args a, std::ostream& out) {
  TrainConfig cfg = a.end_to_end ? TrainConfig::end_to_end_preset() : a.fusion;
  cfg.seed = a.seed;
  if (a.end_to_end) {
    cfg.max_epochs = a.fusion.max_epochs;
    cfg.patience = a.fusion.patience;
    cfg.batch_size = a.fusion.batch_size;
  }
  cfg.validate();
  const auto emb = embeddings_from(a.emb, a.seed);
  if (!emb) throw UsageError("train-fusion needs --embeddings or --pseudo-embeddings");
  const Corpus train = load_corpus(a.train);
  const Corpus val = load_corpus(a.val);

  FusionShape shape;
  shape.embedding_dim = emb->dim();
  shape.feature_dim = kNumFeatures;
  shape.guidance_hidden = a.guidance_hidden;
  FusionModel initial = init_model(shape, derive_seed(a.seed, fnv1a64("fusion-init")));
  initial.dropout_rate = cfg.dropout_rate;

  const TrainResult result = train_fusion(initial, dataset_for(train, *emb), dataset_for(val, *emb), cfg);
  for (const EpochStats& s : result.history) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "epoch %d loss %.6f val_auroc %.6f\n", s.epoch, s.train_loss,
                  s.val_auroc);
    out << buf;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "best_epoch %d val_auroc %.6f\n", result.best_epoch,
                result.best_val_auroc);
  out << buf;
  save_model(result.model, a.out, config_digest(cfg.canonical(), train.name));
}

void cmd_eval(const Args& a, std::ostream&) {
  const ModelFile file = load_model_file(a.model);
  const Corpus test = load_corpus(a.test);
  const Detector detector{detector_name(a, file.model), file.model};
  const auto emb = embeddings_from(a.emb, a.seed);
  const std::vector<double> scores = score_corpus(detector, test, emb ? &*emb : nullptr);

  EvalReport report;
  report.detector = detector.name;
  report.generator = a.generator.empty() ? generator_tag(test) : a.generator;
  report.auroc = auroc(scores, labels_of(test));
  report.n_test = test.size();
  report.config_digest = file.config_digest;
  ReportSet set;
  set.evaluations.push_back(std::move(report));
  emit_report(set, a.out);
}

void cmd_attack(const Args& a, std::ostream&) {
  Corpus attacked = apply_attack(load_corpus(a.in), attack_spec(a));
  write_corpus(attacked, a.out);
}

void cmd_robustness(const Args& a, std::ostream&) {
  const ModelFile file = load_model_file(a.model);
  const Corpus test = load_corpus(a.test);
  const Detector detector{detector_name(a, file.model), file.model};
  const auto pre = embeddings_from(a.emb, a.seed);
  const auto post = embeddings_from(a.emb, a.seed, true);
  RobustnessReport report = robustness_eval(detector, test, pre ? &*pre : nullptr,
                                            post ? &*post : nullptr, attack_spec(a));
  if (!a.generator.empty()) report.generator = a.generator;
  ReportSet set;
  set.robustness.push_back(std::move(report));
  emit_report(set, a.out);
}

void cmd_report(const Args& a, std::ostream&) {
  ReportSet merged;
  for (const auto& path : a.inputs) merged.append(load_report(path));
  emit_report(merged, a.out);
}

void cmd_importance(const Args& a, std::ostream&) {
  const ModelFile file = load_model_file(a.model);
  const auto* lr = std::get_if<LrModel>(&file.model);
  if (!lr) throw UsageError("importance supports LR models only");
  const Corpus test = load_corpus(a.test);
  std::vector<std::string_view> texts;
  for (const Article& art : test.articles) texts.emplace_back(art.text);
  const Eigen::MatrixXd features = feature_matrix(extract_batch(texts));
  const FeatureScorer scorer = [lr](const Eigen::MatrixXd& x) { return predict_scores(*lr, x); };
  const auto ranking = permutation_importance(scorer, features, labels_of(test), a.seed, a.repeats);

  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& r : ranking) {
    doc.push_back({{"feature", r.feature}, {"index", r.index}, {"mean_drop", r.mean_drop}});
  }
  write_text(a.out, doc.dump(2) + "\n");
}

void add_embedding_flags(CLI::App* sub, EmbeddingArgs& e, bool with_post) {
  sub->add_option("--embeddings", e.path, "JGEMB1 embedding file");
  if (with_post) sub->add_option("--embeddings-post", e.post_path, "JGEMB1 file for attacked texts");
  sub->add_flag("--pseudo-embeddings", e.pseudo, "Use deterministic pseudo-embeddings");
  sub->add_option("--dim", e.dim, "Pseudo-embedding dimension");
}

int fail(std::ostream& err, const char* kind, const std::string& message, int code) {
  std::string line = message;
  std::replace(line.begin(), line.end(), '\n', ' ');
  err << "error: " << kind << ": " << line << '\n';
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Detects AI-generated news from journalism style features"};
  app.name("jguard");
  app.require_subcommand(1, 1);
  app.fallthrough();

  Args a;
  app.add_option("--seed", a.seed, "Seed for all randomness")->capture_default_str();
  std::function<void(std::ostream&)> action;

  auto* extract = app.add_subcommand("extract", "Write journalism features as CSV");
  extract->add_option("--in", a.in, "Corpus (JSON lines)")->required();
  extract->add_option("--out", a.out, "Output CSV")->required();
  extract->add_flag("--raw", a.raw, "Write unnormalized values");
  extract->callback([&] { action = [&](std::ostream& o) { cmd_extract(a, o); }; });

  auto* split = app.add_subcommand("split", "Seeded train/test/val split");
  split->add_option("--in", a.in, "Corpus (JSON lines)")->required();
  split->add_option("--out-dir", a.out_dir, "Directory for train/test/val.jsonl")->required();
  split->add_option("--ratios", a.ratios, "train:test:val parts")->capture_default_str();
  split->callback([&] { action = [&](std::ostream& o) { cmd_split(a, o); }; });

  auto* train_lr_cmd = app.add_subcommand("train-lr", "Train the logistic regression detector");
  train_lr_cmd->add_option("--train", a.train, "Training corpus")->required();
  train_lr_cmd->add_option("--out", a.out, "Model JSON")->required();
  train_lr_cmd->add_option("--lr", a.lr.learning_rate, "Learning rate")->capture_default_str();
  train_lr_cmd->add_option("--epochs", a.lr.epochs, "Epochs")->capture_default_str();
  train_lr_cmd->add_option("--l2", a.lr.l2, "L2 penalty")->capture_default_str();
  train_lr_cmd->add_option("--batch-size", a.lr.batch_size, "Batch size, 0 = full batch")
      ->capture_default_str();
  train_lr_cmd->callback([&] { action = [&](std::ostream& o) { cmd_train_lr(a, o); }; });

  auto* train_fusion_cmd = app.add_subcommand("train-fusion", "Train the fusion detector heads");
  train_fusion_cmd->add_option("--train", a.train, "Training corpus")->required();
  train_fusion_cmd->add_option("--val", a.val, "Validation corpus")->required();
  train_fusion_cmd->add_option("--out", a.out, "Model JSON")->required();
  train_fusion_cmd->add_option("--lr", a.fusion.learning_rate, "Learning rate")->capture_default_str();
  train_fusion_cmd->add_option("--dropout", a.fusion.dropout_rate, "Dropout rate")->capture_default_str();
  train_fusion_cmd->add_option("--epochs", a.fusion.max_epochs, "Maximum epochs")->capture_default_str();
  train_fusion_cmd->add_option("--patience", a.fusion.patience, "Early-stopping patience")
      ->capture_default_str();
  train_fusion_cmd->add_option("--batch-size", a.fusion.batch_size, "Batch size")->capture_default_str();
  train_fusion_cmd->add_option("--hidden", a.guidance_hidden, "Guidance hidden width, 0 = auto")
      ->capture_default_str();
  train_fusion_cmd->add_flag("--end-to-end", a.end_to_end, "Use the end-to-end learning rate preset");
  add_embedding_flags(train_fusion_cmd, a.emb, false);
  train_fusion_cmd->callback([&] { action = [&](std::ostream& o) { cmd_train_fusion(a, o); }; });

  auto* eval = app.add_subcommand("eval", "Score a test corpus and report AUROC");
  eval->add_option("--model", a.model, "Model JSON")->required();
  eval->add_option("--test", a.test, "Test corpus")->required();
  eval->add_option("--out", a.out, "Report JSON (table written as .txt)")->required();
  eval->add_option("--name", a.name, "Detector name");
  eval->add_option("--generator", a.generator, "Generator tag override");
  add_embedding_flags(eval, a.emb, false);
  eval->callback([&] { action = [&](std::ostream& o) { cmd_eval(a, o); }; });

  auto* attack = app.add_subcommand("attack", "Write an attacked copy of a corpus");
  attack->add_option("--in", a.in, "Corpus")->required();
  attack->add_option("--out", a.out, "Attacked corpus")->required();
  attack->add_option("--kind", a.kind, "cyrillic, paraphrase or identity")->capture_default_str();
  attack->add_option("--paraphrases", a.paraphrases, "Paraphrase file (JSON lines)");
  attack->callback([&] { action = [&](std::ostream& o) { cmd_attack(a, o); }; });

  auto* robustness = app.add_subcommand("robustness", "AUROC before and after an attack");
  robustness->add_option("--model", a.model, "Model JSON")->required();
  robustness->add_option("--test", a.test, "Test corpus")->required();
  robustness->add_option("--out", a.out, "Report JSON (table written as .txt)")->required();
  robustness->add_option("--kind", a.kind, "cyrillic, paraphrase or identity")->capture_default_str();
  robustness->add_option("--paraphrases", a.paraphrases, "Paraphrase file (JSON lines)");
  robustness->add_option("--name", a.name, "Detector name");
  robustness->add_option("--generator", a.generator, "Generator tag override");
  add_embedding_flags(robustness, a.emb, true);
  robustness->callback([&] { action = [&](std::ostream& o) { cmd_robustness(a, o); }; });

  auto* report = app.add_subcommand("report", "Merge report files");
  report->add_option("--in", a.inputs, "Report JSON files")->required();
  report->add_option("--out", a.out, "Merged report JSON")->required();
  report->callback([&] { action = [&](std::ostream& o) { cmd_report(a, o); }; });

  auto* importance = app.add_subcommand("importance", "Permutation importance of the features");
  importance->add_option("--model", a.model, "LR model JSON")->required();
  importance->add_option("--test", a.test, "Corpus with both classes")->required();
  importance->add_option("--out", a.out, "Ranking JSON")->required();
  importance->add_option("--repeats", a.repeats, "Shuffles per feature")->capture_default_str();
  importance->callback([&] { action = [&](std::ostream& o) { cmd_importance(a, o); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    return fail(err, "usage", e.what(), kUsage);
  }

  try {
    action(out);
  } catch (const NumericError& e) {
    return fail(err, "numeric", e.what(), kNumeric);
  } catch (const UsageError& e) {
    return fail(err, "usage", e.what(), kUsage);
  } catch (const std::exception& e) {
    return fail(err, "data", e.what(), kData);
  }
  return kOk;
}

int run(const std::vector<std::string>& args) { return run(args, std::cout, std::cerr); }

}  // namespace jguard::cli

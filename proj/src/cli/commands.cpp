/*
 * Copyright 2026 The authid Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cstdio>
#include <filesystem>
#include <map>
#include <ostream>
#include <set>
#include <string>

#include <CLI11.hpp>

#include "authid/cli/cli.hpp"
#include "authid/cli/config.hpp"
#include "authid/common/error.hpp"
#include "authid/common/json_io.hpp"
#include "authid/common/rng.hpp"
#include "authid/corpus/io.hpp"
#include "authid/evalkit/protocol.hpp"
#include "authid/features/features.hpp"
#include "authid/koppel/imposters.hpp"
#include "authid/siamese/classifier.hpp"
#include "authid/siamese/model_io.hpp"
#include "authid/siamese/train.hpp"

namespace authid::cli {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string("missing required option ") + flag);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct PairCounts {
  std::size_t same = 0;
  std::size_t different = 0;
};

PairCounts count_pairs(const std::vector<corpus::PairExample>& pairs) {
  PairCounts c;
  for (const auto& p : pairs) ++(p.label == 1 ? c.same : c.different);
  return c;
}

void print_count_row(std::ostream& out, const char* name, const std::vector<corpus::PairExample>& pairs) {
  const auto c = count_pairs(pairs);
  char buf[128];
  std::snprintf(buf, sizeof buf, "  %-12s %10zu %10zu %10zu\n", name, c.same, c.different, c.same + c.different);
  out << buf;
}

std::size_t piece_count(const corpus::PiecesByAuthor& pieces) {
  std::size_t n = 0;
  for (const auto& [a, list] : pieces) n += list.size();
  return n;
}

corpus::PairSet make_pair_set(const RunConfig& cfg, std::vector<corpus::PairExample> pairs, const char* role) {
  corpus::PairSet set;
  set.seed = cfg.seed;
  set.params = {{"scenario", cfg.scenario}, {"role", role}, {"n_pieces", cfg.n_pieces}};
  set.pairs = std::move(pairs);
  return set;
}

std::vector<std::string> unique_texts(const std::vector<corpus::PairExample>& pairs) {
  std::map<std::string, const std::string*> by_id;
  for (const auto& p : pairs) {
    by_id.emplace(p.left.id(), &p.left.text);
    by_id.emplace(p.right.id(), &p.right.text);
  }
  std::vector<std::string> out;
  out.reserve(by_id.size());
  for (const auto& [id, text] : by_id) out.push_back(*text);
  return out;
}

// ---------------------------------------------------------------------------

int cmd_synth(const RunConfig& cfg, std::ostream& out) {
  require(cfg.out, "--out");
  corpus::SynthParams p;
  p.n_authors = cfg.synth_authors;
  p.docs_per_author = cfg.synth_docs;
  p.words_per_doc = cfg.synth_words;
  p.signature_strength = cfg.synth_strength;
  p.seed = cfg.seed;
  const auto corpus = corpus::synth_corpus(p);
  corpus::write_author_dirs(corpus, cfg.out);
  out << "wrote " << corpus.authors.size() << " authors, " << corpus.document_count() << " documents to "
      << cfg.out << "\n";
  return 0;
}

int cmd_prepare(const RunConfig& cfg, std::ostream& out) {
  require(cfg.format, "--format");
  require(cfg.corpus, "--corpus");
  require(cfg.out, "--out");
  const auto format = corpus::parse_corpus_format(cfg.format);
  const auto loaded = corpus::load_corpus(cfg.corpus, format);
  fs::create_directories(cfg.out);
  const fs::path dir = cfg.out;

  if (format == corpus::CorpusFormat::kPanPairs) {
    auto pairs = loaded.pairs;
    Rng rng(derive_seed(cfg.seed, {0x9A17}));
    rng.shuffle(std::span(pairs));
    auto split = corpus::hold_out_validation(std::move(pairs), cfg.val_fraction);
    corpus::write_pair_set(make_pair_set(cfg, split.train, "train"), dir / "train_pairs.json");
    corpus::write_pair_set(make_pair_set(cfg, split.validation, "validation"), dir / "val_pairs.json");
    out << "format: pan-pairs (" << loaded.pairs.size() << " records)\n";
    out << "  pairs             same  different      total\n";
    print_count_row(out, "train", split.train);
    print_count_row(out, "validation", split.validation);
    return 0;
  }

  corpus::PiecesByAuthor train_pool, test_pool;
  std::size_t skipped_docs = 0, skipped_authors = 0;
  if (cfg.scenario == "oneshot") {
    const auto split = corpus::split_one_shot(loaded.corpus, cfg.author_frac, cfg.seed);
    auto tr = corpus::chunk_corpus(split.train, cfg.n_pieces);
    auto te = corpus::chunk_corpus(split.test, cfg.n_pieces);
    train_pool = std::move(tr.pieces);
    test_pool = std::move(te.pieces);
    skipped_docs = tr.skipped_documents + te.skipped_documents;
  } else {
    auto all = corpus::chunk_corpus(loaded.corpus, cfg.n_pieces);
    auto split = corpus::split_known_auth(all.pieces, cfg.train_frac, cfg.seed);
    train_pool = std::move(split.train);
    test_pool = std::move(split.test);
    skipped_docs = all.skipped_documents;
    skipped_authors = split.skipped_authors;
  }

  auto train_pairs = corpus::generate_pairs(train_pool, derive_seed(cfg.seed, {1}));
  auto split = corpus::hold_out_validation(std::move(train_pairs), cfg.val_fraction);
  auto test_pairs = corpus::generate_pairs(test_pool, derive_seed(cfg.seed, {2}));

  corpus::TaskSet tasks;
  tasks.seed = cfg.seed;
  tasks.params = {{"scenario", cfg.scenario}, {"ns", cfg.ns}, {"n_sets", cfg.n_sets}, {"runs", cfg.runs}};
  tasks.pool = test_pool;
  for (int n : cfg.ns) {
    for (int r = 0; r < cfg.runs; ++r) {
      const auto s = evalkit::run_seed(cfg.seed, n, r);
      tasks.runs.push_back({n, r, s, corpus::build_nway_tasks(test_pool, n, cfg.n_sets, s)});
    }
  }
  corpus::TaskSet train_pieces;
  train_pieces.seed = cfg.seed;
  train_pieces.params = {{"scenario", cfg.scenario}, {"role", "train"}};
  train_pieces.pool = train_pool;

  corpus::write_pair_set(make_pair_set(cfg, split.train, "train"), dir / "train_pairs.json");
  corpus::write_pair_set(make_pair_set(cfg, split.validation, "validation"), dir / "val_pairs.json");
  corpus::write_pair_set(make_pair_set(cfg, test_pairs, "test"), dir / "test_pairs.json");
  corpus::write_task_set(tasks, dir / "tasks.json");
  corpus::write_task_set(train_pieces, dir / "train_pieces.json");

  out << "scenario: " << cfg.scenario << "\n";
  out << "  authors: train " << train_pool.size() << ", test " << test_pool.size() << "\n";
  out << "  pieces:  train " << piece_count(train_pool) << ", test " << piece_count(test_pool) << "\n";
  if (skipped_docs) out << "  skipped documents (too short): " << skipped_docs << "\n";
  if (skipped_authors) out << "  skipped authors (too few pieces): " << skipped_authors << "\n";
  out << "  pairs             same  different      total\n";
  print_count_row(out, "train", split.train);
  print_count_row(out, "validation", split.validation);
  print_count_row(out, "test", test_pairs);
  out << "  n-way tasks: " << cfg.ns.size() << " N values x " << cfg.runs << " runs x " << cfg.n_sets << " sets\n";
  return 0;
}

json history_to_json(const siamese::TrainHistory& h) {
  json epochs = json::array();
  for (const auto& e : h.epochs) {
    epochs.push_back({{"epoch", e.epoch}, {"train_loss", e.train_loss}, {"val_accuracy", e.val_accuracy}});
  }
  return {{"format", "authid-history"},
          {"version", 1},
          {"epochs", std::move(epochs)},
          {"selected_epoch", h.selected_epoch},
          {"best_val_accuracy", h.best_val_accuracy},
          {"restart_count", h.restart_count},
          {"abandoned_accuracy", h.abandoned_accuracy}};
}

int cmd_train(const RunConfig& cfg, std::ostream& out) {
  require(cfg.train, "--train");
  require(cfg.out, "--out");
  auto train_set = corpus::read_pair_set(cfg.train);
  std::vector<corpus::PairExample> val;
  if (!cfg.val.empty()) {
    val = corpus::read_pair_set(cfg.val).pairs;
  } else {
    auto split = corpus::hold_out_validation(std::move(train_set.pairs), cfg.val_fraction);
    train_set.pairs = std::move(split.train);
    val = std::move(split.validation);
  }
  auto vocab = std::make_shared<const features::Vocab>(
      features::build_vocab(unique_texts(train_set.pairs), features::parse_token_level(cfg.level)));
  siamese::SiameseModel model(cfg.model_spec(vocab->size()), vocab, derive_seed(cfg.seed, {0x30DE1}));
  out << "training " << cfg.energy << " model on " << train_set.pairs.size() << " pairs (" << val.size()
      << " validation), vocabulary " << vocab->size() << "\n";
  const auto history = siamese::train(model, train_set.pairs, val, cfg.train_config(),
                                      [&](int attempt, const siamese::EpochRecord& e) {
                                        out << "  attempt " << attempt << " epoch " << e.epoch << "  loss "
                                            << fmt("%.4f", e.train_loss) << "  val acc "
                                            << fmt("%.4f", e.val_accuracy) << "\n";
                                        out.flush();
                                      });
  siamese::save_model(model, cfg.out);
  write_json_file(history_to_json(history), cfg.out + ".history.json");
  features::write_vocab(*vocab, cfg.out + ".vocab.json");
  out << "selected epoch " << history.selected_epoch << " (val acc " << fmt("%.4f", history.best_val_accuracy)
      << ", restarts " << history.restart_count << ")\n";
  return 0;
}

std::vector<corpus::TaskRun> select_runs(const corpus::TaskSet& tasks, const std::vector<int>& ns) {
  std::vector<corpus::TaskRun> runs;
  for (int n : ns) {
    bool found = false;
    for (const auto& r : tasks.runs) {
      if (r.n == n) {
        runs.push_back(r);
        found = true;
      }
    }
    if (!found) throw ConfigError("task file has no runs for N=" + std::to_string(n));
  }
  return runs;
}

void print_report(std::ostream& out, const evalkit::EvalReport& r) {
  for (const auto& nr : r.nway) {
    out << "  N=" << nr.n << "  mean accuracy " << fmt("%.4f", nr.mean_accuracy) << "  runs";
    for (const auto& run : nr.runs) out << " " << fmt("%.4f", run.accuracy);
    out << "\n";
  }
  if (r.verification) {
    const auto& v = *r.verification;
    out << "  verification accuracy " << fmt("%.4f", v.accuracy) << " over " << v.pairs << " pairs\n";
    out << "  auc " << fmt("%.4f", v.metrics.auc) << "  f1 " << fmt("%.4f", v.metrics.f1) << "  c@1 "
        << fmt("%.4f", v.metrics.c_at_1) << "  f05u " << fmt("%.4f", v.metrics.f05u) << "  overall "
        << fmt("%.4f", v.metrics.overall()) << "\n";
  }
}

int cmd_eval(const RunConfig& cfg, std::ostream& out) {
  require(cfg.model, "--model");
  require(cfg.out, "--out");
  const bool do_nway = cfg.protocol != "verification";
  const bool do_verif = cfg.protocol != "nway";
  if (do_nway) require(cfg.tasks, "--tasks");
  if (do_verif) require(cfg.pairs, "--pairs");
  auto model = siamese::load_model(cfg.model);
  if (!cfg.vocab.empty()) {
    const auto v = features::read_vocab(cfg.vocab);
    if (v.fingerprint() != model.vocab().fingerprint()) {
      throw ConfigError("vocabulary " + cfg.vocab + " does not match the model's vocabulary");
    }
  }
  // Load every input before scoring anything.
  corpus::TaskSet tasks;
  std::vector<corpus::TaskRun> runs;
  if (do_nway) {
    tasks = corpus::read_task_set(cfg.tasks);
    runs = select_runs(tasks, cfg.ns);
  }
  corpus::PairSet pairs;
  if (do_verif) pairs = corpus::read_pair_set(cfg.pairs);

  std::map<std::string, std::vector<float>> cache;
  auto encoded = [&](const corpus::Piece& p) -> const std::vector<float>& {
    auto it = cache.find(p.id());
    if (it == cache.end()) it = cache.emplace(p.id(), model.encode(p.text)).first;
    return it->second;
  };

  evalkit::EvalReport report;
  report.protocol = cfg.protocol;
  report.seed = cfg.seed;
  report.config = config_to_json(cfg);
  report.config["model_energy"] = std::string(siamese::energy_name(model.spec().energy));
  if (do_nway) {
    const evalkit::Selector select = [&](const corpus::NWayTask& t) {
      const auto& probe = encoded(t.probe);
      std::size_t best = 0;
      float best_score = -1;
      for (std::size_t i = 0; i < t.candidates.size(); ++i) {
        const float s = model.energy(probe, encoded(t.candidates[i]));
        if (s > best_score) {
          best_score = s;
          best = i;
        }
      }
      return best;
    };
    corpus::TaskSet subset;
    subset.runs = runs;
    report.nway = evalkit::evaluate_task_set(select, subset);
  }
  if (do_verif) {
    std::vector<evalkit::ScoredPair> scored;
    for (const auto& p : pairs.pairs) {
      scored.push_back({p.id, static_cast<double>(model.energy(encoded(p.left), encoded(p.right))), p.label});
    }
    report.verification = evalkit::evaluate_scores(scored);
    if (!cfg.scores_out.empty()) evalkit::write_scores(scored, cfg.scores_out);
  }
  evalkit::write_report(report, cfg.out);
  out << "evaluated " << cfg.model << "\n";
  print_report(out, report);
  return 0;
}

int cmd_koppel(const RunConfig& cfg, std::ostream& out) {
  require(cfg.train, "--train");
  require(cfg.tasks, "--tasks");
  require(cfg.out, "--out");
  const auto icfg = cfg.imposters_config();
  const auto train = corpus::read_pair_set(cfg.train);
  const auto tasks = corpus::read_task_set(cfg.tasks);
  const auto runs = select_runs(tasks, cfg.ns);
  const auto space = features::build_feature_space(unique_texts(train.pairs), cfg.max_features, 4);

  std::map<std::string, features::SparseCounts> cache;
  auto vec = [&](const corpus::Piece& p) -> const features::SparseCounts& {
    auto it = cache.find(p.id());
    if (it == cache.end()) it = cache.emplace(p.id(), features::vectorize(p.text, space)).first;
    return it->second;
  };
  std::size_t unanswered = 0;
  const evalkit::Selector select = [&](const corpus::NWayTask& t) {
    std::vector<features::SparseCounts> cands;
    for (const auto& c : t.candidates) cands.push_back(vec(c));
    const auto d = koppel::koppel_decide(vec(t.probe), cands, space.size(), icfg);
    if (!d.answered) ++unanswered;
    return d.index;
  };
  corpus::TaskSet subset;
  subset.runs = runs;
  evalkit::EvalReport report;
  report.protocol = "koppel";
  report.seed = cfg.seed;
  report.nway = evalkit::evaluate_task_set(select, subset);
  report.config = {{"iterations", icfg.iterations},
                   {"feature_fraction", icfg.feature_fraction},
                   {"metric", std::string(koppel::metric_name(icfg.metric))},
                   {"decision_threshold", icfg.decision_threshold},
                   {"max_features", cfg.max_features},
                   {"feature_space_size", space.size()},
                   {"unanswered", unanswered},
                   {"ns", cfg.ns}};
  evalkit::write_report(report, cfg.out);
  out << "imposters baseline (" << koppel::metric_name(icfg.metric) << ", " << icfg.iterations << " iterations, "
      << "fraction " << icfg.feature_fraction << ", " << space.size() << " features)\n";
  print_report(out, report);
  return 0;
}

int cmd_classifier(const RunConfig& cfg, std::ostream& out) {
  require(cfg.train, "--train");
  require(cfg.tasks, "--tasks");
  require(cfg.out, "--out");
  const auto pieces = corpus::read_task_set(cfg.train).pool;
  const auto tasks = corpus::read_task_set(cfg.tasks);
  const auto runs = select_runs(tasks, cfg.ns);
  std::vector<corpus::Piece> train, val;
  Rng rng(derive_seed(cfg.seed, {0xC1A0}));
  for (const auto& [author, list] : pieces) {
    std::vector<corpus::Piece> shuffled = list;
    rng.shuffle(std::span(shuffled));
    const auto n_val = static_cast<std::size_t>(cfg.val_fraction * static_cast<double>(shuffled.size()));
    for (std::size_t i = 0; i < shuffled.size(); ++i) (i < n_val ? val : train).push_back(shuffled[i]);
  }
  std::vector<std::string> texts;
  for (const auto& p : train) texts.push_back(p.text);
  auto vocab = std::make_shared<const features::Vocab>(
      features::build_vocab(texts, features::parse_token_level(cfg.level)));
  siamese::ClassifierTrainConfig tcfg;
  tcfg.lr = cfg.lr;
  tcfg.batch_size = cfg.batch_size;
  tcfg.max_epochs = cfg.classifier_epochs;
  tcfg.seed = cfg.seed;
  siamese::ClassifierHistory hist;
  auto clf = siamese::train_classifier(cfg.subnet(vocab->size()), vocab, train, val, tcfg, &hist);
  const evalkit::Selector select = [&](const corpus::NWayTask& t) { return siamese::classifier_nway(clf, t); };
  corpus::TaskSet subset;
  subset.runs = runs;
  evalkit::EvalReport report;
  report.protocol = "classifier";
  report.seed = cfg.seed;
  report.config = config_to_json(cfg);
  report.config["selected_epoch"] = hist.selected_epoch;
  report.nway = evalkit::evaluate_task_set(select, subset);
  evalkit::write_report(report, cfg.out);
  out << "classifier over " << clf.authors().size() << " authors, selected epoch " << hist.selected_epoch << "\n";
  print_report(out, report);
  return 0;
}

int cmd_metrics(const RunConfig& cfg, std::ostream& out) {
  require(cfg.scores, "--scores");
  const auto scored = evalkit::read_scores(cfg.scores);
  evalkit::EvalReport report;
  report.protocol = "verification";
  report.seed = cfg.seed;
  report.config = {{"scores", cfg.scores}};
  report.verification = evalkit::evaluate_scores(scored);
  if (!cfg.out.empty()) evalkit::write_report(report, cfg.out);
  print_report(out, report);
  return 0;
}

// Value of --config if present, so the file can be applied before flags.
std::string find_config_path(int argc, const char* const* argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--config" && i + 1 < argc) return argv[i + 1];
    if (a.rfind("--config=", 0) == 0) return a.substr(9);
  }
  return {};
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string config_path;
  CLI::App app{"authid: authorship attribution with Siamese networks and the imposters baseline", "authid"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file; flags override its values");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--out", cfg.out, "output path");
  };
  auto model_flags = [&](CLI::App* sub) {
    sub->add_option("--level", cfg.level, "input tokens: char or word");
    sub->add_option("--max-len", cfg.max_len, "input sequence length");
    sub->add_option("--embed", cfg.embed_dim, "embedding size");
    sub->add_option("--channels", cfg.conv_channels, "output channels of the 4 conv layers")->delimiter(',');
    sub->add_option("--widths", cfg.kernel_widths, "kernel widths of the 4 conv layers")->delimiter(',');
    sub->add_option("--dense", cfg.dense_dim, "dense layer size");
    sub->add_option("--lr", cfg.lr, "Adam learning rate");
    sub->add_option("--batch-size", cfg.batch_size, "mini-batch size");
  };
  auto n_flags = [&](CLI::App* sub) { sub->add_option("--n", cfg.ns, "N values")->delimiter(','); };

  auto* synth = app.add_subcommand("synth", "write a synthetic corpus in the author-dirs layout");
  common(synth);
  synth->add_option("--authors", cfg.synth_authors, "number of authors");
  synth->add_option("--docs", cfg.synth_docs, "documents per author");
  synth->add_option("--words", cfg.synth_words, "words per document");
  synth->add_option("--strength", cfg.synth_strength, "signature strength in [0, 1]");

  auto* prepare = app.add_subcommand("prepare", "split a corpus and write pair and task files");
  common(prepare);
  prepare->add_option("--corpus", cfg.corpus, "corpus root or pan-pairs file");
  prepare->add_option("--format", cfg.format, "author-dirs or pan-pairs");
  prepare->add_option("--scenario", cfg.scenario, "known or oneshot");
  prepare->add_option("--pieces", cfg.n_pieces, "pieces per document");
  prepare->add_option("--n-sets", cfg.n_sets, "tasks per run");
  prepare->add_option("--runs", cfg.runs, "task collections per N");
  n_flags(prepare);

  auto* train = app.add_subcommand("train", "train a Siamese model");
  common(train);
  model_flags(train);
  train->add_option("--train", cfg.train, "training pair file");
  train->add_option("--val", cfg.val, "validation pair file");
  train->add_option("--energy", cfg.energy, "l1, cos, l2 or ruzicka");
  train->add_option("--cos-mapping", cfg.cos_mapping, "raw or affine");
  train->add_option("--max-epochs", cfg.max_epochs, "epoch limit");
  train->add_option("--restart-threshold", cfg.restart_threshold, "restart below this validation accuracy");
  train->add_option("--restart-epoch", cfg.restart_epoch, "epoch at which the restart rule is checked");
  train->add_option("--max-restarts", cfg.max_restarts, "restart budget");

  auto* eval = app.add_subcommand("eval", "evaluate a trained model");
  common(eval);
  eval->add_option("--model", cfg.model, "model file");
  eval->add_option("--vocab", cfg.vocab, "vocabulary file to check against the model");
  eval->add_option("--tasks", cfg.tasks, "N-way task file");
  eval->add_option("--pairs", cfg.pairs, "verification pair file");
  eval->add_option("--protocol", cfg.protocol, "nway, verification or both");
  eval->add_option("--scores-out", cfg.scores_out, "write verification scores here");
  n_flags(eval);

  auto* kop = app.add_subcommand("koppel", "run the imposters baseline on N-way tasks");
  common(kop);
  kop->add_option("--train", cfg.train, "training pair file (feature space source)");
  kop->add_option("--tasks", cfg.tasks, "N-way task file");
  kop->add_option("--iterations", cfg.iterations, "sampling rounds");
  kop->add_option("--fraction", cfg.feature_fraction, "fraction of features per round");
  kop->add_option("--metric", cfg.metric, "ruzicka or cosine");
  kop->add_option("--threshold", cfg.decision_threshold, "minimum winning score to answer");
  kop->add_option("--max-features", cfg.max_features, "feature space capacity");
  n_flags(kop);

  auto* clf = app.add_subcommand("classifier", "train the CNN classifier baseline and run N-way tasks");
  common(clf);
  model_flags(clf);
  clf->add_option("--train", cfg.train, "training piece file");
  clf->add_option("--tasks", cfg.tasks, "N-way task file");
  clf->add_option("--epochs", cfg.classifier_epochs, "epoch limit");
  n_flags(clf);

  auto* metrics = app.add_subcommand("metrics", "PAN metrics for a score file");
  common(metrics);
  metrics->add_option("--scores", cfg.scores, "score file");

  try {
    const std::string pre = find_config_path(argc, argv);
    if (!pre.empty()) cfg = load_config_file(pre);
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return 0;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return 0;
    } catch (const CLI::ParseError& e) {
      err << "authid: usage error: " << e.what() << "\n";
      return 2;
    }
    cfg.validate();
    if (synth->parsed()) return cmd_synth(cfg, out);
    if (prepare->parsed()) return cmd_prepare(cfg, out);
    if (train->parsed()) return cmd_train(cfg, out);
    if (eval->parsed()) return cmd_eval(cfg, out);
    if (kop->parsed()) return cmd_koppel(cfg, out);
    if (clf->parsed()) return cmd_classifier(cfg, out);
    if (metrics->parsed()) return cmd_metrics(cfg, out);
    return 2;
  } catch (const UsageError& e) {
    err << "authid: usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "authid: error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "authid: error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace authid::cli

// Copyright 2026 The linkrush Authors.
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

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "linkrush/linkrush.hpp"

namespace {

using linkrush::DataError;
using linkrush::UsageError;
using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct Options {
  std::string dump, corpus, index, input, format = "conll", out, stats, data, model,
      baseline, gold, pred, json, threshold = "11";
  bool turkish_casefold = false, single_head = false, train_baseline = false;
  std::size_t k = linkrush::kDefaultTopK;
  std::size_t max_len = linkrush::kDefaultMaxLength;
  std::size_t epochs = linkrush::linear::SgdConfig{}.epochs;
  std::size_t batch_size = linkrush::linear::SgdConfig{}.batch_size;
  std::size_t window = 3;
  double lr = linkrush::linear::SgdConfig{}.learning_rate;
  std::uint64_t seed = linkrush::linear::SgdConfig{}.seed;
  std::uint32_t feature_dim = linkrush::linear::kDefaultFeatureDim;
};

std::string env_name(const std::string& flag) {
  std::string name = "LINKRUSH_";
  for (char c : flag) name.push_back(c == '-' ? '_' : static_cast<char>(std::toupper(c)));
  return name;
}

// Every option is mirrored by LINKRUSH_<NAME>; an explicit flag wins.
template <class T>
CLI::Option* opt(CLI::App* app, const std::string& name, T& target, const std::string& help) {
  return app->add_option("--" + name, target, help)->envname(env_name(name));
}

CLI::Option* flag(CLI::App* app, const std::string& name, bool& target,
                  const std::string& help) {
  return app->add_flag("--" + name, target, help)->envname(env_name(name));
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  linkrush::binary::write_file(path, text);
}

std::vector<linkrush::TaggedSentence> read_sentences(const std::string& path) {
  auto data = linkrush::read_conll(path);
  for (const auto& w : data.warnings) std::cerr << path << ": warning: " << w << '\n';
  return std::move(data.sentences);
}

linkrush::LinkingOptions linking(const Options& o) {
  if (o.k == 0) throw UsageError("--k must be at least 1");
  return {o.k, o.max_len};
}

int run_ingest(const Options& o) {
  std::ifstream in(o.dump);
  if (!in) throw DataError("cannot open " + o.dump);
  const auto corpus = linkrush::ingest(in, {o.turkish_casefold});
  linkrush::save_corpus(corpus, o.out);
  std::cerr << "ingested " << corpus.documents.size() << " articles into " << o.out << '\n';
  return kExitOk;
}

int run_index(const Options& o) {
  auto corpus = linkrush::load_corpus(o.corpus);
  const auto n = corpus.documents.size();
  if (n == 0) throw DataError(o.corpus + ": corpus has no documents");
  linkrush::save_index(linkrush::build_index(std::move(corpus)), o.out);
  std::cerr << "indexed " << n << " documents into " << o.out << '\n';
  return kExitOk;
}

Json pool_stats_json(const linkrush::PoolStats& s) {
  Json per_field = Json::object();
  Json empty_field = Json::object();
  for (auto f : linkrush::kFields) {
    const auto i = static_cast<std::size_t>(f);
    per_field[std::string(linkrush::field_name(f))] = s.avg_field_results[i];
    empty_field[std::string(linkrush::field_name(f))] = s.empty_field_results[i];
  }
  return {{"queries", s.pools},
          {"avg_pool_size", s.avg_pool_size},
          {"avg_field_results", per_field},
          {"empty_pools", s.empty_pools},
          {"empty_field_results", empty_field}};
}

int run_link(const Options& o) {
  const auto index = linkrush::load_index(o.index);
  const auto opts = linking(o);
  std::vector<linkrush::TaggedSentence> sentences;
  if (o.format == "conll") {
    sentences = read_sentences(o.input);
  } else if (o.format == "text") {
    std::ifstream in(o.input);
    if (!in) throw DataError("cannot open " + o.input);
    std::string line;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      linkrush::TaggedSentence s;
      s.id = std::to_string(sentences.size());
      s.tokens = linkrush::tokenize(line, index.tokenizer);
      sentences.push_back(std::move(s));
    }
  } else {
    throw UsageError("--format must be conll or text");
  }

  std::ostringstream out;
  std::vector<linkrush::CandidatePool> pools;
  for (const auto& s : sentences) {
    const auto units = linkrush::normalize_tokens(s.tokens, index.tokenizer);
    auto pool = linkrush::retrieve_pooled(s.tokens, index, opts.k);
    pool.sentence_id = s.id;
    const auto mentions =
        linkrush::resolve_overlaps(linkrush::find_matches(units, pool, index.documents));
    Json line = {{"id", s.id}, {"tokens", s.tokens}, {"mentions", Json::array()}};
    for (const auto& m : mentions) {
      line["mentions"].push_back({{"start", m.start},
                                  {"end", m.end},
                                  {"title", index.documents.at(m.doc).title},
                                  {"score", m.pooled_score}});
    }
    out << line.dump() << '\n';
    pools.push_back(std::move(pool));
  }
  write_text(o.out, out.str());
  if (!o.stats.empty()) {
    write_text(o.stats, pool_stats_json(linkrush::pool_stats(pools)).dump(2) + "\n");
  }
  return kExitOk;
}

int run_train(const Options& o) {
  const auto sentences = read_sentences(o.data);
  if (sentences.empty()) throw DataError(o.data + ": no sentences");
  linkrush::linear::SgdConfig sgd{o.lr, o.epochs, o.batch_size, o.seed};
  std::vector<double> losses;
  if (o.train_baseline) {
    // Tokens are normalized the same way the index does at tag time; without
    // an index the default tokenizer mode applies.
    linkrush::TokenizerOptions tokenizer;
    if (!o.corpus.empty()) tokenizer = linkrush::load_index(o.corpus).tokenizer;
    const auto examples = linkrush::token_training_set(sentences, tokenizer);
    const auto tagger = linkrush::train_token_tagger(
        examples, {o.feature_dim, o.window, sgd}, &losses);
    linkrush::save_token_tagger(tagger, o.out);
  } else {
    if (o.corpus.empty()) throw UsageError("train: --corpus is required");
    const auto index = linkrush::load_index(o.corpus);
    const auto examples = linkrush::mention_training_set(sentences, index, linking(o));
    if (examples.empty()) throw DataError("train: the linker found no mentions in " + o.data);
    const auto model =
        linkrush::train(examples, {o.feature_dim, o.single_head, sgd}, &losses);
    linkrush::save_model(model, o.out);
    std::cerr << "trained on " << examples.size() << " mention candidates\n";
  }
  if (!losses.empty()) {
    std::cerr << "epoch loss " << losses.front() << " -> " << losses.back() << '\n';
  }
  return kExitOk;
}

std::size_t parse_threshold(const std::string& text) {
  if (text == "inf" || text == "infinity") return linkrush::kRouteAllToLinking;
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || text.empty() || text.front() == '-') {
    throw UsageError("--threshold must be a non-negative integer or 'inf'");
  }
  return static_cast<std::size_t>(v);
}

int run_tag(const Options& o) {
  const auto router = linkrush::RouterConfig{parse_threshold(o.threshold)};
  const auto opts = linking(o);
  const auto index = linkrush::load_index(o.index);
  const auto model = linkrush::load_model(o.model);
  const auto baseline = linkrush::load_token_tagger(o.baseline);
  const auto sentences = read_sentences(o.input);
  const linkrush::Ensemble ensemble(index, model, baseline, router, opts);
  std::size_t to_baseline = 0;
  for (const auto& s : sentences) to_baseline += ensemble.route_of(s) == linkrush::Route::kBaseline;
  write_text(o.out, linkrush::format_conll(linkrush::tag_all(sentences, ensemble)));
  std::cerr << "tagged " << sentences.size() << " sentences (" << to_baseline
            << " baseline, " << sentences.size() - to_baseline << " entity linking)\n";
  return kExitOk;
}

int run_eval(const Options& o) {
  const auto gold = read_sentences(o.gold);
  const auto pred = read_sentences(o.pred);
  const auto report = linkrush::evaluate(gold, pred);
  std::cout << std::fixed << std::setprecision(4);
  std::cout << "class   precision  recall     f1    support\n";
  for (auto t : linkrush::kEntityTypes) {
    const auto& c = report[t];
    std::cout << std::left << std::setw(8) << linkrush::type_code(t) << std::right
              << std::setw(9) << c.precision << std::setw(9) << c.recall << std::setw(9)
              << c.f1 << std::setw(9) << report.support[linkrush::type_index(t)] << '\n';
  }
  std::cout << "macro   " << std::setw(9) << report.macro_precision << std::setw(9)
            << report.macro_recall << std::setw(9) << report.macro_f1 << '\n';
  if (!o.json.empty()) write_text(o.json, linkrush::to_json(report).dump(2) + "\n");
  return kExitOk;
}

int run_stats(const Options& o) {
  const auto index = linkrush::load_index(o.index);
  const auto sentences = read_sentences(o.input);
  const auto opts = linking(o);
  const auto report = linkrush::mention_recall_report(sentences, index, opts.k);
  Json recall = Json::object();
  for (auto f : linkrush::kFields) {
    recall[std::string(linkrush::field_name(f))] =
        report.per_field[static_cast<std::size_t>(f)].recall();
  }
  recall["pooled"] = report.pooled.recall();
  std::size_t tokens = 0;
  for (const auto& s : sentences) tokens += s.tokens.size();
  Json j = {{"sentences", sentences.size()},
            {"avg_tokens", sentences.empty() ? 0.0
                                             : static_cast<double>(tokens) /
                                                   static_cast<double>(sentences.size())},
            {"gold_mentions", report.pooled.gold},
            {"k", opts.k},
            {"pools", pool_stats_json(linkrush::pool_stats(report.pools))},
            {"mention_recall", recall}};
  write_text(o.out, j.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linkrush: unsupervised entity linking for low-context NER"};
  app.require_subcommand(1);
  app.set_version_flag("--version",
                       std::string("linkrush ") + linkrush::kToolVersion + " (corpus format " +
                           std::to_string(linkrush::kCorpusFormatVersion) + ", index format " +
                           std::to_string(linkrush::kIndexFormatVersion) + ", model format " +
                           std::to_string(linkrush::kModelFormatVersion) + ")");
  Options o;
  std::function<int(const Options&)> command;

  auto* ingest = app.add_subcommand("ingest", "Parse a JSON-lines article dump into a corpus file");
  opt(ingest, "dump", o.dump, "JSON-lines article records")->required();
  opt(ingest, "out", o.out, "Corpus file to write")->required();
  flag(ingest, "turkish-casefold", o.turkish_casefold, "Lowercase I as dotless i");
  ingest->callback([&] { command = run_ingest; });

  auto* index = app.add_subcommand("index", "Build the four field indexes of a corpus");
  opt(index, "corpus", o.corpus, "Corpus file from ingest")->required();
  opt(index, "out", o.out, "Index file to write")->required();
  index->callback([&] { command = run_index; });

  auto* link = app.add_subcommand("link", "Detect and link mentions, one JSON line per sentence");
  opt(link, "index", o.index, "Index file")->required();
  opt(link, "input", o.input, "Sentences (CoNLL or one per line)")->required();
  opt(link, "format", o.format, "Input format: conll or text")
      ->check(CLI::IsMember({"conll", "text"}));
  opt(link, "k", o.k, "Documents retrieved per field");
  opt(link, "out", o.out, "Output JSON lines (default stdout)");
  opt(link, "stats", o.stats, "Write a JSON retrieval summary here");
  link->callback([&] { command = run_link; });

  auto* train = app.add_subcommand("train", "Train the mention classifier or the baseline tagger");
  opt(train, "data", o.data, "Gold CoNLL sentences")->required();
  opt(train, "corpus", o.corpus, "Index file used for linking");
  opt(train, "out", o.out, "Model file to write")->required();
  opt(train, "epochs", o.epochs, "Training epochs");
  opt(train, "lr", o.lr, "Learning rate");
  opt(train, "seed", o.seed, "Random seed");
  opt(train, "batch-size", o.batch_size, "Mini-batch size");
  opt(train, "feature-dim", o.feature_dim, "Hashed feature space size (power of two)");
  opt(train, "k", o.k, "Documents retrieved per field");
  opt(train, "max-len", o.max_len, "Representation length cap");
  opt(train, "window", o.window, "Baseline context window");
  flag(train, "single-head", o.single_head, "Single 7-way head instead of gate + type heads");
  flag(train, "baseline", o.train_baseline, "Train the per-token baseline tagger");
  train->callback([&] { command = run_train; });

  auto* tag = app.add_subcommand("tag", "Tag sentences with the length-routed ensemble");
  opt(tag, "input", o.input, "CoNLL sentences")->required();
  opt(tag, "index", o.index, "Index file")->required();
  opt(tag, "model", o.model, "Mention classifier model")->required();
  opt(tag, "baseline", o.baseline, "Baseline tagger model")->required();
  opt(tag, "threshold", o.threshold, "Sentences longer than this use the baseline ('inf' = never)");
  opt(tag, "k", o.k, "Documents retrieved per field");
  opt(tag, "max-len", o.max_len, "Representation length cap");
  opt(tag, "out", o.out, "Predicted CoNLL file")->required();
  tag->callback([&] { command = run_tag; });

  auto* eval = app.add_subcommand("eval", "Per-class and macro-averaged span F1");
  opt(eval, "gold", o.gold, "Gold CoNLL")->required();
  opt(eval, "pred", o.pred, "Predicted CoNLL")->required();
  opt(eval, "json", o.json, "Write the report as JSON");
  eval->callback([&] { command = run_eval; });

  auto* stats = app.add_subcommand("stats", "Retrieval pool sizes and mention recall per field");
  opt(stats, "index", o.index, "Index file")->required();
  opt(stats, "input", o.input, "Gold CoNLL sentences")->required();
  opt(stats, "k", o.k, "Documents retrieved per field");
  opt(stats, "out", o.out, "JSON summary (default stdout)");
  stats->callback([&] { command = run_stats; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    if (e.get_exit_code() != 0) std::cerr << app.help();
    return kExitUsage;
  }

  try {
    return command(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
}

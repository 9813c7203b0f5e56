// Copyright 2026 The kforge Authors.
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

#include "cli.hpp"

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kforge/annotations.hpp"
#include "kforge/corpus.hpp"
#include "kforge/errors.hpp"
#include "kforge/evaluate.hpp"
#include "kforge/generate.hpp"
#include "kforge/jsonl.hpp"
#include "kforge/render.hpp"
#include "kforge/stats.hpp"

namespace kforge::cli {
namespace {

constexpr int kOk = 0;
constexpr int kDataFailure = 1;
constexpr int kUsageFailure = 2;
constexpr std::size_t kMaxViolations = 20;

struct ForgeConfig {
  std::string corpus_path;
  std::string conllu_path;
  std::string trees_path;
  std::vector<std::string> tasks;
  std::uint64_t master_seed = 0;
  std::vector<std::string> phrase_labels{"NP", "VP", "PP"};
  std::string span_mode = "head-token";
  bool expand_conjuncts = false;
  bool no_clausal = false;
  std::size_t per_sentence = 1;
  std::size_t chunk_size = 512;
  ChatTemplate chat;
  std::string output_path;
  std::string format = "raw";
  std::size_t workers = 0;
  bool json = false;

  AnnotationPaths annotation_paths() const {
    AnnotationPaths p;
    if (!conllu_path.empty()) p.conllu = conllu_path;
    if (!trees_path.empty()) p.trees = trees_path;
    return p;
  }

  std::set<TaskKind> task_set() const {
    std::set<TaskKind> out;
    for (const auto& t : tasks) out.insert(parse_task(t));
    return out;
  }

  LabelSet labels() const {
    return LabelSet(phrase_labels.begin(), phrase_labels.end());
  }

  TupleOptions tuple_options() const {
    TupleOptions o;
    if (span_mode == "head-token") {
      o.span_mode = SpanMode::kHeadToken;
    } else if (span_mode == "subtree") {
      o.span_mode = SpanMode::kSubtree;
    } else {
      throw ConfigError("unknown span mode '" + span_mode + "'");
    }
    o.expand_conjuncts = expand_conjuncts;
    o.clausal_predicates = !no_clausal;
    return o;
  }

  // Checks paths and the task/annotation requirements.
  void check() const {
    auto must_exist = [](const std::string& p, const char* what) {
      if (!p.empty() && !std::filesystem::exists(p)) {
        throw IoError(std::string(what) + " not found: " + p);
      }
    };
    must_exist(corpus_path, "corpus");
    must_exist(conllu_path, "CoNLL-U file");
    must_exist(trees_path, "tree file");
    for (TaskKind t : task_set()) {
      if (t == TaskKind::kMPP && trees_path.empty()) {
        throw ConfigError("MPP requires --trees");
      }
      if ((t == TaskKind::kNL2KG || t == TaskKind::kKG2NL) &&
          conllu_path.empty()) {
        throw ConfigError(std::string(task_name(t)) + " requires --conllu");
      }
      if (t == TaskKind::kMTP && trees_path.empty() && conllu_path.empty()) {
        throw ConfigError("MTP requires --conllu or --trees");
      }
    }
    if (per_sentence == 0) throw ConfigError("--per-sentence must be >= 1");
    if (chunk_size == 0) throw ConfigError("--chunk-size must be >= 1");
    chat.validate();
    parse_format(format);
    tuple_options();
  }

  // Everything that determines the output bytes.
  OrderedJson canonical() const {
    OrderedJson j;
    std::vector<std::string> names;
    for (TaskKind t : task_set()) names.emplace_back(task_name(t));
    j["tasks"] = names;
    j["master_seed"] = master_seed;
    const LabelSet label_set = labels();
    j["phrase_labels"] =
        std::vector<std::string>(label_set.begin(), label_set.end());
    j["span_mode"] = span_mode;
    j["expand_conjuncts"] = expand_conjuncts;
    j["clausal_predicates"] = !no_clausal;
    j["per_sentence"] = per_sentence;
    j["chunk_size"] = chunk_size;
    j["user_open"] = chat.user_open;
    j["assistant_open"] = chat.assistant_open;
    j["closer"] = chat.closer;
    j["format"] = format;
    return j;
  }
};

std::string digest_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void add_input_options(CLI::App* cmd, ForgeConfig* cfg) {
  cmd->add_option("--corpus", cfg->corpus_path, "Corpus JSONL (id, text, meta)")
      ->required();
  cmd->add_option("--conllu", cfg->conllu_path, "Dependency annotations");
  cmd->add_option("--trees", cfg->trees_path, "Bracketed constituency trees");
  cmd->add_option("--phrase-labels", cfg->phrase_labels,
                  "Phrase labels eligible for masking")
      ->delimiter(',');
  cmd->add_option("--span-mode", cfg->span_mode,
                  "Tuple element text: head-token or subtree");
  cmd->add_flag("--expand-conjuncts", cfg->expand_conjuncts,
                "Add conjoined subjects and objects as extra tuples");
  cmd->add_flag("--no-clausal", cfg->no_clausal,
                "Only the root counts as a predicate");
  cmd->add_option("--workers", cfg->workers, "Worker threads (0 = all cores)");
}

void print_violations(const std::vector<Violation>& vs, std::ostream& out) {
  for (std::size_t i = 0; i < vs.size() && i < kMaxViolations; ++i) {
    out << vs[i].location << ": " << vs[i].message << "\n";
  }
  if (vs.size() > kMaxViolations) {
    out << "... " << vs.size() - kMaxViolations << " more\n";
  }
  out << vs.size() << " violation(s)\n";
}

int cmd_validate(const ForgeConfig& cfg, std::ostream& out) {
  cfg.check();
  std::vector<Document> docs;
  try {
    docs = load_corpus(cfg.corpus_path);
  } catch (const DataError& e) {
    print_violations({{cfg.corpus_path, e.what()}}, out);
    return kDataFailure;
  }
  AnnotationResult r = load_annotations(std::move(docs),
                                        cfg.annotation_paths());
  if (!r.violations.empty()) {
    print_violations(r.violations, out);
    return kDataFailure;
  }
  out << "OK: " << r.corpus.docs.size() << " documents, "
      << r.corpus.sentence_count() << " sentences\n";
  return kOk;
}

int cmd_stats(const ForgeConfig& cfg, std::ostream& out) {
  cfg.check();
  std::vector<Document> docs =
      load_corpus(cfg.corpus_path, LoadOptions{.allow_empty = true});
  AnnotatedCorpus corpus =
      load_annotations_strict(std::move(docs), cfg.annotation_paths());
  CorpusStats st = compute_stats(corpus, cfg.labels(), cfg.tuple_options());
  if (cfg.json) {
    OrderedJson j;
    j["documents"] = st.documents;
    j["whitespace_tokens"] = st.whitespace_tokens;
    if (st.annotated) {
      j["sentences"] = st.sentences;
      j["tokens"] = st.tokens;
    }
    if (st.has_trees) j["phrase_bearing_sentences"] = st.phrase_bearing;
    if (st.has_graphs) {
      j["tuple_bearing_sentences"] = st.tuple_bearing;
      OrderedJson hist = OrderedJson::object();
      for (const auto& [k, v] : st.tuple_histogram) {
        hist[std::to_string(k)] = v;
      }
      j["tuples_per_sentence"] = hist;
    }
    out << j.dump() << "\n";
  } else {
    out << format_stats(st);
  }
  return kOk;
}

int cmd_forge(const ForgeConfig& cfg, std::ostream& out) {
  cfg.check();
  if (cfg.tasks.empty()) throw ConfigError("--tasks is required");
  if (cfg.output_path.empty()) throw ConfigError("--output is required");
  const OutputFormat format = parse_format(cfg.format);

  std::vector<Document> docs = load_corpus(cfg.corpus_path);
  AnnotatedCorpus corpus =
      load_annotations_strict(std::move(docs), cfg.annotation_paths());

  ForgeOptions opts;
  opts.tasks = cfg.task_set();
  opts.master_seed = cfg.master_seed;
  opts.phrase_labels = cfg.labels();
  opts.tuple_options = cfg.tuple_options();
  opts.per_sentence = cfg.per_sentence;
  opts.chunk_size = cfg.chunk_size;
  opts.workers = cfg.workers;
  ForgeResult result = forge_dataset(corpus, opts);

  AtomicFile file(cfg.output_path);
  OrderedJson header;
  header["record"] = "header";
  header["tool"] = "kforge";
  header["version"] = KFORGE_VERSION;
  header["config_digest"] = digest_hex(cfg.canonical().dump());
  header["master_seed"] = cfg.master_seed;
  header["config"] = cfg.canonical();
  file.stream() << header.dump() << '\n';
  for (const auto& ex : result.examples) {
    file.stream() << output_record(ex, cfg.chat, format).dump() << '\n';
  }
  file.commit();

  for (TaskKind t : opts.tasks) {
    const TaskCounts& c = result.count(t);
    out << task_name(t) << ": emitted " << c.emitted << ", skipped "
        << c.skipped << "\n";
  }
  out << "wrote " << result.examples.size() << " examples to "
      << cfg.output_path << "\n";
  return kOk;
}

struct ScoreConfig {
  std::string predictions_path;
  std::string stemmer = "none";
  bool ascii_tokens = false;
  std::string per_record_path;
  std::string json_path;
  std::size_t workers = 0;
};

int cmd_score(const ScoreConfig& cfg, std::ostream& out) {
  if (!std::filesystem::exists(cfg.predictions_path)) {
    throw IoError("predictions not found: " + cfg.predictions_path);
  }
  RougeOptions opts;
  if (cfg.stemmer == "porter") {
    opts.porter_stemmer = true;
  } else if (cfg.stemmer != "none") {
    throw ConfigError("unknown stemmer '" + cfg.stemmer + "'");
  }
  opts.unicode_tokens = !cfg.ascii_tokens;
  ScoreReport report = score_file(cfg.predictions_path, opts, cfg.workers);

  out << "records      " << report.count << "\n"
      << "ROUGE-L P    " << format_percent(report.mean_p) << "\n"
      << "ROUGE-L R    " << format_percent(report.mean_r) << "\n"
      << "ROUGE-L F1   " << format_percent(report.mean_f1) << "\n";
  if (!cfg.per_record_path.empty()) {
    AtomicFile file(cfg.per_record_path);
    for (const auto& s : report.per_record) {
      OrderedJson j;
      j["precision"] = s.precision;
      j["recall"] = s.recall;
      j["f1"] = s.f1;
      file.stream() << j.dump() << '\n';
    }
    file.commit();
  }
  if (!cfg.json_path.empty()) {
    AtomicFile file(cfg.json_path);
    OrderedJson j;
    j["count"] = report.count;
    j["mean_p"] = report.mean_p;
    j["mean_r"] = report.mean_r;
    j["mean_f1"] = report.mean_f1;
    file.stream() << j.dump() << '\n';
    file.commit();
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Builds instruction-formatted continual-pretraining datasets "
               "from annotated corpora and scores QA predictions."};
  app.set_config("--config", "", "TOML/INI config file; flags win");
  app.require_subcommand(1);

  ForgeConfig cfg;
  ScoreConfig score_cfg;

  auto* validate = app.add_subcommand("validate",
                                      "Check corpus and annotation alignment");
  add_input_options(validate, &cfg);
  validate->add_option("--tasks", cfg.tasks, "Tasks the data is meant for")
      ->delimiter(',');

  auto* stats = app.add_subcommand("stats", "Report corpus statistics");
  add_input_options(stats, &cfg);
  stats->add_flag("--json", cfg.json, "Machine-readable output");

  auto* forge = app.add_subcommand("forge", "Write a training dataset");
  add_input_options(forge, &cfg);
  forge->add_option("--tasks", cfg.tasks, "NTP,MTP,MPP,NL2KG,KG2NL")
      ->delimiter(',')
      ->required();
  forge->add_option("--seed", cfg.master_seed, "Master seed");
  forge->add_option("--per-sentence", cfg.per_sentence,
                    "Independent draws per sentence for MTP/MPP");
  forge->add_option("--chunk-size", cfg.chunk_size,
                    "NTP chunk size in whitespace tokens");
  forge->add_option("--user-open", cfg.chat.user_open, "User role marker");
  forge->add_option("--assistant-open", cfg.chat.assistant_open,
                    "Assistant role marker");
  forge->add_option("--closer", cfg.chat.closer, "Text after the response");
  forge->add_option("--format", cfg.format,
                    "raw, rendered or prompt-completion");
  forge->add_option("--output,-o", cfg.output_path, "Output JSONL")->required();

  auto* score = app.add_subcommand("score", "ROUGE-L F1 over predictions");
  score->add_option("predictions", score_cfg.predictions_path,
                    "JSONL with doc_id, question, prediction, reference")
      ->required();
  score->add_option("--stemmer", score_cfg.stemmer, "none or porter");
  score->add_flag("--ascii-tokens", score_cfg.ascii_tokens,
                  "Treat only ASCII letters and digits as token characters");
  score->add_option("--per-record", score_cfg.per_record_path,
                    "Write per-record scores as JSONL");
  score->add_option("--json", score_cfg.json_path,
                    "Write {count, mean_p, mean_r, mean_f1}");
  score->add_option("--workers", score_cfg.workers, "Worker threads");

  for (CLI::App* sub : {validate, stats, forge, score}) sub->configurable();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "kforge: " << e.what() << "\n";
    return kUsageFailure;
  }

  try {
    if (*validate) return cmd_validate(cfg, out);
    if (*stats) return cmd_stats(cfg, out);
    if (*forge) return cmd_forge(cfg, out);
    if (*score) return cmd_score(score_cfg, out);
  } catch (const IoError& e) {
    err << "kforge: " << e.what() << "\n";
    return kUsageFailure;
  } catch (const DataError& e) {
    err << "kforge: " << e.what() << "\n";
    return kDataFailure;
  } catch (const GenerateError& e) {
    err << "kforge: " << e.what() << "\n";
    return kDataFailure;
  }
  return kUsageFailure;
}

}  // namespace kforge::cli

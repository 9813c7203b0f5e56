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

#include "kforge/generate.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "kforge/errors.hpp"

namespace kforge {
namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

void fnv_bytes(std::uint64_t* h, std::string_view bytes) {
  for (unsigned char c : bytes) {
    *h ^= c;
    *h *= kFnvPrime;
  }
}

void fnv_u64(std::uint64_t* h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    *h ^= (v >> (8 * i)) & 0xff;
    *h *= kFnvPrime;
  }
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

TrainingExample base_example(TaskKind task, const Sentence& s,
                             std::uint64_t seed) {
  TrainingExample ex;
  ex.task = task;
  ex.doc_id = s.doc_id;
  ex.sent_index = static_cast<long>(s.sent_index);
  ex.selection_seed = seed;
  return ex;
}

struct DocOutput {
  std::array<std::vector<TrainingExample>, kAllTasks.size()> by_task;
  std::array<TaskCounts, kAllTasks.size()> counts{};
};

class DocumentForge {
 public:
  explicit DocumentForge(const ForgeOptions& opts) : opts_(opts) {}

  DocOutput run(const AnnotatedDocument& adoc) const {
    DocOutput out;
    for (TaskKind task : opts_.tasks) {
      auto& sink = out.by_task[static_cast<std::size_t>(task)];
      auto& counts = out.counts[static_cast<std::size_t>(task)];
      if (task == TaskKind::kNTP) {
        auto chunks = make_ntp(adoc.doc, opts_.chunk_size, opts_.master_seed);
        if (chunks.empty()) ++counts.skipped;
        counts.emitted += chunks.size();
        std::move(chunks.begin(), chunks.end(), std::back_inserter(sink));
        continue;
      }
      for (const auto& as : adoc.sentences) {
        sentence_examples(task, as, &sink, &counts);
      }
    }
    return out;
  }

 private:
  void sentence_examples(TaskKind task, const AnnotatedSentence& as,
                         std::vector<TrainingExample>* sink,
                         TaskCounts* counts) const {
    const Sentence& s = as.sentence;
    const long idx = static_cast<long>(s.sent_index);
    auto seed = [&](std::uint64_t draw) {
      return example_seed(opts_.master_seed, s.doc_id, idx, task, draw);
    };
    auto emit = [&](std::optional<TrainingExample> ex) {
      if (ex) {
        sink->push_back(std::move(*ex));
        ++counts->emitted;
      } else {
        ++counts->skipped;
      }
    };
    switch (task) {
      case TaskKind::kMTP:
        if (s.tokens.size() < 2 || !mask_eligible(s)) {
          ++counts->skipped;
          return;
        }
        for (std::size_t k = 0; k < opts_.per_sentence; ++k) {
          emit(make_mtp(s, seed(k)));
        }
        return;
      case TaskKind::kMPP: {
        if (!as.tree) throw DataError("sentence without a tree: " + where(s));
        if (!mask_eligible(s)) {
          ++counts->skipped;
          return;
        }
        auto phrases = extract_phrases(*as.tree, s, opts_.phrase_labels);
        if (phrases.empty()) {
          ++counts->skipped;
          return;
        }
        for (std::size_t k = 0; k < opts_.per_sentence; ++k) {
          emit(make_mpp(s, phrases, seed(k)));
        }
        return;
      }
      case TaskKind::kNL2KG:
      case TaskKind::kKG2NL: {
        if (!as.graph) throw DataError("sentence without a graph: " + where(s));
        auto tuples = extract_tuples(*as.graph, s, opts_.tuple_options);
        auto ex = task == TaskKind::kNL2KG ? make_nl2kg(s, tuples)
                                           : make_kg2nl(s, tuples);
        if (ex) ex->selection_seed = seed(0);
        emit(std::move(ex));
        return;
      }
      case TaskKind::kNTP:
        return;
    }
  }

  static std::string where(const Sentence& s) {
    return s.doc_id + ":" + std::to_string(s.sent_index);
  }

  const ForgeOptions& opts_;
};

}  // namespace

std::string_view task_name(TaskKind task) {
  switch (task) {
    case TaskKind::kNTP: return "NTP";
    case TaskKind::kMTP: return "MTP";
    case TaskKind::kMPP: return "MPP";
    case TaskKind::kNL2KG: return "NL2KG";
    case TaskKind::kKG2NL: return "KG2NL";
  }
  return "?";
}

TaskKind parse_task(std::string_view name) {
  std::string upper(name);
  for (char& c : upper) c = static_cast<char>(std::toupper(c));
  for (TaskKind t : kAllTasks) {
    if (upper == task_name(t)) return t;
  }
  throw ConfigError("unknown task '" + std::string(name) + "'");
}

std::uint64_t example_seed(std::uint64_t master_seed, std::string_view doc_id,
                           long sent_index, TaskKind task,
                           std::uint64_t draw) {
  std::uint64_t h = kFnvOffset;
  fnv_u64(&h, master_seed);
  fnv_bytes(&h, doc_id);
  fnv_bytes(&h, std::string_view("\x1f", 1));
  fnv_u64(&h, static_cast<std::uint64_t>(static_cast<std::int64_t>(sent_index)));
  fnv_bytes(&h, task_name(task));
  fnv_bytes(&h, std::string_view("\x1f", 1));
  fnv_u64(&h, draw);
  return splitmix64(h);
}

std::size_t select_index(std::uint64_t seed, std::size_t n) {
  if (n == 0) throw GenerateError("select_index over an empty range");
  std::mt19937_64 engine(seed);
  const std::uint64_t bound = n;
  // Reject the low 2^64 mod n values so every residue is equally likely.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    std::uint64_t r = engine();
    if (r >= threshold) return static_cast<std::size_t>(r % bound);
  }
}

std::string splice_mask(const Sentence& sentence, std::size_t token_start,
                        std::size_t token_end) {
  std::size_t b = sentence.tokens[token_start].char_start;
  std::size_t e = sentence.tokens[token_end - 1].char_end;
  std::string out;
  out.reserve(sentence.text.size() + kMask.size());
  out.append(sentence.text, 0, b);
  out.append(kMask);
  out.append(sentence.text, e, std::string::npos);
  return out;
}

bool mask_eligible(const Sentence& sentence) {
  return sentence.text.find(kMask) == std::string::npos;
}

MaskSelection mtp_selection(const Sentence& sentence, std::uint64_t seed) {
  std::size_t i = select_index(seed, sentence.tokens.size());
  return {i, i + 1, sentence.tokens[i].form};
}

TrainingExample make_mtp(const Sentence& sentence, std::uint64_t seed) {
  if (sentence.tokens.size() < 2) {
    throw GenerateError("MTP needs at least 2 tokens: " + sentence.doc_id +
                        ":" + std::to_string(sentence.sent_index));
  }
  if (!mask_eligible(sentence)) {
    throw GenerateError("sentence already contains the mask literal");
  }
  MaskSelection sel = mtp_selection(sentence, seed);
  TrainingExample ex = base_example(TaskKind::kMTP, sentence, seed);
  ex.user_query = std::string(kMtpPrefix) +
                  splice_mask(sentence, sel.token_start, sel.token_end);
  ex.response = std::move(sel.masked_text);
  return ex;
}

std::optional<TrainingExample> make_mpp(const Sentence& sentence,
                                        std::span<const Phrase> phrases,
                                        std::uint64_t seed) {
  if (phrases.empty()) return std::nullopt;
  if (!mask_eligible(sentence)) {
    throw GenerateError("sentence already contains the mask literal");
  }
  const Phrase& p = phrases[select_index(seed, phrases.size())];
  TrainingExample ex = base_example(TaskKind::kMPP, sentence, seed);
  ex.user_query = std::string(kMppPrefix) +
                  splice_mask(sentence, p.token_start, p.token_end);
  ex.response = p.text;
  return ex;
}

std::optional<TrainingExample> make_nl2kg(
    const Sentence& sentence, std::span<const KnowledgeTuple> tuples) {
  if (tuples.empty()) return std::nullopt;
  TrainingExample ex = base_example(TaskKind::kNL2KG, sentence, 0);
  ex.user_query = std::string(kNl2KgPrefix) + sentence.text;
  ex.response = serialize_tuples(tuples);
  return ex;
}

std::optional<TrainingExample> make_kg2nl(
    const Sentence& sentence, std::span<const KnowledgeTuple> tuples) {
  if (tuples.empty()) return std::nullopt;
  TrainingExample ex = base_example(TaskKind::kKG2NL, sentence, 0);
  ex.user_query = std::string(kKg2NlPrefix) + serialize_tuples(tuples);
  ex.response = sentence.text;
  return ex;
}

std::vector<TrainingExample> make_ntp(const Document& doc,
                                      std::size_t chunk_size,
                                      std::uint64_t master_seed) {
  if (chunk_size == 0) throw GenerateError("chunk_size must be at least 1");
  std::vector<std::string_view> words = split_whitespace(doc.text);
  std::vector<TrainingExample> out;
  const std::string_view text(doc.text);
  for (std::size_t i = 0, chunk = 0; i < words.size(); i += chunk_size, ++chunk) {
    std::size_t last = std::min(words.size(), i + chunk_size) - 1;
    std::size_t b = static_cast<std::size_t>(words[i].data() - text.data());
    std::size_t e = static_cast<std::size_t>(words[last].data() - text.data()) +
                    words[last].size();
    TrainingExample ex;
    ex.task = TaskKind::kNTP;
    ex.doc_id = doc.doc_id;
    ex.sent_index = -1;
    ex.response = std::string(text.substr(b, e - b));
    ex.selection_seed =
        example_seed(master_seed, doc.doc_id, -1, TaskKind::kNTP, chunk);
    out.push_back(std::move(ex));
  }
  return out;
}

ForgeResult forge_dataset(const AnnotatedCorpus& corpus,
                          const ForgeOptions& options) {
  for (TaskKind t : options.tasks) {
    bool ok = true;
    if (t == TaskKind::kMTP) ok = corpus.has_graphs || corpus.has_trees;
    if (t == TaskKind::kMPP) ok = corpus.has_trees;
    if (t == TaskKind::kNL2KG || t == TaskKind::kKG2NL) ok = corpus.has_graphs;
    if (!ok) {
      throw ConfigError(std::string(task_name(t)) +
                        " requires annotations that were not provided");
    }
  }
  if (options.per_sentence == 0) {
    throw ConfigError("per_sentence must be at least 1");
  }
  if (options.chunk_size == 0) throw ConfigError("chunk_size must be at least 1");

  const std::size_t n = corpus.docs.size();
  std::vector<DocOutput> outputs(n);
  const DocumentForge forge(options);
  std::size_t workers = options.workers;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(n, 1));

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    for (std::size_t d; (d = next.fetch_add(1)) < n;) {
      try {
        outputs[d] = forge.run(corpus.docs[d]);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  if (error) std::rethrow_exception(error);

  ForgeResult result;
  for (TaskKind t : kAllTasks) {
    const auto ti = static_cast<std::size_t>(t);
    for (auto& out : outputs) {
      result.counts[ti].emitted += out.counts[ti].emitted;
      result.counts[ti].skipped += out.counts[ti].skipped;
      std::move(out.by_task[ti].begin(), out.by_task[ti].end(),
                std::back_inserter(result.examples));
    }
  }
  return result;
}

}  // namespace kforge

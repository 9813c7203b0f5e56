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

#ifndef KFORGE_GENERATE_HPP_
#define KFORGE_GENERATE_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kforge/annotations.hpp"
#include "kforge/corpus.hpp"
#include "kforge/depgraph.hpp"
#include "kforge/treebank.hpp"

namespace kforge {

enum class TaskKind { kNTP, kMTP, kMPP, kNL2KG, kKG2NL };

// Canonical emission order.
inline constexpr std::array<TaskKind, 5> kAllTasks = {
    TaskKind::kNTP, TaskKind::kMTP, TaskKind::kMPP, TaskKind::kNL2KG,
    TaskKind::kKG2NL};

std::string_view task_name(TaskKind task);
// Case-insensitive; accepts "NL2KG", "KG2NL". Throws ConfigError.
TaskKind parse_task(std::string_view name);

inline constexpr std::string_view kMask = "<mask>";
inline constexpr std::string_view kMtpPrefix = "Complete the masked token: ";
inline constexpr std::string_view kMppPrefix = "Complete the masked words: ";
inline constexpr std::string_view kNl2KgPrefix =
    "Please extract knowledge tuples (subject, verb, object) from the text: ";
inline constexpr std::string_view kKg2NlPrefix =
    "Please write a sentence expressing the knowledge tuples (subject, verb, "
    "object): ";

struct TrainingExample {
  TaskKind task = TaskKind::kMTP;
  std::string user_query;
  std::string response;
  std::string doc_id;
  // -1 for document-level NTP chunks.
  long sent_index = 0;
  std::uint64_t selection_seed = 0;

  friend bool operator==(const TrainingExample&,
                         const TrainingExample&) = default;
};

struct MaskSelection {
  std::size_t token_start = 0;
  std::size_t token_end = 0;
  std::string masked_text;
};

class GenerateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Per-example seed: a stable hash of its position, independent of traversal
// order. `draw` distinguishes repeated draws for the same sentence and task.
std::uint64_t example_seed(std::uint64_t master_seed, std::string_view doc_id,
                           long sent_index, TaskKind task,
                           std::uint64_t draw = 0);

// Uniform index in [0, n) derived from `seed`. n must be positive.
std::size_t select_index(std::uint64_t seed, std::size_t n);

// Sentence text with bytes [start, end) replaced by the mask literal.
std::string splice_mask(const Sentence& sentence, std::size_t token_start,
                        std::size_t token_end);

MaskSelection mtp_selection(const Sentence& sentence, std::uint64_t seed);

// Throws GenerateError for sentences with fewer than two tokens or which
// already contain the mask literal.
TrainingExample make_mtp(const Sentence& sentence, std::uint64_t seed);

// nullopt when `phrases` is empty.
std::optional<TrainingExample> make_mpp(const Sentence& sentence,
                                        std::span<const Phrase> phrases,
                                        std::uint64_t seed);

std::optional<TrainingExample> make_nl2kg(
    const Sentence& sentence, std::span<const KnowledgeTuple> tuples);

std::optional<TrainingExample> make_kg2nl(
    const Sentence& sentence, std::span<const KnowledgeTuple> tuples);

// Consecutive chunks of at most chunk_size whitespace tokens over the raw
// document text; spacing inside a chunk is kept.
std::vector<TrainingExample> make_ntp(const Document& doc,
                                      std::size_t chunk_size,
                                      std::uint64_t master_seed = 0);

bool mask_eligible(const Sentence& sentence);

struct ForgeOptions {
  std::set<TaskKind> tasks;
  std::uint64_t master_seed = 0;
  LabelSet phrase_labels = default_phrase_labels();
  TupleOptions tuple_options;
  std::size_t per_sentence = 1;
  std::size_t chunk_size = 512;
  // 0 means std::thread::hardware_concurrency().
  std::size_t workers = 0;
};

struct TaskCounts {
  std::size_t emitted = 0;
  std::size_t skipped = 0;
};

struct ForgeResult {
  std::vector<TrainingExample> examples;
  std::array<TaskCounts, kAllTasks.size()> counts{};

  const TaskCounts& count(TaskKind t) const {
    return counts[static_cast<std::size_t>(t)];
  }
};

// Emits examples in (task, document, sentence, draw) order. Throws
// ConfigError when a task lacks the annotation it needs.
ForgeResult forge_dataset(const AnnotatedCorpus& corpus,
                          const ForgeOptions& options);

}  // namespace kforge

#endif  // KFORGE_GENERATE_HPP_

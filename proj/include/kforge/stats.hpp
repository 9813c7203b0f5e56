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

#ifndef KFORGE_STATS_HPP_
#define KFORGE_STATS_HPP_

#include <cstddef>
#include <map>
#include <string>

#include "kforge/annotations.hpp"
#include "kforge/depgraph.hpp"
#include "kforge/treebank.hpp"

namespace kforge {

struct CorpusStats {
  std::size_t documents = 0;
  std::size_t whitespace_tokens = 0;
  bool annotated = false;
  std::size_t sentences = 0;
  std::size_t tokens = 0;
  bool has_trees = false;
  std::size_t phrase_bearing = 0;
  bool has_graphs = false;
  std::size_t tuple_bearing = 0;
  // tuples per sentence -> number of sentences
  std::map<std::size_t, std::size_t> tuple_histogram;
};

CorpusStats compute_stats(const AnnotatedCorpus& corpus,
                          const LabelSet& phrase_labels,
                          const TupleOptions& tuple_options);

std::string format_stats(const CorpusStats& stats);

}  // namespace kforge

#endif  // KFORGE_STATS_HPP_

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

#ifndef KFORGE_DEPGRAPH_HPP_
#define KFORGE_DEPGRAPH_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kforge/corpus.hpp"

namespace kforge {

inline constexpr int kRootHead = -1;

// One CoNLL-U word line. Indices are 0-based; head is kRootHead for the
// root. Columns we don't interpret are kept verbatim for serialization.
struct DepNode {
  std::size_t token_index = 0;
  std::string form;
  std::string lemma;
  std::string upos;
  std::string xpos;
  std::string feats;
  int head = kRootHead;
  std::string deprel;
  std::string deps;
  std::string misc;
};

struct DependencyGraph {
  // Comment lines and multiword/empty-node lines, in input order, each
  // tagged with the number of word lines that preceded it.
  struct RawLine {
    std::size_t before_word = 0;
    std::string text;
  };
  std::vector<RawLine> raw_lines;
  std::vector<DepNode> nodes;

  // Value of the "# sent_id = ..." comment, if any.
  std::optional<std::string> sent_id() const;
  std::vector<std::string> forms() const;
};

struct KnowledgeTuple {
  std::string subject;
  std::string relation;
  std::string object;
  // Head token indices of subject, relation, object.
  std::array<std::size_t, 3> provenance{};
  friend bool operator==(const KnowledgeTuple&, const KnowledgeTuple&) = default;
};

enum class SpanMode { kHeadToken, kSubtree };

struct TupleOptions {
  SpanMode span_mode = SpanMode::kHeadToken;
  bool clausal_predicates = true;
  bool expand_conjuncts = false;
  std::set<std::string, std::less<>> subject_rels{
      "nsubj", "nsubj:pass", "csubj", "nsubjpass", "csubjpass"};
  std::set<std::string, std::less<>> object_rels{"obj", "dobj", "iobj", "obl",
                                                 "attr"};
  std::set<std::string, std::less<>> clausal_rels{"conj", "ccomp", "advcl",
                                                  "parataxis"};
  std::set<std::string, std::less<>> predicate_upos{"VERB", "AUX"};
};

// Parses one sentence block without checking it against a sentence:
// column count, consecutive ids, head range, acyclicity and the presence
// of a root are validated. Throws DataError.
DependencyGraph parse_conllu(std::string_view block);

// As above, and additionally requires the word forms to equal the
// sentence's token forms.
DependencyGraph parse_conllu(std::string_view block, const Sentence& sentence);

// Inverse of parse_conllu; comments and multiword lines are re-emitted in
// place. No trailing blank line.
std::string serialize_conllu(const DependencyGraph& graph);

bool is_root_relation(std::string_view deprel);

std::vector<KnowledgeTuple> extract_tuples(const DependencyGraph& graph,
                                           const Sentence& sentence,
                                           const TupleOptions& options = {});

// "(s, r, o); (s, r, o)", or "(none)" for an empty list.
std::string serialize_tuples(std::span<const KnowledgeTuple> tuples);

}  // namespace kforge

#endif  // KFORGE_DEPGRAPH_HPP_

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

#ifndef KFORGE_TREEBANK_HPP_
#define KFORGE_TREEBANK_HPP_

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "kforge/corpus.hpp"

namespace kforge {

// Half-open token-index range.
struct TokenSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  friend auto operator<=>(const TokenSpan&, const TokenSpan&) = default;
};

// A node is either internal (label + children) or a leaf referencing a
// sentence token. Leaf forms are kept as written in the bracketed input,
// escapes included, so serialization reproduces them.
struct ConstituencyTree {
  std::string label;
  std::vector<ConstituencyTree> children;
  TokenSpan span;
  std::optional<std::size_t> leaf;
  std::string leaf_form;

  bool is_leaf() const { return leaf.has_value(); }
};

struct Phrase {
  std::string label;
  std::size_t token_start = 0;
  std::size_t token_end = 0;
  std::string text;
};

using LabelSet = std::set<std::string, std::less<>>;

inline LabelSet default_phrase_labels() { return {"NP", "VP", "PP"}; }

// Parses one bracketed tree without reference to a sentence; leaves are
// numbered left to right. Throws DataError on malformed input, reporting the
// byte position of unbalanced parentheses.
ConstituencyTree parse_bracketed(std::string_view line);

// Parses and binds the tree to `sentence`: leaf count and leaf forms (after
// unescaping) must match the sentence tokens.
ConstituencyTree parse_bracketed(std::string_view line,
                                 const Sentence& sentence);

// Canonical single-space form, e.g. "(S (NP (DT The) (NN cat)) (VP (VBD
// sat)))".
std::string serialize_tree(const ConstituencyTree& tree);

// Leaf forms in order, unescaped.
std::vector<std::string> tree_leaves(const ConstituencyTree& tree);

// "-LRB-" -> "(" and friends; other forms pass through.
std::string unescape_ptb(std::string_view form);

// "NP-SBJ" -> "NP", "NP=2" -> "NP". Labels starting with '-' are unchanged.
std::string_view base_label(std::string_view label);

// Nodes whose base label is in `labels` and whose span is not the whole
// sentence, in preorder, deduplicated by (label, span).
std::vector<Phrase> extract_phrases(const ConstituencyTree& tree,
                                    const Sentence& sentence,
                                    const LabelSet& labels);

}  // namespace kforge

#endif  // KFORGE_TREEBANK_HPP_

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

#include "kforge/treebank.hpp"

#include <utility>

#include "kforge/errors.hpp"

namespace kforge {
namespace {

class BracketParser {
 public:
  explicit BracketParser(std::string_view text) : text_(text) {}

  ConstituencyTree parse() {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != '(') {
      throw DataError("tree must start with '(' at position " +
                      std::to_string(pos_));
    }
    ConstituencyTree root = parse_node();
    skip_space();
    if (pos_ != text_.size()) {
      if (text_[pos_] == ')') {
        throw DataError("unbalanced parentheses: unexpected ')' at position " +
                        std::to_string(pos_));
      }
      throw DataError("trailing content after tree at position " +
                      std::to_string(pos_));
    }
    return root;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }

  std::string_view atom() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && !is_space(text_[pos_]) &&
           text_[pos_] != '(' && text_[pos_] != ')') {
      ++pos_;
    }
    return text_.substr(start, pos_ - start);
  }

  // At '('.
  ConstituencyTree parse_node() {
    std::size_t open = pos_;
    ++pos_;
    ConstituencyTree node;
    skip_space();
    node.label = std::string(atom());
    std::size_t first_leaf = next_leaf_;
    for (;;) {
      skip_space();
      if (pos_ >= text_.size()) {
        throw DataError("unbalanced parentheses: '(' at position " +
                        std::to_string(open) + " is never closed");
      }
      char c = text_[pos_];
      if (c == ')') {
        ++pos_;
        break;
      }
      if (c == '(') {
        node.children.push_back(parse_node());
      } else {
        ConstituencyTree leaf;
        leaf.leaf_form = std::string(atom());
        leaf.leaf = next_leaf_;
        leaf.span = {next_leaf_, next_leaf_ + 1};
        ++next_leaf_;
        node.children.push_back(std::move(leaf));
      }
    }
    if (node.children.empty()) {
      throw DataError("node '" + node.label + "' at position " +
                      std::to_string(open) + " has no children");
    }
    node.span = {first_leaf, next_leaf_};
    return node;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t next_leaf_ = 0;
};

void collect_leaves(const ConstituencyTree& t, std::vector<std::string>* out) {
  if (t.is_leaf()) {
    out->push_back(unescape_ptb(t.leaf_form));
    return;
  }
  for (const auto& c : t.children) collect_leaves(c, out);
}

void serialize_into(const ConstituencyTree& t, std::string* out) {
  if (t.is_leaf()) {
    out->append(t.leaf_form);
    return;
  }
  out->push_back('(');
  out->append(t.label);
  for (const auto& c : t.children) {
    out->push_back(' ');
    serialize_into(c, out);
  }
  out->push_back(')');
}

void collect_phrases(const ConstituencyTree& t, const Sentence& sentence,
                     const LabelSet& labels,
                     std::set<std::pair<std::string, TokenSpan>>* seen,
                     std::vector<Phrase>* out) {
  if (t.is_leaf()) return;
  std::string_view base = base_label(t.label);
  bool whole = t.span.start == 0 && t.span.end == sentence.tokens.size();
  if (!whole && labels.contains(base)) {
    if (seen->emplace(std::string(base), t.span).second) {
      out->push_back(Phrase{std::string(base), t.span.start, t.span.end,
                            std::string(sentence.span_text(t.span.start,
                                                           t.span.end))});
    }
  }
  for (const auto& c : t.children) {
    collect_phrases(c, sentence, labels, seen, out);
  }
}

}  // namespace

std::string unescape_ptb(std::string_view form) {
  if (form == "-LRB-") return "(";
  if (form == "-RRB-") return ")";
  if (form == "-LSB-") return "[";
  if (form == "-RSB-") return "]";
  if (form == "-LCB-") return "{";
  if (form == "-RCB-") return "}";
  return std::string(form);
}

std::string_view base_label(std::string_view label) {
  // Bracket-style labels such as -NONE- and -LRB- carry no suffix.
  if (label.starts_with('-')) return label;
  std::size_t cut = label.find_first_of("-=", 1);
  return cut == std::string_view::npos ? label : label.substr(0, cut);
}

ConstituencyTree parse_bracketed(std::string_view line) {
  return BracketParser(line).parse();
}

ConstituencyTree parse_bracketed(std::string_view line,
                                 const Sentence& sentence) {
  ConstituencyTree tree = parse_bracketed(line);
  std::vector<std::string> leaves = tree_leaves(tree);
  if (leaves.size() != sentence.tokens.size()) {
    throw DataError("leaf count mismatch in " + sentence.doc_id + ":" +
                    std::to_string(sentence.sent_index) + ": tree has " +
                    std::to_string(leaves.size()) + " leaves, sentence has " +
                    std::to_string(sentence.tokens.size()) + " tokens");
  }
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    if (leaves[i] != sentence.tokens[i].form) {
      throw DataError("leaf form mismatch in " + sentence.doc_id + ":" +
                      std::to_string(sentence.sent_index) + " at token " +
                      std::to_string(i) + ": '" + leaves[i] + "' vs '" +
                      sentence.tokens[i].form + "'");
    }
  }
  return tree;
}

std::string serialize_tree(const ConstituencyTree& tree) {
  std::string out;
  serialize_into(tree, &out);
  return out;
}

std::vector<std::string> tree_leaves(const ConstituencyTree& tree) {
  std::vector<std::string> out;
  collect_leaves(tree, &out);
  return out;
}

std::vector<Phrase> extract_phrases(const ConstituencyTree& tree,
                                    const Sentence& sentence,
                                    const LabelSet& labels) {
  std::vector<Phrase> out;
  std::set<std::pair<std::string, TokenSpan>> seen;
  collect_phrases(tree, sentence, labels, &seen, &out);
  return out;
}

}  // namespace kforge

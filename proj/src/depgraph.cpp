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

#include "kforge/depgraph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <utility>

#include "kforge/errors.hpp"

namespace kforge {
namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t cut = s.find(sep, start);
    if (cut == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, cut - start));
    start = cut + 1;
  }
}

std::optional<long> to_int(std::string_view s) {
  long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

bool ieq(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

class TupleExtractor {
 public:
  TupleExtractor(const DependencyGraph& g, const Sentence& s,
                 const TupleOptions& o)
      : graph_(g), sentence_(s), opts_(o), children_(g.nodes.size()) {
    for (const auto& n : g.nodes) {
      if (n.head != kRootHead) {
        children_[static_cast<std::size_t>(n.head)].push_back(n.token_index);
      }
    }
  }

  std::vector<KnowledgeTuple> run() const {
    std::vector<KnowledgeTuple> out;
    for (const auto& p : graph_.nodes) {
      if (!is_predicate(p)) continue;
      std::vector<std::size_t> subjects = dependents(p, opts_.subject_rels);
      std::vector<std::size_t> objects = dependents(p, opts_.object_rels);
      if (subjects.empty() || objects.empty()) continue;
      std::string rel = graph_.nodes[p.token_index].form;
      for (std::size_t s : subjects) {
        for (std::size_t o : objects) {
          out.push_back(KnowledgeTuple{element_text(s), rel, element_text(o),
                                       {s, p.token_index, o}});
        }
      }
    }
    return out;
  }

 private:
  bool is_predicate(const DepNode& n) const {
    if (is_root_relation(n.deprel)) return true;
    return opts_.clausal_predicates && opts_.clausal_rels.contains(n.deprel) &&
           opts_.predicate_upos.contains(n.upos);
  }

  std::vector<std::size_t> dependents(
      const DepNode& p, const std::set<std::string, std::less<>>& rels) const {
    std::vector<std::size_t> out;
    for (std::size_t c : children_[p.token_index]) {
      if (rels.contains(graph_.nodes[c].deprel)) {
        out.push_back(c);
        if (opts_.expand_conjuncts) add_conjuncts(c, &out);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  void add_conjuncts(std::size_t head, std::vector<std::size_t>* out) const {
    for (std::size_t c : children_[head]) {
      if (graph_.nodes[c].deprel == "conj") {
        out->push_back(c);
        add_conjuncts(c, out);
      }
    }
  }

  bool is_punct(std::size_t i) const {
    return graph_.nodes[i].deprel == "punct" || graph_.nodes[i].upos == "PUNCT";
  }

  void subtree(std::size_t i, std::vector<std::size_t>* out) const {
    out->push_back(i);
    for (std::size_t c : children_[i]) {
      const std::string& rel = graph_.nodes[c].deprel;
      if (rel == "conj" || rel == "cc" || rel == "punct" || rel == "case") {
        continue;
      }
      subtree(c, out);
    }
  }

  std::string element_text(std::size_t head) const {
    if (opts_.span_mode == SpanMode::kHeadToken) {
      return sentence_.tokens[head].form;
    }
    std::vector<std::size_t> members;
    subtree(head, &members);
    auto [lo, hi] = std::minmax_element(members.begin(), members.end());
    std::size_t first = *lo;
    std::size_t last = *hi + 1;
    while (first < head && is_punct(first)) ++first;
    while (last > head + 1 && is_punct(last - 1)) --last;
    return std::string(sentence_.span_text(first, last));
  }

  const DependencyGraph& graph_;
  const Sentence& sentence_;
  const TupleOptions& opts_;
  std::vector<std::vector<std::size_t>> children_;
};

}  // namespace

bool is_root_relation(std::string_view deprel) { return ieq(deprel, "root"); }

std::optional<std::string> DependencyGraph::sent_id() const {
  static constexpr std::string_view kKey = "sent_id";
  for (const auto& raw : raw_lines) {
    std::string_view line = raw.text;
    if (line.empty() || line[0] != '#') continue;
    line = trim(line.substr(1));
    if (line.substr(0, kKey.size()) != kKey) continue;
    line = trim(line.substr(kKey.size()));
    if (line.empty() || line[0] != '=') continue;
    return std::string(trim(line.substr(1)));
  }
  return std::nullopt;
}

std::vector<std::string> DependencyGraph::forms() const {
  std::vector<std::string> out;
  out.reserve(nodes.size());
  for (const auto& n : nodes) out.push_back(n.form);
  return out;
}

DependencyGraph parse_conllu(std::string_view block) {
  DependencyGraph g;
  std::size_t line_no = 0;
  for (std::string_view line : split(block, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) continue;
    auto where = [&] { return "CoNLL-U line " + std::to_string(line_no); };
    if (line[0] == '#') {
      g.raw_lines.push_back({g.nodes.size(), std::string(line)});
      continue;
    }
    std::vector<std::string_view> cols = split(line, '\t');
    if (cols.size() != 10) {
      throw DataError(where() + ": expected 10 columns, found " +
                      std::to_string(cols.size()));
    }
    if (cols[0].find_first_of("-.") != std::string_view::npos) {
      g.raw_lines.push_back({g.nodes.size(), std::string(line)});
      continue;
    }
    auto id = to_int(cols[0]);
    if (!id || *id != static_cast<long>(g.nodes.size()) + 1) {
      throw DataError(where() + ": expected token id " +
                      std::to_string(g.nodes.size() + 1) + ", found '" +
                      std::string(cols[0]) + "'");
    }
    auto head = to_int(cols[6]);
    if (!head || *head < 0) {
      throw DataError(where() + ": bad head '" + std::string(cols[6]) + "'");
    }
    DepNode n;
    n.token_index = g.nodes.size();
    n.form = std::string(cols[1]);
    n.lemma = std::string(cols[2]);
    n.upos = std::string(cols[3]);
    n.xpos = std::string(cols[4]);
    n.feats = std::string(cols[5]);
    n.head = static_cast<int>(*head) - 1;
    n.deprel = std::string(cols[7]);
    n.deps = std::string(cols[8]);
    n.misc = std::string(cols[9]);
    g.nodes.push_back(std::move(n));
  }
  const std::size_t n = g.nodes.size();
  if (n == 0) throw DataError("CoNLL-U block has no word lines");
  bool has_root = false;
  for (const auto& node : g.nodes) {
    if (node.head >= static_cast<int>(n)) {
      throw DataError("token " + std::to_string(node.token_index + 1) +
                      ": head " + std::to_string(node.head + 1) +
                      " out of range (sentence has " + std::to_string(n) +
                      " tokens)");
    }
    has_root = has_root || is_root_relation(node.deprel);
  }
  for (const auto& node : g.nodes) {
    int cur = node.head;
    for (std::size_t steps = 0; cur != kRootHead; ++steps) {
      if (steps >= n || cur == static_cast<int>(node.token_index)) {
        throw DataError("cycle in head relation through token " +
                        std::to_string(node.token_index + 1));
      }
      cur = g.nodes[static_cast<std::size_t>(cur)].head;
    }
  }
  if (!has_root) throw DataError("no token has deprel 'root'");
  return g;
}

DependencyGraph parse_conllu(std::string_view block, const Sentence& sentence) {
  DependencyGraph g = parse_conllu(block);
  if (g.nodes.size() != sentence.tokens.size()) {
    throw DataError("CoNLL-U block for " + sentence.doc_id + ":" +
                    std::to_string(sentence.sent_index) + " has " +
                    std::to_string(g.nodes.size()) + " tokens, sentence has " +
                    std::to_string(sentence.tokens.size()));
  }
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (g.nodes[i].form != sentence.tokens[i].form) {
      throw DataError("form mismatch in " + sentence.doc_id + ":" +
                      std::to_string(sentence.sent_index) + " at token " +
                      std::to_string(i) + ": '" + g.nodes[i].form + "' vs '" +
                      sentence.tokens[i].form + "'");
    }
  }
  return g;
}

std::string serialize_conllu(const DependencyGraph& graph) {
  std::string out;
  std::size_t raw = 0;
  auto flush_raw = [&](std::size_t words) {
    while (raw < graph.raw_lines.size() &&
           graph.raw_lines[raw].before_word <= words) {
      out += graph.raw_lines[raw].text;
      out += '\n';
      ++raw;
    }
  };
  for (const auto& n : graph.nodes) {
    flush_raw(n.token_index);
    out += std::to_string(n.token_index + 1);
    for (const std::string* col :
         {&n.form, &n.lemma, &n.upos, &n.xpos, &n.feats}) {
      out += '\t';
      out += *col;
    }
    out += '\t';
    out += std::to_string(n.head + 1);
    for (const std::string* col : {&n.deprel, &n.deps, &n.misc}) {
      out += '\t';
      out += *col;
    }
    out += '\n';
  }
  flush_raw(graph.nodes.size());
  if (!out.empty()) out.pop_back();
  return out;
}

std::vector<KnowledgeTuple> extract_tuples(const DependencyGraph& graph,
                                           const Sentence& sentence,
                                           const TupleOptions& options) {
  return TupleExtractor(graph, sentence, options).run();
}

std::string serialize_tuples(std::span<const KnowledgeTuple> tuples) {
  if (tuples.empty()) return "(none)";
  std::string out;
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    if (i > 0) out += "; ";
    out += '(';
    out += tuples[i].subject;
    out += ", ";
    out += tuples[i].relation;
    out += ", ";
    out += tuples[i].object;
    out += ')';
  }
  return out;
}

}  // namespace kforge

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

#include "kforge/annotations.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include "kforge/errors.hpp"

namespace kforge {
namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string at(const std::filesystem::path& p, std::size_t line) {
  return p.filename().string() + ":" + std::to_string(line);
}

// One CoNLL-U block, resolved to a document slot when its sent_id is valid.
struct Slot {
  std::size_t line = 0;
  std::size_t doc = kNone;
  std::size_t sent = 0;
  std::optional<DependencyGraph> graph;
  // Position within AnnotatedDocument::sentences once aligned.
  std::size_t aligned = kNone;
};

struct TreeLine {
  std::size_t line = 0;
  std::size_t group = 0;
  std::string text;
};

std::vector<TreeLine> read_tree_lines(const std::string& text,
                                      std::size_t* groups) {
  std::vector<TreeLine> out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::size_t group = 0;
  bool after_blank = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) {
      after_blank = true;
      continue;
    }
    if (after_blank && !out.empty()) ++group;
    after_blank = false;
    out.push_back({line_no, group, line});
  }
  *groups = out.empty() ? 0 : group + 1;
  return out;
}

std::optional<std::string> scan_sent_id(const std::string& block) {
  DependencyGraph probe;
  std::istringstream in(block);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') probe.raw_lines.push_back({0, line});
  }
  return probe.sent_id();
}

class Loader {
 public:
  Loader(std::vector<Document> docs, const AnnotationPaths& paths)
      : paths_(paths) {
    corpus_.docs.reserve(docs.size());
    for (std::size_t i = 0; i < docs.size(); ++i) {
      index_[docs[i].doc_id] = i;
      corpus_.docs.push_back({std::move(docs[i]), {}});
    }
    cursor_.assign(corpus_.docs.size(), 0);
    broken_.assign(corpus_.docs.size(), false);
  }

  AnnotationResult run() {
    std::optional<std::string> conllu_text;
    std::optional<std::string> tree_text;
    if (paths_.conllu) conllu_text = read_file(*paths_.conllu);
    if (paths_.trees) tree_text = read_file(*paths_.trees);
    corpus_.has_graphs = conllu_text.has_value();
    corpus_.has_trees = tree_text.has_value();
    if (conllu_text) {
      read_conllu(*conllu_text);
      if (tree_text) attach_trees(*tree_text);
    } else if (tree_text) {
      segment_from_trees(*tree_text);
    }
    if (conllu_text || tree_text) check_coverage();
    return {std::move(corpus_), std::move(violations_)};
  }

 private:
  void violation(std::string loc, std::string msg) {
    violations_.push_back({std::move(loc), std::move(msg)});
  }

  void read_conllu(const std::string& text) {
    const auto& path = *paths_.conllu;
    std::size_t cur_doc = kNone;
    std::size_t next_sent = 0;
    for (const auto& block : split_blocks(text)) {
      Slot slot;
      slot.line = block.first_line;
      try {
        slot.graph = parse_conllu(block.text);
      } catch (const DataError& e) {
        violation(at(path, block.first_line), e.what());
      }
      std::optional<std::string> sid =
          slot.graph ? slot.graph->sent_id() : scan_sent_id(block.text);
      std::size_t colon = sid ? sid->rfind(':') : std::string::npos;
      std::size_t idx = 0;
      bool idx_ok = false;
      if (colon != std::string::npos) {
        const char* b = sid->data() + colon + 1;
        const char* e = sid->data() + sid->size();
        auto [p, ec] = std::from_chars(b, e, idx);
        idx_ok = ec == std::errc() && p == e && b != e;
      }
      if (!idx_ok) {
        violation(at(path, block.first_line),
                  "missing or malformed '# sent_id = <doc_id>:<index>'");
        slots_.push_back(std::move(slot));
        continue;
      }
      std::string doc_id = sid->substr(0, colon);
      auto it = index_.find(doc_id);
      if (it == index_.end()) {
        violation(at(path, block.first_line),
                  "sent_id names unknown document '" + doc_id + "'");
        slots_.push_back(std::move(slot));
        continue;
      }
      std::size_t d = it->second;
      bool in_order = (d == cur_doc && idx == next_sent) ||
                      ((cur_doc == kNone || d > cur_doc) && idx == 0);
      if (!in_order) {
        violation(at(path, block.first_line),
                  "sent_id " + *sid + " out of corpus order");
        broken_[d] = true;
      } else {
        slot.doc = d;
        slot.sent = idx;
      }
      if (cur_doc == kNone || d >= cur_doc) {
        cur_doc = d;
        next_sent = idx + 1;
      }
      slots_.push_back(std::move(slot));
    }
    for (auto& slot : slots_) {
      if (slot.doc == kNone) continue;
      if (!slot.graph) {
        broken_[slot.doc] = true;
        continue;
      }
      if (broken_[slot.doc]) continue;
      auto& adoc = corpus_.docs[slot.doc];
      std::vector<std::string> forms = slot.graph->forms();
      try {
        Sentence s = align_sentence(adoc.doc, slot.sent, forms,
                                    &cursor_[slot.doc]);
        slot.aligned = adoc.sentences.size();
        adoc.sentences.push_back({std::move(s), std::nullopt,
                                  std::move(slot.graph)});
      } catch (const DataError& e) {
        violation(at(path, slot.line), e.what());
        broken_[slot.doc] = true;
      }
    }
  }

  void attach_trees(const std::string& text) {
    const auto& path = *paths_.trees;
    std::size_t groups = 0;
    std::vector<TreeLine> lines = read_tree_lines(text, &groups);
    if (lines.size() > slots_.size()) {
      violation(at(path, lines[slots_.size()].line),
                "extra tree with no matching sentence (expected " +
                    std::to_string(slots_.size()) + " trees, found " +
                    std::to_string(lines.size()) + ")");
    } else if (lines.size() < slots_.size()) {
      violation(path.filename().string(),
                "missing trees: expected " + std::to_string(slots_.size()) +
                    ", found " + std::to_string(lines.size()));
    }
    if (groups > 1) check_groups(lines, groups);
    std::size_t n = std::min(lines.size(), slots_.size());
    for (std::size_t i = 0; i < n; ++i) {
      const Slot& slot = slots_[i];
      if (slot.aligned == kNone) continue;
      auto& as = corpus_.docs[slot.doc].sentences[slot.aligned];
      try {
        as.tree = parse_bracketed(lines[i].text, as.sentence);
      } catch (const DataError& e) {
        violation(at(path, lines[i].line), e.what());
      }
    }
  }

  // Blank-line groups, when used, must be one per document.
  void check_groups(const std::vector<TreeLine>& lines, std::size_t groups) {
    const auto& path = *paths_.trees;
    if (groups != corpus_.docs.size()) {
      violation(path.filename().string(),
                "blank-line groups (" + std::to_string(groups) +
                    ") do not match document count (" +
                    std::to_string(corpus_.docs.size()) + ")");
      return;
    }
    std::size_t n = std::min(lines.size(), slots_.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (slots_[i].doc != kNone && lines[i].group != slots_[i].doc) {
        violation(at(path, lines[i].line),
                  "tree is in the blank-line group of document " +
                      std::to_string(lines[i].group) + " but belongs to '" +
                      corpus_.docs[slots_[i].doc].doc.doc_id + "'");
        return;
      }
    }
  }

  void segment_from_trees(const std::string& text) {
    const auto& path = *paths_.trees;
    std::size_t groups = 0;
    std::vector<TreeLine> lines = read_tree_lines(text, &groups);
    const bool grouped = groups > 1 || corpus_.docs.size() == 1;
    if (groups > 1 && groups != corpus_.docs.size()) {
      violation(path.filename().string(),
                "blank-line groups (" + std::to_string(groups) +
                    ") do not match document count (" +
                    std::to_string(corpus_.docs.size()) + ")");
      return;
    }
    std::size_t next = 0;
    for (std::size_t d = 0; d < corpus_.docs.size(); ++d) {
      auto& adoc = corpus_.docs[d];
      while (next < lines.size()) {
        if (grouped ? lines[next].group != d
                    : only_whitespace_after(adoc.doc, cursor_[d])) {
          break;
        }
        const TreeLine& tl = lines[next++];
        std::size_t sent = adoc.sentences.size();
        try {
          ConstituencyTree tree = parse_bracketed(tl.text);
          std::vector<std::string> leaves = tree_leaves(tree);
          Sentence s = align_sentence(adoc.doc, sent, leaves, &cursor_[d]);
          adoc.sentences.push_back({std::move(s), std::move(tree),
                                    std::nullopt});
        } catch (const DataError& e) {
          violation(at(path, tl.line), e.what());
          broken_[d] = true;
          if (!grouped) return;
          while (next < lines.size() && lines[next].group == d) ++next;
          break;
        }
      }
    }
    if (next < lines.size()) {
      violation(at(path, lines[next].line),
                "extra tree with no matching sentence");
    }
  }

  void check_coverage() {
    for (std::size_t d = 0; d < corpus_.docs.size(); ++d) {
      const auto& adoc = corpus_.docs[d];
      if (broken_[d]) continue;
      if (adoc.sentences.empty()) {
        violation("doc " + adoc.doc.doc_id, "no annotated sentences");
      } else if (!only_whitespace_after(adoc.doc, cursor_[d])) {
        violation("doc " + adoc.doc.doc_id,
                  "text after byte " + std::to_string(cursor_[d]) +
                      " is not covered by any annotated sentence");
      }
    }
  }

  const AnnotationPaths& paths_;
  AnnotatedCorpus corpus_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<std::size_t> cursor_;
  std::vector<bool> broken_;
  std::vector<Slot> slots_;
  std::vector<Violation> violations_;
};

}  // namespace

std::size_t AnnotatedCorpus::sentence_count() const {
  std::size_t n = 0;
  for (const auto& d : docs) n += d.sentences.size();
  return n;
}

std::vector<TextBlock> split_blocks(const std::string& text) {
  std::vector<TextBlock> out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  TextBlock cur;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) {
      if (!cur.text.empty()) out.push_back(std::move(cur));
      cur = TextBlock{};
      continue;
    }
    if (cur.text.empty()) cur.first_line = line_no;
    cur.text += line;
    cur.text += '\n';
  }
  if (!cur.text.empty()) out.push_back(std::move(cur));
  return out;
}

AnnotationResult load_annotations(std::vector<Document> docs,
                                  const AnnotationPaths& paths) {
  return Loader(std::move(docs), paths).run();
}

AnnotatedCorpus load_annotations_strict(std::vector<Document> docs,
                                        const AnnotationPaths& paths) {
  AnnotationResult r = load_annotations(std::move(docs), paths);
  if (!r.violations.empty()) {
    std::string msg = std::to_string(r.violations.size()) +
                      " annotation violation(s):";
    for (std::size_t i = 0; i < r.violations.size() && i < 5; ++i) {
      msg += "\n  " + r.violations[i].location + ": " + r.violations[i].message;
    }
    throw DataError(msg);
  }
  return std::move(r.corpus);
}

}  // namespace kforge

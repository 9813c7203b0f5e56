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

#ifndef KFORGE_ANNOTATIONS_HPP_
#define KFORGE_ANNOTATIONS_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "kforge/corpus.hpp"
#include "kforge/depgraph.hpp"
#include "kforge/treebank.hpp"

namespace kforge {

struct AnnotatedSentence {
  Sentence sentence;
  std::optional<ConstituencyTree> tree;
  std::optional<DependencyGraph> graph;
};

struct AnnotatedDocument {
  Document doc;
  std::vector<AnnotatedSentence> sentences;
};

struct AnnotatedCorpus {
  std::vector<AnnotatedDocument> docs;
  bool has_trees = false;
  bool has_graphs = false;

  std::size_t sentence_count() const;
};

struct Violation {
  std::string location;
  std::string message;
};

struct AnnotationPaths {
  std::optional<std::filesystem::path> conllu;
  std::optional<std::filesystem::path> trees;
};

struct AnnotationResult {
  AnnotatedCorpus corpus;
  std::vector<Violation> violations;
};

// Aligns the annotation files with the corpus and collects every violation
// found instead of stopping at the first. With a CoNLL-U file, sentence
// segmentation and grouping come from its blocks and `# sent_id` comments;
// the tree file must then have exactly one line per block. With trees only,
// segmentation comes from the unescaped leaves. Missing files raise IoError.
AnnotationResult load_annotations(std::vector<Document> docs,
                                  const AnnotationPaths& paths);

// As load_annotations, but any violation raises DataError listing the first
// few.
AnnotatedCorpus load_annotations_strict(std::vector<Document> docs,
                                        const AnnotationPaths& paths);

// Splits text into blank-line separated blocks, remembering the 1-based line
// on which each block starts.
struct TextBlock {
  std::size_t first_line = 0;
  std::string text;
};
std::vector<TextBlock> split_blocks(const std::string& text);

}  // namespace kforge

#endif  // KFORGE_ANNOTATIONS_HPP_

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

#ifndef KFORGE_CORPUS_HPP_
#define KFORGE_CORPUS_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kforge {

struct Document {
  std::string doc_id;
  std::string text;
  std::map<std::string, std::string> meta;
};

// Byte offsets are half-open and relative to Sentence::text.
struct Token {
  std::size_t index = 0;
  std::string form;
  std::size_t char_start = 0;
  std::size_t char_end = 0;
};

struct Sentence {
  std::string doc_id;
  std::size_t sent_index = 0;
  std::string text;
  std::vector<Token> tokens;
  // Byte offset of text within the owning document.
  std::size_t doc_offset = 0;

  // Surface text of tokens [first, last), original spacing kept.
  std::string_view span_text(std::size_t first, std::size_t last) const;
};

struct QARecord {
  std::string doc_id;
  std::string question;
  std::string reference_answer;
};

struct LoadOptions {
  bool allow_empty = false;
};

// Reads one JSON object per line with fields `id`, `text` and optional
// `meta`. Blank lines are ignored. Throws DataError with the line number on
// malformed records and on duplicate ids; IoError if the file can't be read.
std::vector<Document> load_corpus(const std::filesystem::path& path,
                                  LoadOptions options = {});

// Records with `doc_id`, `question`, `answer`; every doc_id must name a
// document in `docs`.
std::vector<QARecord> load_qa(const std::filesystem::path& path,
                              std::span<const Document> docs);

// Aligns pre-segmented token forms against the raw document text. Only
// whitespace may separate tokens, and nothing but whitespace may follow the
// last sentence.
std::vector<Sentence> attach_sentences(
    const Document& doc,
    std::span<const std::vector<std::string>> segmentation);

// Incremental form of attach_sentences: aligns one sentence starting at
// *cursor (a byte offset into doc.text) and advances the cursor.
Sentence align_sentence(const Document& doc, std::size_t sent_index,
                        std::span<const std::string> forms,
                        std::size_t* cursor);

// True if doc.text has only whitespace from `cursor` on.
bool only_whitespace_after(const Document& doc, std::size_t cursor);

bool is_space(char c);
std::string_view trim(std::string_view s);

// Whitespace-delimited pieces of `text`, as views into it.
std::vector<std::string_view> split_whitespace(std::string_view text);

}  // namespace kforge

#endif  // KFORGE_CORPUS_HPP_

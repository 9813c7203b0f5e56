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

#include "kforge/corpus.hpp"

#include <set>
#include <string>

#include "kforge/errors.hpp"
#include "kforge/jsonl.hpp"

namespace kforge {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

std::string_view trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

std::vector<std::string_view> split_whitespace(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) out.push_back(text.substr(start, i - start));
  }
  return out;
}

std::string_view Sentence::span_text(std::size_t first,
                                     std::size_t last) const {
  std::size_t b = tokens[first].char_start;
  std::size_t e = tokens[last - 1].char_end;
  return std::string_view(text).substr(b, e - b);
}

std::vector<Document> load_corpus(const std::filesystem::path& path,
                                  LoadOptions options) {
  std::vector<Document> docs;
  std::set<std::string> seen;
  for_each_jsonl(path, [&](const Json& rec, std::size_t line) {
    Document doc;
    doc.doc_id = string_field(rec, "id", line);
    doc.text = string_field(rec, "text", line);
    if (doc.doc_id.empty()) {
      throw DataError("line " + std::to_string(line) + ": empty id");
    }
    if (trim(doc.text).empty()) {
      throw DataError("line " + std::to_string(line) + ": document '" +
                      doc.doc_id + "' has empty text");
    }
    if (auto it = rec.find("meta"); it != rec.end() && !it->is_null()) {
      if (!it->is_object()) {
        throw DataError("line " + std::to_string(line) +
                        ": meta must be an object");
      }
      for (const auto& [k, v] : it->items()) {
        doc.meta[k] = v.is_string() ? v.get<std::string>() : v.dump();
      }
    }
    if (!seen.insert(doc.doc_id).second) {
      throw DataError("line " + std::to_string(line) + ": duplicate doc_id '" +
                      doc.doc_id + "'");
    }
    docs.push_back(std::move(doc));
  });
  if (docs.empty() && !options.allow_empty) {
    throw DataError(path.string() + ": corpus is empty");
  }
  return docs;
}

std::vector<QARecord> load_qa(const std::filesystem::path& path,
                              std::span<const Document> docs) {
  std::set<std::string_view> ids;
  for (const auto& d : docs) ids.insert(d.doc_id);
  std::vector<QARecord> out;
  for_each_jsonl(path, [&](const Json& rec, std::size_t line) {
    QARecord qa{string_field(rec, "doc_id", line),
                string_field(rec, "question", line),
                string_field(rec, "answer", line)};
    if (!ids.contains(qa.doc_id)) {
      throw DataError("line " + std::to_string(line) + ": unknown doc_id '" +
                      qa.doc_id + "'");
    }
    out.push_back(std::move(qa));
  });
  return out;
}

Sentence align_sentence(const Document& doc, std::size_t sent_index,
                        std::span<const std::string> forms,
                        std::size_t* cursor) {
  auto fail = [&](std::size_t tok, const std::string& why) {
    return DataError("alignment failure in doc '" + doc.doc_id +
                     "' sentence " + std::to_string(sent_index) + " token " +
                     std::to_string(tok) + ": " + why);
  };
  if (forms.empty()) throw fail(0, "sentence has no tokens");
  const std::string& text = doc.text;
  std::size_t pos = *cursor;
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  spans.reserve(forms.size());
  for (std::size_t i = 0; i < forms.size(); ++i) {
    const std::string& form = forms[i];
    if (form.empty()) throw fail(i, "empty token form");
    while (pos < text.size() && is_space(text[pos])) ++pos;
    if (text.compare(pos, form.size(), form) != 0) {
      std::string found = text.substr(pos, std::min<std::size_t>(
                                               form.size() + 8, 32));
      throw fail(i, "expected '" + form + "' at byte " + std::to_string(pos) +
                        ", found '" + found + "'");
    }
    spans.emplace_back(pos, pos + form.size());
    pos += form.size();
  }
  Sentence s;
  s.doc_id = doc.doc_id;
  s.sent_index = sent_index;
  s.doc_offset = spans.front().first;
  s.text = text.substr(s.doc_offset, spans.back().second - s.doc_offset);
  s.tokens.reserve(forms.size());
  for (std::size_t i = 0; i < forms.size(); ++i) {
    s.tokens.push_back(Token{i, forms[i], spans[i].first - s.doc_offset,
                             spans[i].second - s.doc_offset});
  }
  *cursor = pos;
  return s;
}

bool only_whitespace_after(const Document& doc, std::size_t cursor) {
  for (std::size_t i = cursor; i < doc.text.size(); ++i) {
    if (!is_space(doc.text[i])) return false;
  }
  return true;
}

std::vector<Sentence> attach_sentences(
    const Document& doc,
    std::span<const std::vector<std::string>> segmentation) {
  std::vector<Sentence> out;
  out.reserve(segmentation.size());
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < segmentation.size(); ++i) {
    out.push_back(align_sentence(doc, i, segmentation[i], &cursor));
  }
  if (!only_whitespace_after(doc, cursor)) {
    throw DataError("alignment failure in doc '" + doc.doc_id +
                    "': unsegmented text remains at byte " +
                    std::to_string(cursor));
  }
  return out;
}

}  // namespace kforge

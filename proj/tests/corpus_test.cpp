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

#include "doctest.h"
#include "kforge/errors.hpp"
#include "test_util.hpp"

namespace kforge {
namespace {

using testing::TempDir;
using testing::write_text;

TEST_CASE("load_corpus reads records in file order") {
  TempDir tmp;
  write_text(tmp / "c.jsonl",
             "{\"id\":\"d0\",\"text\":\"A.\"}\n"
             "{\"id\":\"d1\",\"text\":\"B.\",\"meta\":{\"src\":\"x\"}}\n");
  auto docs = load_corpus(tmp / "c.jsonl");
  REQUIRE(docs.size() == 2);
  CHECK(docs[0].doc_id == "d0");
  CHECK(docs[0].text == "A.");
  CHECK(docs[1].doc_id == "d1");
  CHECK(docs[1].meta.at("src") == "x");
}

TEST_CASE("load_corpus rejects duplicate ids by name") {
  TempDir tmp;
  write_text(tmp / "c.jsonl",
             "{\"id\":\"d0\",\"text\":\"A.\"}\n{\"id\":\"d0\",\"text\":\"B.\"}\n");
  try {
    load_corpus(tmp / "c.jsonl");
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("'d0'") != std::string::npos);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("load_corpus reports the line of a malformed record") {
  TempDir tmp;
  write_text(tmp / "c.jsonl", "{\"id\":\"d0\",\"text\":\"A.\"}\n{oops\n");
  try {
    load_corpus(tmp / "c.jsonl");
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find(":2:") != std::string::npos);
  }
  write_text(tmp / "m.jsonl", "{\"id\":\"d0\"}\n");
  CHECK_THROWS_AS(load_corpus(tmp / "m.jsonl"), DataError);
  write_text(tmp / "w.jsonl", "{\"id\":\"d0\",\"text\":\"  \\n \"}\n");
  CHECK_THROWS_AS(load_corpus(tmp / "w.jsonl"), DataError);
}

TEST_CASE("load_corpus: empty file") {
  TempDir tmp;
  write_text(tmp / "e.jsonl", "\n");
  CHECK_THROWS_AS(load_corpus(tmp / "e.jsonl"), DataError);
  CHECK(load_corpus(tmp / "e.jsonl", {.allow_empty = true}).empty());
  CHECK_THROWS_AS(load_corpus(tmp / "missing.jsonl"), IoError);
}

TEST_CASE("load_qa checks doc references") {
  TempDir tmp;
  std::vector<Document> docs{{"d0", "A.", {}}};
  write_text(tmp / "qa.jsonl",
             "{\"doc_id\":\"d0\",\"question\":\"q\",\"answer\":\"a\"}\n");
  auto qa = load_qa(tmp / "qa.jsonl", docs);
  REQUIRE(qa.size() == 1);
  CHECK(qa[0].reference_answer == "a");
  write_text(tmp / "bad.jsonl",
             "{\"doc_id\":\"zz\",\"question\":\"q\",\"answer\":\"a\"}\n");
  CHECK_THROWS_AS(load_qa(tmp / "bad.jsonl", docs), DataError);
}

TEST_CASE("attach_sentences aligns tokens to byte offsets") {
  Document doc{"d", "Hi. Bye.", {}};
  std::vector<std::vector<std::string>> seg{{"Hi", "."}, {"Bye", "."}};
  auto sents = attach_sentences(doc, seg);
  REQUIRE(sents.size() == 2);
  CHECK(sents[0].text == "Hi.");
  CHECK(sents[1].text == "Bye.");
  // Document-relative offsets (0,2),(2,3),(4,7),(7,8).
  std::vector<std::pair<std::size_t, std::size_t>> abs;
  for (const auto& s : sents) {
    for (const auto& t : s.tokens) {
      abs.emplace_back(s.doc_offset + t.char_start, s.doc_offset + t.char_end);
    }
  }
  using P = std::pair<std::size_t, std::size_t>;
  CHECK(abs == std::vector<P>{{0, 2}, {2, 3}, {4, 7}, {7, 8}});
  CHECK(sents[1].tokens[0].char_start == 0);
  CHECK(sents[1].sent_index == 1);
}

TEST_CASE("attach_sentences: single token covering the document") {
  Document doc{"d", "Stop", {}};
  std::vector<std::vector<std::string>> seg{{"Stop"}};
  auto sents = attach_sentences(doc, seg);
  REQUIRE(sents.size() == 1);
  CHECK(sents[0].tokens[0].char_start == 0);
  CHECK(sents[0].tokens[0].char_end == 4);
}

TEST_CASE("attach_sentences reports doc, sentence and token on failure") {
  Document doc{"d7", "Hi there.", {}};
  std::vector<std::vector<std::string>> seg{{"Hi", "xyz", "."}};
  try {
    attach_sentences(doc, seg);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    std::string msg = e.what();
    CHECK(msg.find("'d7'") != std::string::npos);
    CHECK(msg.find("sentence 0") != std::string::npos);
    CHECK(msg.find("token 1") != std::string::npos);
  }
  // Leftover text is not covered.
  std::vector<std::vector<std::string>> partial{{"Hi"}};
  CHECK_THROWS_AS(attach_sentences(doc, partial), DataError);
  // Only whitespace may be skipped between tokens.
  std::vector<std::vector<std::string>> skip{{"Hi", "."}};
  CHECK_THROWS_AS(attach_sentences(doc, skip), DataError);
}

TEST_CASE("attach_sentences keeps multibyte text and odd whitespace") {
  Document doc{"d", "  Caf\xc3\xa9\tna\xc3\xafve.\n\nOK  ", {}};
  std::vector<std::vector<std::string>> seg{
      {"Caf\xc3\xa9", "na\xc3\xafve", "."}, {"OK"}};
  auto sents = attach_sentences(doc, seg);
  CHECK(sents[0].text == "Caf\xc3\xa9\tna\xc3\xafve.");
  CHECK(sents[0].doc_offset == 2);
  CHECK(sents[1].text == "OK");
  for (const auto& s : sents) {
    for (const auto& t : s.tokens) {
      CHECK(s.text.substr(t.char_start, t.char_end - t.char_start) == t.form);
    }
  }
}

TEST_CASE("offset round trip over random segmentations") {
  std::mt19937 rng(11);
  const std::vector<std::string> words{"a", "bb", "ccc", ".", ",", "\xc3\xa9t\xc3\xa9",
                                       "(", ")", "x1"};
  const std::vector<std::string> gaps{"", " ", "  ", "\n", "\t"};
  for (int trial = 0; trial < 300; ++trial) {
    Document doc{"d", "", {}};
    std::vector<std::vector<std::string>> seg;
    int n_sent = 1 + static_cast<int>(rng() % 4);
    for (int s = 0; s < n_sent; ++s) {
      seg.emplace_back();
      int n_tok = 1 + static_cast<int>(rng() % 6);
      for (int t = 0; t < n_tok; ++t) {
        const std::string& w = words[rng() % words.size()];
        if (!doc.text.empty()) {
          std::string gap = gaps[rng() % gaps.size()];
          doc.text += gap;
        }
        doc.text += w;
        seg.back().push_back(w);
      }
    }
    auto sents = attach_sentences(doc, seg);
    REQUIRE(sents.size() == seg.size());
    for (const auto& s : sents) {
      CHECK(doc.text.substr(s.doc_offset, s.text.size()) == s.text);
      std::size_t prev_end = 0;
      for (const auto& t : s.tokens) {
        CHECK(t.char_start < t.char_end);
        CHECK(t.char_start >= prev_end);
        prev_end = t.char_end;
        CHECK(s.text.substr(t.char_start, t.char_end - t.char_start) == t.form);
      }
    }
  }
}

TEST_CASE("split_whitespace and trim") {
  auto parts = split_whitespace("  a\tbb \n c ");
  REQUIRE(parts.size() == 3);
  CHECK(parts[1] == "bb");
  CHECK(trim(" \t x y \n") == "x y");
  CHECK(trim("   ").empty());
}

}  // namespace
}  // namespace kforge

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

#include "doctest.h"
#include "kforge/errors.hpp"
#include "test_util.hpp"

namespace kforge {
namespace {

using testing::sentence_of;

const char* kCat = "(S (NP (DT The) (NN cat)) (VP (VBD sat)))";

TEST_CASE("parse_bracketed computes spans bottom-up") {
  Sentence s = sentence_of({"The", "cat", "sat"});
  ConstituencyTree t = parse_bracketed(kCat, s);
  CHECK(t.label == "S");
  CHECK(t.span == TokenSpan{0, 3});
  REQUIRE(t.children.size() == 2);
  CHECK(t.children[0].label == "NP");
  CHECK(t.children[0].span == TokenSpan{0, 2});
  CHECK(t.children[1].label == "VP");
  CHECK(t.children[1].span == TokenSpan{2, 3});
  const auto& dt = t.children[0].children[0];
  CHECK(dt.label == "DT");
  REQUIRE(dt.children.size() == 1);
  CHECK(dt.children[0].is_leaf());
  CHECK(*dt.children[0].leaf == 0);
}

TEST_CASE("parse_bracketed: minimal tree") {
  Sentence s = sentence_of({"a"});
  ConstituencyTree t = parse_bracketed("(X (T a))", s);
  CHECK(t.span == TokenSpan{0, 1});
  CHECK(serialize_tree(t) == "(X (T a))");
}

TEST_CASE("parse_bracketed errors") {
  Sentence s = sentence_of({"The", "cat"});
  try {
    parse_bracketed("(S (NP (DT The))", sentence_of({"The"}));
    FAIL("expected DataError");
  } catch (const DataError& e) {
    std::string msg = e.what();
    CHECK(msg.find("unbalanced") != std::string::npos);
    CHECK(msg.find("position 0") != std::string::npos);
  }
  try {
    parse_bracketed("(S (DT The)))", sentence_of({"The"}));
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("position 12") != std::string::npos);
  }
  CHECK_THROWS_WITH_AS(parse_bracketed("(S (DT The))", s),
                       doctest::Contains("leaf count"), DataError);
  try {
    parse_bracketed("(S (DT The) (NN dog))", s);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("token 1") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_bracketed("S (NP a)"), DataError);
  CHECK_THROWS_AS(parse_bracketed("(S)"), DataError);
  CHECK_THROWS_AS(parse_bracketed("(S (A a)) (B b)"), DataError);
}

TEST_CASE("PTB escapes match raw token forms") {
  Sentence s = sentence_of({"(", "a", ")"});
  ConstituencyTree t =
      parse_bracketed("(NP (-LRB- -LRB-) (NN a) (-RRB- -RRB-))", s);
  CHECK(tree_leaves(t) == std::vector<std::string>{"(", "a", ")"});
  CHECK(serialize_tree(t) == "(NP (-LRB- -LRB-) (NN a) (-RRB- -RRB-))");
  CHECK(unescape_ptb("-LCB-") == "{");
  CHECK(unescape_ptb("-X-") == "-X-");
}

TEST_CASE("base_label strips functional suffixes") {
  CHECK(base_label("NP-SBJ") == "NP");
  CHECK(base_label("NP=2") == "NP");
  CHECK(base_label("PP-LOC-2") == "PP");
  CHECK(base_label("-NONE-") == "-NONE-");
  CHECK(base_label("VP") == "VP");
}

TEST_CASE("extract_phrases: allow-list, order and root exclusion") {
  Sentence s = sentence_of({"The", "cat", "sat"});
  ConstituencyTree t = parse_bracketed(kCat, s);
  auto ps = extract_phrases(t, s, default_phrase_labels());
  REQUIRE(ps.size() == 2);
  CHECK(ps[0].label == "NP");
  CHECK(ps[0].token_start == 0);
  CHECK(ps[0].token_end == 2);
  CHECK(ps[0].text == "The cat");
  CHECK(ps[1].label == "VP");
  CHECK(ps[1].text == "sat");
  CHECK(extract_phrases(t, s, {"PP"}).empty());

  Sentence np = sentence_of({"big", "dogs"});
  ConstituencyTree root_np = parse_bracketed("(NP (JJ big) (NNS dogs))", np);
  CHECK(extract_phrases(root_np, np, default_phrase_labels()).empty());
}

TEST_CASE("extract_phrases keeps nesting, dedups unary chains") {
  Sentence s = sentence_of({"the", "cat", "in", "the", "hat", "sat"});
  ConstituencyTree t = parse_bracketed(
      "(S (NP-SBJ (NP (DT the) (NN cat)) (PP (IN in) (NP (NP (DT the) (NN "
      "hat))))) (VP (VBD sat)))",
      s);
  auto ps = extract_phrases(t, s, default_phrase_labels());
  std::vector<std::string> got;
  for (const auto& p : ps) {
    got.push_back(p.label + "(" + std::to_string(p.token_start) + "," +
                  std::to_string(p.token_end) + ") " + p.text);
  }
  CHECK(got == std::vector<std::string>{
                   "NP(0,5) the cat in the hat", "NP(0,2) the cat",
                   "PP(2,5) in the hat", "NP(3,5) the hat", "VP(5,6) sat"});
}

TEST_CASE("phrase text keeps original spacing") {
  Document doc{"d", "New  York,\tUSA", {}};
  std::vector<std::vector<std::string>> seg{{"New", "York", ",", "USA"}};
  Sentence s = attach_sentences(doc, seg).front();
  ConstituencyTree t = parse_bracketed(
      "(NP (NP (NNP New) (NNP York)) (, ,) (NP (NNP USA)))", s);
  auto ps = extract_phrases(t, s, default_phrase_labels());
  REQUIRE(ps.size() == 2);
  CHECK(ps[0].text == "New  York");
  CHECK(ps[1].text == "USA");
}

TEST_CASE("synthetic trees: round trip, leaf fidelity, phrase offsets") {
  std::string text = testing::read_text(testing::fixture("synthetic/corpus.trees"));
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++n;
    ConstituencyTree t = parse_bracketed(line);
    std::string once = serialize_tree(t);
    CHECK(once == line);
    CHECK(serialize_tree(parse_bracketed(once)) == once);
    Sentence s = sentence_of(tree_leaves(t));
    ConstituencyTree bound = parse_bracketed(line, s);
    for (const auto& p : extract_phrases(bound, s, default_phrase_labels())) {
      CHECK(p.token_start < p.token_end);
      CHECK(p.token_end <= s.tokens.size());
      CHECK(p.text == s.span_text(p.token_start, p.token_end));
      CHECK_FALSE((p.token_start == 0 && p.token_end == s.tokens.size()));
    }
  }
  CHECK(n >= 200);
}

TEST_CASE("serialization normalizes whitespace") {
  ConstituencyTree t = parse_bracketed("  ( S\n  (NP  (DT a))\t(VP (VB b) ) )");
  CHECK(serialize_tree(t) == "(S (NP (DT a)) (VP (VB b)))");
}

}  // namespace
}  // namespace kforge

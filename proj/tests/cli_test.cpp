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

#include "cli.hpp"

#include <cstdlib>
#include <sstream>
#include <sys/wait.h>

#include "doctest.h"
#include "kforge/jsonl.hpp"
#include "test_util.hpp"

namespace kforge {
namespace {

using testing::fixture;
using testing::read_text;
using testing::TempDir;
using testing::write_text;

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run kforge(std::vector<std::string> args) {
  args.insert(args.begin(), "kforge");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> tiny_inputs() {
  return {"--corpus", fixture("tiny/corpus.jsonl").string(),
          "--conllu", fixture("tiny/tiny.conllu").string(),
          "--trees",  fixture("tiny/tiny.trees").string()};
}

std::vector<std::string> with(std::vector<std::string> head,
                              const std::vector<std::string>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

TEST_CASE("validate accepts aligned data") {
  Run r = kforge(with({"validate"}, tiny_inputs()));
  CHECK(r.code == 0);
  CHECK(r.out == "OK: 2 documents, 3 sentences\n");
}

TEST_CASE("validate names the offending tree line") {
  TempDir dir;
  write_text(dir / "extra.trees",
             read_text(fixture("tiny/tiny.trees")) + "(S (NN Extra))\n");
  Run r = kforge({"validate", "--corpus", fixture("tiny/corpus.jsonl").string(),
                  "--trees", (dir / "extra.trees").string()});
  CHECK(r.code == 1);
  CHECK(r.out.find("extra.trees:4") != std::string::npos);
  CHECK(r.out.find("1 violation(s)") != std::string::npos);
}

TEST_CASE("configuration errors exit 2") {
  Run missing_graphs =
      kforge({"validate", "--corpus", fixture("tiny/corpus.jsonl").string(),
              "--trees", fixture("tiny/tiny.trees").string(), "--tasks",
              "NL2KG"});
  CHECK(missing_graphs.code == 2);
  CHECK(missing_graphs.err.find("NL2KG") != std::string::npos);

  CHECK(kforge({"validate", "--corpus", "/nonexistent/c.jsonl"}).code == 2);
  CHECK(kforge({"forge", "--corpus", fixture("tiny/corpus.jsonl").string(),
                "--tasks", "MLM", "-o", "/tmp/x"})
            .code == 2);
  CHECK(kforge({"frobnicate"}).code == 2);
  CHECK(kforge({"--help"}).code == 0);
}

TEST_CASE("stats on an empty corpus") {
  TempDir dir;
  write_text(dir / "empty.jsonl", "");
  Run r = kforge({"stats", "--json", "--corpus", (dir / "empty.jsonl").string()});
  CHECK(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["documents"] == 0);
  CHECK(j["whitespace_tokens"] == 0);
}

TEST_CASE("stats over annotations") {
  Run r = kforge(with({"stats", "--json"}, tiny_inputs()));
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["documents"] == 2);
  CHECK(j["sentences"] == 3);
  CHECK(j["tuple_bearing_sentences"] == 1);
  CHECK(j["tuples_per_sentence"]["1"] == 1);
  CHECK(kforge(with({"stats"}, tiny_inputs())).code == 0);
}

TEST_CASE("forge writes a header and is byte-stable") {
  TempDir dir;
  auto args = with({"forge"}, tiny_inputs());
  args = with(args, {"--tasks", "NTP,MTP,MPP,NL2KG,KG2NL", "--seed", "11"});
  Run a = kforge(with(args, {"-o", (dir / "a.jsonl").string()}));
  Run b = kforge(with(args, {"-o", (dir / "b.jsonl").string(), "--workers",
                             "1"}));
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(a.out.find("MTP: emitted 2, skipped 1") != std::string::npos);
  CHECK(a.out.find("wrote 8 examples") != std::string::npos);
  std::string text = read_text(dir / "a.jsonl");
  CHECK(text == read_text(dir / "b.jsonl"));

  auto lines = lines_of(text);
  REQUIRE(lines.size() == 9);
  auto header = Json::parse(lines[0]);
  CHECK(header["record"] == "header");
  CHECK(header["master_seed"] == 11);
  CHECK(header["config_digest"].get<std::string>().size() == 16);
  auto first = Json::parse(lines[1]);
  CHECK(first["task"] == "NTP");
  CHECK(first["response"] == "Alice builds rockets. Bob sleeps.");

  Run c = kforge(with(with({"forge"}, tiny_inputs()),
                      {"--tasks", "MTP", "--seed", "11", "-o",
                       (dir / "c.jsonl").string()}));
  Run d = kforge(with(with({"forge"}, tiny_inputs()),
                      {"--tasks", "MTP", "--seed", "11", "-o",
                       (dir / "d.jsonl").string()}));
  CHECK(read_text(dir / "c.jsonl") == read_text(dir / "d.jsonl"));
}

TEST_CASE("forge output formats") {
  TempDir dir;
  auto args = with(with({"forge"}, tiny_inputs()),
                   {"--tasks", "MTP", "--closer", "</s>"});
  REQUIRE(kforge(with(args, {"--format", "rendered", "-o",
                             (dir / "r.jsonl").string()}))
              .code == 0);
  for (const auto& line : lines_of(read_text(dir / "r.jsonl"))) {
    auto j = Json::parse(line);
    if (j.contains("record")) continue;
    std::string full = j["full_text"];
    CHECK(full.starts_with("|user| Complete the masked token: "));
    CHECK(full.ends_with("</s>"));
    CHECK(j["loss_end"].get<std::size_t>() + 4 == full.size());
  }
  REQUIRE(kforge(with(args, {"--format", "prompt-completion", "-o",
                             (dir / "p.jsonl").string()}))
              .code == 0);
  auto lines = lines_of(read_text(dir / "p.jsonl"));
  REQUIRE(lines.size() == 3);
  CHECK(Json::parse(lines[1]).contains("completion"));
  CHECK(kforge(with(args, {"--format", "chatml", "-o",
                           (dir / "x.jsonl").string()}))
            .code == 2);
}

TEST_CASE("failed forge leaves no output") {
  TempDir dir;
  write_text(dir / "bad.trees", "(S (NN Wrong) (VBZ words))\n");
  Run r = kforge({"forge", "--corpus", fixture("tiny/corpus.jsonl").string(),
                  "--trees", (dir / "bad.trees").string(), "--tasks", "MPP",
                  "-o", (dir / "out.jsonl").string()});
  CHECK(r.code == 1);
  CHECK_FALSE(std::filesystem::exists(dir / "out.jsonl"));
  for (const auto& e : std::filesystem::directory_iterator(dir.path())) {
    CHECK(e.path().filename() == "bad.trees");
  }
}

TEST_CASE("NTP chunk count") {
  TempDir dir;
  std::string words;
  for (int i = 0; i < 1100; ++i) words += "w" + std::to_string(i) + " ";
  write_text(dir / "c.jsonl", Json{{"id", "big"}, {"text", words}}.dump() +
                                  "\n" +
                                  Json{{"id", "small"}, {"text", "a b"}}.dump() +
                                  "\n");
  Run r = kforge({"forge", "--corpus", (dir / "c.jsonl").string(), "--tasks",
                  "NTP", "-o", (dir / "o.jsonl").string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("NTP: emitted 4, skipped 0") != std::string::npos);
}

TEST_CASE("score") {
  TempDir dir;
  write_text(dir / "p.jsonl",
             R"({"doc_id": "d", "question": "q", "prediction": "a b c", "reference": "a b c"})"
             "\n"
             R"({"doc_id": "d", "question": "q", "prediction": "a c", "reference": "a b c"})"
             "\n");
  Run r = kforge({"score", (dir / "p.jsonl").string(), "--per-record",
                  (dir / "per.jsonl").string(), "--json",
                  (dir / "s.json").string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("ROUGE-L F1   90.00") != std::string::npos);
  CHECK(lines_of(read_text(dir / "per.jsonl")).size() == 2);
  auto s = Json::parse(read_text(dir / "s.json"));
  CHECK(s["mean_f1"].get<double>() == doctest::Approx(0.9));
  CHECK(kforge({"score", (dir / "p.jsonl").string(), "--stemmer", "porter"})
            .code == 0);
  CHECK(kforge({"score", (dir / "p.jsonl").string(), "--stemmer", "snowball"})
            .code == 2);
  CHECK(kforge({"score", (dir / "missing.jsonl").string()}).code == 2);
  write_text(dir / "bad.jsonl", R"({"prediction": "x"})" "\n");
  CHECK(kforge({"score", (dir / "bad.jsonl").string()}).code == 1);
}

TEST_CASE("config file supplies options") {
  TempDir dir;
  write_text(dir / "forge.toml",
             "[forge]\n"
             "corpus = \"" + fixture("tiny/corpus.jsonl").string() + "\"\n"
             "trees = \"" + fixture("tiny/tiny.trees").string() + "\"\n"
             "tasks = [\"MPP\"]\n"
             "seed = 5\n");
  Run r = kforge({"--config", (dir / "forge.toml").string(), "forge", "-o",
                  (dir / "o.jsonl").string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("MPP: emitted 2") != std::string::npos);
  auto lines = lines_of(read_text(dir / "o.jsonl"));
  REQUIRE_FALSE(lines.empty());
  auto header = Json::parse(lines[0]);
  CHECK(header["master_seed"] == 5);
}

TEST_CASE("binary exit codes") {
  const std::string bin = KFORGE_BIN;
  auto status = [&](const std::string& args) {
    int s = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  CHECK(status("validate --corpus " + fixture("tiny/corpus.jsonl").string() +
               " --trees " + fixture("tiny/tiny.trees").string()) == 0);
  CHECK(status("validate --corpus /nonexistent.jsonl") == 2);
  CHECK(status("--bogus") == 2);
}

}  // namespace
}  // namespace kforge

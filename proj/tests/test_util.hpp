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

#ifndef KFORGE_TESTS_TEST_UTIL_HPP_
#define KFORGE_TESTS_TEST_UTIL_HPP_

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kforge/corpus.hpp"

namespace kforge::testing {

inline std::filesystem::path fixture(const std::string& rel) {
  return std::filesystem::path(KFORGE_FIXTURES) / rel;
}

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const std::filesystem::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary);
  out << s;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("kforge-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

// Single-sentence document whose text joins the forms with one space.
inline Sentence sentence_of(const std::vector<std::string>& forms,
                            const std::string& doc_id = "doc") {
  Document doc;
  doc.doc_id = doc_id;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (i) doc.text += ' ';
    doc.text += forms[i];
  }
  std::vector<std::vector<std::string>> seg{forms};
  return attach_sentences(doc, seg).front();
}

}  // namespace kforge::testing

#endif  // KFORGE_TESTS_TEST_UTIL_HPP_

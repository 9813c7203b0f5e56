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

#ifndef KFORGE_JSONL_HPP_
#define KFORGE_JSONL_HPP_

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>

#include "json.hpp"

namespace kforge {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

// Calls fn(record, line_number) for every non-blank line. Parse failures
// and non-object records raise DataError naming the 1-based line.
void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(const Json&, std::size_t)>& fn);

// Required string field; DataError naming `line` if absent or not a string.
std::string string_field(const Json& record, const char* key,
                         std::size_t line);

// Writes to a sibling temp file and renames over the target on commit().
// An uncommitted file is removed on destruction.
class AtomicFile {
 public:
  explicit AtomicFile(std::filesystem::path target);
  ~AtomicFile();
  AtomicFile(const AtomicFile&) = delete;
  AtomicFile& operator=(const AtomicFile&) = delete;

  std::ofstream& stream() { return out_; }
  void commit();

 private:
  std::filesystem::path target_;
  std::filesystem::path temp_;
  std::ofstream out_;
  bool committed_ = false;
};

}  // namespace kforge

#endif  // KFORGE_JSONL_HPP_

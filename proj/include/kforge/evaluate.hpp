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

#ifndef KFORGE_EVALUATE_HPP_
#define KFORGE_EVALUATE_HPP_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kforge {

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct RougeOptions {
  // Non-ASCII letters and digits count as token characters.
  bool unicode_tokens = true;
  // Porter-stem tokens longer than three characters.
  bool porter_stemmer = false;
};

// Lowercases, then splits on anything that is not alphanumeric.
std::vector<std::string> rouge_tokenize(std::string_view text,
                                        const RougeOptions& options = {});

// Length of a longest common subsequence; O(min(m, n)) memory.
std::size_t lcs_length(std::span<const std::string> a,
                       std::span<const std::string> b);

RougeScore rouge_l(std::string_view prediction, std::string_view reference,
                   const RougeOptions& options = {});

RougeScore rouge_from_lcs(std::size_t lcs, std::size_t pred_len,
                          std::size_t ref_len);

struct PredictionRecord {
  std::string doc_id;
  std::string question;
  std::string prediction;
  std::string reference;
};

// Means over records, in [0, 1].
struct ScoreReport {
  std::size_t count = 0;
  double mean_p = 0.0;
  double mean_r = 0.0;
  double mean_f1 = 0.0;
  std::vector<RougeScore> per_record;
};

std::vector<PredictionRecord> load_predictions(
    const std::filesystem::path& path);

// Scores in parallel; sums are taken in record order.
ScoreReport score_records(std::span<const PredictionRecord> records,
                          const RougeOptions& options = {},
                          std::size_t workers = 0);

// Throws DataError on malformed records and on an empty file.
ScoreReport score_file(const std::filesystem::path& path,
                       const RougeOptions& options = {},
                       std::size_t workers = 0);

// Percentage with two decimals, e.g. 0.9 -> "90.00".
std::string format_percent(double value);

}  // namespace kforge

#endif  // KFORGE_EVALUATE_HPP_

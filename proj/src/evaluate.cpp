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

#include "kforge/evaluate.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <thread>
#include <unordered_map>

#include "kforge/errors.hpp"
#include "kforge/jsonl.hpp"
#include "kforge/porter.hpp"

namespace kforge {
namespace {

bool ascii_alnum(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9');
}

void flush(std::string* cur, std::vector<std::string>* out,
           const RougeOptions& options) {
  if (cur->empty()) return;
  if (options.porter_stemmer && cur->size() > 3) {
    out->push_back(porter_stem(*cur));
  } else {
    out->push_back(std::move(*cur));
  }
  cur->clear();
}

}  // namespace

std::vector<std::string> rouge_tokenize(std::string_view text,
                                        const RougeOptions& options) {
  std::vector<std::string> out;
  std::string cur;
  const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
  const int32_t len = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < len) {
    if (bytes[i] < 0x80) {
      unsigned char c = bytes[i++];
      if (ascii_alnum(c)) {
        cur.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c + 32 : c));
      } else {
        flush(&cur, &out, options);
      }
      continue;
    }
    UChar32 cp;
    U8_NEXT(bytes, i, len, cp);
    if (options.unicode_tokens && cp >= 0 && u_isalnum(cp)) {
      UChar32 lower = u_tolower(cp);
      char buf[U8_MAX_LENGTH];
      int32_t n = 0;
      UBool err = false;
      U8_APPEND(reinterpret_cast<uint8_t*>(buf), n, U8_MAX_LENGTH, lower, err);
      if (err) continue;
      cur.append(buf, static_cast<std::size_t>(n));
    } else {
      flush(&cur, &out, options);
    }
  }
  flush(&cur, &out, options);
  return out;
}

std::size_t lcs_length(std::span<const std::string> a,
                       std::span<const std::string> b) {
  if (a.size() < b.size()) std::swap(a, b);
  if (b.empty()) return 0;
  // Intern tokens so the inner loop compares integers.
  std::unordered_map<std::string_view, std::uint32_t> ids;
  auto intern = [&](std::span<const std::string> s) {
    std::vector<std::uint32_t> v;
    v.reserve(s.size());
    for (const auto& t : s) {
      v.push_back(ids.try_emplace(t, static_cast<std::uint32_t>(ids.size()))
                      .first->second);
    }
    return v;
  };
  const std::vector<std::uint32_t> long_ids = intern(a);
  const std::vector<std::uint32_t> short_ids = intern(b);
  // row[j] = LCS of the processed prefix of `a` and b[0, j).
  std::vector<std::uint32_t> row(short_ids.size() + 1, 0);
  for (std::uint32_t x : long_ids) {
    std::uint32_t diag = 0;
    for (std::size_t j = 1; j <= short_ids.size(); ++j) {
      std::uint32_t up = row[j];
      row[j] = x == short_ids[j - 1] ? diag + 1 : std::max(up, row[j - 1]);
      diag = up;
    }
  }
  return row.back();
}

RougeScore rouge_from_lcs(std::size_t lcs, std::size_t pred_len,
                          std::size_t ref_len) {
  RougeScore s;
  if (pred_len == 0 || ref_len == 0) return s;
  s.precision = static_cast<double>(lcs) / static_cast<double>(pred_len);
  s.recall = static_cast<double>(lcs) / static_cast<double>(ref_len);
  double denom = s.precision + s.recall;
  s.f1 = denom > 0.0 ? 2.0 * s.precision * s.recall / denom : 0.0;
  return s;
}

RougeScore rouge_l(std::string_view prediction, std::string_view reference,
                   const RougeOptions& options) {
  std::vector<std::string> pred = rouge_tokenize(prediction, options);
  std::vector<std::string> ref = rouge_tokenize(reference, options);
  return rouge_from_lcs(lcs_length(pred, ref), pred.size(), ref.size());
}

std::vector<PredictionRecord> load_predictions(
    const std::filesystem::path& path) {
  std::vector<PredictionRecord> out;
  for_each_jsonl(path, [&](const Json& rec, std::size_t line) {
    PredictionRecord r;
    auto opt = [&](const char* key) {
      auto it = rec.find(key);
      return it != rec.end() && it->is_string() ? it->get<std::string>()
                                                : std::string();
    };
    r.doc_id = opt("doc_id");
    r.question = opt("question");
    r.prediction = string_field(rec, "prediction", line);
    r.reference = string_field(rec, "reference", line);
    if (r.reference.empty()) {
      throw DataError("line " + std::to_string(line) + ": empty reference");
    }
    out.push_back(std::move(r));
  });
  return out;
}

ScoreReport score_records(std::span<const PredictionRecord> records,
                          const RougeOptions& options, std::size_t workers) {
  ScoreReport report;
  report.count = records.size();
  report.per_record.resize(records.size());
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(records.size(), 1));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < records.size();) {
      report.per_record[i] =
          rouge_l(records[i].prediction, records[i].reference, options);
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  if (records.empty()) return report;
  double sp = 0.0, sr = 0.0, sf = 0.0;
  for (const auto& s : report.per_record) {
    sp += s.precision;
    sr += s.recall;
    sf += s.f1;
  }
  const double n = static_cast<double>(records.size());
  report.mean_p = sp / n;
  report.mean_r = sr / n;
  report.mean_f1 = sf / n;
  return report;
}

ScoreReport score_file(const std::filesystem::path& path,
                       const RougeOptions& options, std::size_t workers) {
  std::vector<PredictionRecord> records = load_predictions(path);
  if (records.empty()) throw DataError(path.string() + ": no predictions");
  return score_records(records, options, workers);
}

std::string format_percent(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", value * 100.0);
  return buf;
}

}  // namespace kforge

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

#ifndef KFORGE_RENDER_HPP_
#define KFORGE_RENDER_HPP_

#include <cstddef>
#include <string>
#include <string_view>

#include "kforge/generate.hpp"
#include "kforge/jsonl.hpp"

namespace kforge {

struct ChatTemplate {
  std::string user_open = "|user| ";
  std::string assistant_open = " |assistant| ";
  std::string closer;

  // Throws ConfigError if a role marker is empty or both are equal.
  void validate() const;
};

// full_text[loss_start, loss_end) is exactly the response.
struct RenderedExample {
  std::string full_text;
  std::size_t loss_start = 0;
  std::size_t loss_end = 0;

  std::string_view loss_region() const {
    return std::string_view(full_text).substr(loss_start,
                                              loss_end - loss_start);
  }
};

// NTP examples render as the bare response with loss over all of it.
RenderedExample render(const TrainingExample& example,
                       const ChatTemplate& tmpl);

enum class OutputFormat { kRaw, kRendered, kPromptCompletion };

OutputFormat parse_format(std::string_view name);
std::string_view format_name(OutputFormat format);

// {task, doc_id, sent_index, user_query, response, selection_seed}
OrderedJson raw_record(const TrainingExample& example);
// {full_text, loss_start, loss_end, task, doc_id, sent_index}
OrderedJson rendered_record(const TrainingExample& example,
                            const ChatTemplate& tmpl);
// {prompt, completion}; completion = response + closer.
OrderedJson prompt_completion_record(const TrainingExample& example,
                                     const ChatTemplate& tmpl);

OrderedJson output_record(const TrainingExample& example,
                          const ChatTemplate& tmpl, OutputFormat format);

// Inverse of raw_record. Throws DataError.
TrainingExample example_from_record(const Json& record);

}  // namespace kforge

#endif  // KFORGE_RENDER_HPP_

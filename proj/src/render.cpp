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

#include "kforge/render.hpp"

#include "kforge/errors.hpp"

namespace kforge {

void ChatTemplate::validate() const {
  if (user_open.empty() || assistant_open.empty()) {
    throw ConfigError("chat template role markers must be non-empty");
  }
  if (user_open == assistant_open) {
    throw ConfigError("chat template role markers must differ");
  }
}

RenderedExample render(const TrainingExample& example,
                       const ChatTemplate& tmpl) {
  RenderedExample r;
  if (example.task == TaskKind::kNTP) {
    r.full_text = example.response;
    r.loss_start = 0;
    r.loss_end = r.full_text.size();
    return r;
  }
  r.full_text.reserve(tmpl.user_open.size() + example.user_query.size() +
                      tmpl.assistant_open.size() + example.response.size() +
                      tmpl.closer.size());
  r.full_text += tmpl.user_open;
  r.full_text += example.user_query;
  r.full_text += tmpl.assistant_open;
  r.loss_start = r.full_text.size();
  r.full_text += example.response;
  r.loss_end = r.full_text.size();
  r.full_text += tmpl.closer;
  return r;
}

OutputFormat parse_format(std::string_view name) {
  if (name == "raw") return OutputFormat::kRaw;
  if (name == "rendered") return OutputFormat::kRendered;
  if (name == "prompt-completion") return OutputFormat::kPromptCompletion;
  throw ConfigError("unknown output format '" + std::string(name) + "'");
}

std::string_view format_name(OutputFormat format) {
  switch (format) {
    case OutputFormat::kRaw: return "raw";
    case OutputFormat::kRendered: return "rendered";
    case OutputFormat::kPromptCompletion: return "prompt-completion";
  }
  return "?";
}

OrderedJson raw_record(const TrainingExample& ex) {
  OrderedJson j;
  j["task"] = task_name(ex.task);
  j["doc_id"] = ex.doc_id;
  j["sent_index"] = ex.sent_index;
  j["user_query"] = ex.user_query;
  j["response"] = ex.response;
  j["selection_seed"] = ex.selection_seed;
  return j;
}

OrderedJson rendered_record(const TrainingExample& ex,
                            const ChatTemplate& tmpl) {
  RenderedExample r = render(ex, tmpl);
  OrderedJson j;
  j["full_text"] = std::move(r.full_text);
  j["loss_start"] = r.loss_start;
  j["loss_end"] = r.loss_end;
  j["task"] = task_name(ex.task);
  j["doc_id"] = ex.doc_id;
  j["sent_index"] = ex.sent_index;
  return j;
}

OrderedJson prompt_completion_record(const TrainingExample& ex,
                                     const ChatTemplate& tmpl) {
  RenderedExample r = render(ex, tmpl);
  OrderedJson j;
  j["prompt"] = r.full_text.substr(0, r.loss_start);
  j["completion"] = r.full_text.substr(r.loss_start);
  return j;
}

OrderedJson output_record(const TrainingExample& ex, const ChatTemplate& tmpl,
                          OutputFormat format) {
  switch (format) {
    case OutputFormat::kRaw: return raw_record(ex);
    case OutputFormat::kRendered: return rendered_record(ex, tmpl);
    case OutputFormat::kPromptCompletion:
      return prompt_completion_record(ex, tmpl);
  }
  return {};
}

TrainingExample example_from_record(const Json& record) {
  try {
    TrainingExample ex;
    ex.task = parse_task(record.at("task").get<std::string>());
    ex.doc_id = record.at("doc_id").get<std::string>();
    ex.sent_index = record.at("sent_index").get<long>();
    ex.user_query = record.at("user_query").get<std::string>();
    ex.response = record.at("response").get<std::string>();
    ex.selection_seed = record.at("selection_seed").get<std::uint64_t>();
    return ex;
  } catch (const Json::exception& e) {
    throw DataError(std::string("bad dataset record: ") + e.what());
  } catch (const ConfigError& e) {
    throw DataError(std::string("bad dataset record: ") + e.what());
  }
}

}  // namespace kforge

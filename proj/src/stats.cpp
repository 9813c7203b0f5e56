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

#include "kforge/stats.hpp"

#include <cstdio>

namespace kforge {

CorpusStats compute_stats(const AnnotatedCorpus& corpus,
                          const LabelSet& phrase_labels,
                          const TupleOptions& tuple_options) {
  CorpusStats st;
  st.documents = corpus.docs.size();
  st.has_trees = corpus.has_trees;
  st.has_graphs = corpus.has_graphs;
  st.annotated = corpus.has_trees || corpus.has_graphs;
  for (const auto& adoc : corpus.docs) {
    st.whitespace_tokens += split_whitespace(adoc.doc.text).size();
    for (const auto& as : adoc.sentences) {
      ++st.sentences;
      st.tokens += as.sentence.tokens.size();
      if (as.tree &&
          !extract_phrases(*as.tree, as.sentence, phrase_labels).empty()) {
        ++st.phrase_bearing;
      }
      if (as.graph) {
        std::size_t n =
            extract_tuples(*as.graph, as.sentence, tuple_options).size();
        if (n > 0) ++st.tuple_bearing;
        ++st.tuple_histogram[n];
      }
    }
  }
  return st;
}

std::string format_stats(const CorpusStats& st) {
  std::string out;
  char buf[128];
  auto row = [&](const char* name, std::size_t v) {
    std::snprintf(buf, sizeof buf, "%-28s %12zu\n", name, v);
    out += buf;
  };
  auto frac = [&](const char* name, std::size_t v) {
    double f = st.sentences ? static_cast<double>(v) / st.sentences : 0.0;
    std::snprintf(buf, sizeof buf, "%-28s %12.4f\n", name, f);
    out += buf;
  };
  row("documents", st.documents);
  row("whitespace tokens", st.whitespace_tokens);
  if (st.annotated) {
    row("sentences", st.sentences);
    row("tokens", st.tokens);
  }
  if (st.has_trees) frac("phrase-bearing fraction", st.phrase_bearing);
  if (st.has_graphs) {
    frac("tuple-bearing fraction", st.tuple_bearing);
    out += "tuples per sentence:\n";
    for (const auto& [k, v] : st.tuple_histogram) {
      std::snprintf(buf, sizeof buf, "  %6zu %12zu\n", k, v);
      out += buf;
    }
  }
  return out;
}

}  // namespace kforge

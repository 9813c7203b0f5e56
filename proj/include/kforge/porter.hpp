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

#ifndef KFORGE_PORTER_HPP_
#define KFORGE_PORTER_HPP_

#include <string>
#include <string_view>

namespace kforge {

// Porter stemmer with the NLTK extensions (NLTK's default mode), which is
// what the common Python ROUGE package applies when stemming is enabled.
// Expects a lowercase word.
std::string porter_stem(std::string_view word);

}  // namespace kforge

#endif  // KFORGE_PORTER_HPP_

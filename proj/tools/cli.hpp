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

#ifndef KFORGE_TOOLS_CLI_HPP_
#define KFORGE_TOOLS_CLI_HPP_

#include <ostream>

namespace kforge::cli {

// Exit codes: 0 success, 1 validation/data failure, 2 usage/IO failure.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace kforge::cli

#endif  // KFORGE_TOOLS_CLI_HPP_

// Copyright 2026 The zvass Authors
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

#ifndef ZVASS_CORE_REPORT_HPP_
#define ZVASS_CORE_REPORT_HPP_

#include <string>

#include "backend.hpp"

namespace zvass::report {

inline constexpr int kSchemaVersion = 1;

enum class Format { kText, kJson };

// Renders a verdict. A witness is re-simulated on `m` first; a run that
// does not replay throws Error{kWitness}.
std::string render(const Machine& m, const backend::Verdict& v, Format format);

// The set of configurations after each prefix of `word`, starting with
// {start}. An empty set means the word cannot be read.
std::string render_simulation(const Machine& m, const Configuration& start,
                              const std::vector<LetterId>& word, Format format);

}  // namespace zvass::report

#endif  // ZVASS_CORE_REPORT_HPP_

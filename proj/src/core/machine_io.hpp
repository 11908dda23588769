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

// Line-based machine files:
//
//   machine <name>
//   class zrm|zvassr|zvass|zvas
//   dim <d>
//   states <id> <id> ...
//   letters <name> ...
//   effect <letter> add <d ints>
//   effect <letter> reset <i>
//   effect <letter> affine <d*d ints row-major> ; <d ints>
//   transition <state> <letter> <state>
//
// `#` starts a comment. In class zvassr the monitored letters r1..rd are
// implicit, with effect(ri) = reset i. Reset indices are 1-based in files.

#ifndef ZVASS_CORE_MACHINE_IO_HPP_
#define ZVASS_CORE_MACHINE_IO_HPP_

#include <string>
#include <string_view>

#include "model.hpp"

namespace zvass {

// Throws Error{kParse} with "<source>:<line>: message".
Machine parse_machine(std::string_view text, std::string_view source = "<input>");
Machine load_machine(const std::string& path);

// Inverse of parse_machine up to comments and whitespace.
std::string print_machine(const Machine& m);

}  // namespace zvass

#endif  // ZVASS_CORE_MACHINE_IO_HPP_

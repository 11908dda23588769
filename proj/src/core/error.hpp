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

#ifndef ZVASS_CORE_ERROR_HPP_
#define ZVASS_CORE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace zvass {

enum class ErrorKind {
  kDimension,
  kOverflow,
  kInvalidMachine,
  kClass,
  kInvalidRun,
  kParse,
  kFormula,
  kBound,
  kSolver,
  kWitness,
  kArgument,
  kIo,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace zvass

#endif  // ZVASS_CORE_ERROR_HPP_

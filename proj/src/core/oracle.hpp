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

// Bounded explicit-state exploration. Nothing here ever claims
// unreachability: "none within bound" is only a statement about short runs.

#ifndef ZVASS_CORE_ORACLE_HPP_
#define ZVASS_CORE_ORACLE_HPP_

#include <cstddef>
#include <optional>
#include <set>

#include "backend.hpp"
#include "encode.hpp"
#include "model.hpp"

namespace zvass::oracle {

struct BoundedAnswer {
  enum class Status { kFound, kNoneWithinBound };
  Status status = Status::kNoneWithinBound;
  std::optional<Run> witness;    // bfs
  std::optional<Vector> vector;  // inclusion counterexample
  bool confirmed = false;        // inclusion: checked by the solver
  std::size_t explored = 0;
  bool found() const { return status == Status::kFound; }
};

// Shortest run of length <= max_len from src to dst (exact or covering),
// ties broken by the smallest transition-id sequence.
BoundedAnswer bfs(const Machine& m, const Configuration& src, const Configuration& dst,
                  encode::Mode mode, std::size_t max_len);

// Every configuration reachable in at most max_len steps.
std::set<Configuration> reach_set_bounded(const Machine& m, const Configuration& src,
                                          std::size_t max_len);

// A vector reached by A within max_len_a steps but not by B within
// max_len_b steps. With `confirm`, candidates are checked in order by the
// solver and the first one proven outside reach(B) is returned with
// confirmed = true; otherwise the first candidate is returned unconfirmed.
BoundedAnswer incl_counterexample_bounded(const Machine& a, const Configuration& src_a,
                                          const Machine& b, const Configuration& src_b,
                                          std::size_t max_len_a, std::size_t max_len_b,
                                          const backend::SolverConfig* confirm = nullptr);

}  // namespace zvass::oracle

#endif  // ZVASS_CORE_ORACLE_HPP_

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

// SMT-LIB2 emission, the external solver, model parsing, witness
// reconstruction and the decision procedures built on top of them.

#ifndef ZVASS_CORE_BACKEND_HPP_
#define ZVASS_CORE_BACKEND_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "encode.hpp"
#include "model.hpp"
#include "pa.hpp"

namespace zvass::backend {

// Top-level existential variables (and free variables) become constants;
// the logic is QF_LIA when nothing quantified remains. Natural variables get
// a `(>= x 0)` conjunct. Ends with (check-sat), plus (get-model) whenever
// constants were declared.
std::string to_smtlib2(const pa::Formula& f);

// SMT-LIB2 symbol, quoted with |...| when it is not a simple symbol.
std::string smt_symbol(const std::string& name);

enum class Status { kSat, kUnsat, kUnknown };
std::string_view status_name(Status s);

struct SolverConfig {
  std::string command = "z3 -in -smt2";
  long timeout_ms = 60000;
  // Defaults overridden by ZVASS_SOLVER_CMD and ZVASS_TIMEOUT_MS.
  static SolverConfig from_env();
};

struct SolverResult {
  Status status = Status::kUnknown;
  std::optional<pa::Assignment> model;
  std::string diagnostics;
  long elapsed_ms = 0;
};

// Runs the solver on `script` through /bin/sh. A timeout kills the process
// group and yields kUnknown. Throws Error{kSolver} when the process cannot be
// started or its output is not a check-sat answer.
SolverResult invoke(const std::string& script, const SolverConfig& config);

// Parses `(define-fun x () Int 3)` bindings; non-integer bindings are
// skipped. Throws Error{kParse} with the byte offset.
pa::Assignment parse_model(std::string_view text);
std::string print_model(const pa::Assignment& a);

// Per-segment transition counts of a solution of the reachability formula.
struct FlowWitness {
  std::size_t p = 0;
  std::vector<std::size_t> sigma;                    // 1-based, size k
  std::vector<StateId> source, target;               // s_i, t_i (0-based)
  std::vector<std::map<TransitionId, Int>> counts;   // per segment
};

// Reads a FlowWitness for the normal-form machine `m` out of a model.
FlowWitness witness_from_model(const Machine& m, const pa::Assignment& model,
                               const encode::Naming& nm = {});

// Eulerian path per segment (smallest transition id first), segments
// joined by the lowest-id r_{sigma(i)} transition. Throws Error{kWitness}
// on an inconsistent or disconnected flow or a missing joining transition.
Run flows_to_run(const Machine& m, const FlowWitness& w, const Vector& start);

enum class Answer { kYes, kNo, kUnknown };
std::string_view answer_name(Answer a);

struct Verdict {
  Answer answer = Answer::kUnknown;
  std::optional<Run> witness;
  std::optional<Vector> counterexample;
  std::string reason;
  std::map<std::string, long> stats;
};

// Reachability or coverability through the solver. A yes verdict always
// carries a witness run of `m` that has been re-simulated; a witness that
// fails simulation raises Error{kWitness}.
Verdict decide(const Machine& m, const Configuration& src, const Configuration& dst,
               encode::Mode mode, const SolverConfig& config);

// Inclusion reach(a, src_a) in reach(b, src_b). A no verdict carries a
// counterexample vector whenever the follow-up query produced one.
Verdict decide_inclusion(const Machine& a, const Configuration& src_a, const Machine& b,
                         const Configuration& src_b, const SolverConfig& config);

// Whether x is outside reach(m, src) (original states only): kYes when the
// membership query is unsatisfiable.
Answer confirm_non_membership(const Machine& m, const Configuration& src, const Vector& x,
                              const SolverConfig& config);

// Validity of a closed sentence; kUnknown on solver timeout.
Answer decide_sentence(const pa::Formula& sentence, const SolverConfig& config);

}  // namespace zvass::backend

#endif  // ZVASS_CORE_BACKEND_HPP_

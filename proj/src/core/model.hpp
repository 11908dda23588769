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

// Integer register machines: syntax, configurations and step semantics.
//
// A machine has control states, a letter alphabet split into plain letters
// followed by monitored letters, and transitions labelled by letters. Every
// letter carries one affine effect; nondeterminism lives in the transition
// relation only.

#ifndef ZVASS_CORE_MODEL_HPP_
#define ZVASS_CORE_MODEL_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "error.hpp"

namespace zvass {

using Int = std::int64_t;
using Vector = std::vector<Int>;
using StateId = std::size_t;
using LetterId = std::size_t;
using TransitionId = std::size_t;

// v -> v + offset
struct Add {
  Vector offset;
  bool operator==(const Add&) const = default;
};

// v -> v with coordinate `coord` (zero-based) set to 0
struct Reset {
  std::size_t coord = 0;
  bool operator==(const Reset&) const = default;
};

// v -> matrix * v + offset, matrix row-major d x d
struct Affine {
  std::vector<Int> matrix;
  Vector offset;
  bool operator==(const Affine&) const = default;
};

using Transform = std::variant<Add, Reset, Affine>;

// Dimension of a transform; Reset has no intrinsic dimension and reports 0.
std::size_t transform_dimension(const Transform& t);

// Image of v under t. Throws Error{kDimension} on size mismatch and
// Error{kOverflow} if an entry leaves the 64-bit range.
Vector apply(const Transform& t, const Vector& v);

// True if `t` is v -> Λv + b with Λ diagonal over {0,1}.
bool is_reset_add(const Transform& t, std::size_t dim);

enum class MachineClass { kZRM, kZVASSR, kZVASS, kZVAS };

std::string_view class_name(MachineClass c);
std::optional<MachineClass> parse_class(std::string_view s);

struct Letter {
  std::string name;
  Transform effect;
  bool monitored = false;
};

struct Transition {
  StateId source = 0;
  LetterId letter = 0;
  StateId target = 0;
  bool operator==(const Transition&) const = default;
};

struct Configuration {
  StateId state = 0;
  Vector counters;
  auto operator<=>(const Configuration&) const = default;
};

class Machine {
 public:
  Machine() = default;
  // Validates class invariants; plain letters must precede monitored ones.
  Machine(std::string name, MachineClass cls, std::size_t dim,
          std::vector<std::string> states, std::vector<Letter> letters,
          std::vector<Transition> transitions);

  const std::string& name() const { return name_; }
  MachineClass machine_class() const { return class_; }
  std::size_t dimension() const { return dim_; }
  std::size_t state_count() const { return states_.size(); }
  const std::vector<std::string>& states() const { return states_; }
  const std::string& state_name(StateId q) const { return states_.at(q); }
  const std::vector<Letter>& letters() const { return letters_; }
  const Letter& letter(LetterId a) const { return letters_.at(a); }
  const std::vector<Transition>& transitions() const { return transitions_; }
  const Transition& transition(TransitionId t) const {
    return transitions_.at(t);
  }

  std::size_t plain_letter_count() const { return plain_count_; }
  std::size_t monitored_letter_count() const {
    return letters_.size() - plain_count_;
  }

  std::optional<StateId> find_state(std::string_view name) const;
  std::optional<LetterId> find_letter(std::string_view name) const;

  // Normal form: every plain letter is a pure Add and the monitored letters
  // are exactly r_1..r_d with effect(r_i) = Reset(i).
  bool is_normal_form() const;
  // True if no letter carries a general Affine transform (resets and adds
  // only), i.e. the machine can be handed to the decision procedures.
  bool has_general_affine() const;

 private:
  std::string name_;
  MachineClass class_ = MachineClass::kZVASS;
  std::size_t dim_ = 0;
  std::vector<std::string> states_;
  std::vector<Letter> letters_;
  std::vector<Transition> transitions_;
  std::size_t plain_count_ = 0;
};

struct Step {
  TransitionId transition = 0;
  Configuration after;
};

// A run: a start configuration followed by the fired transitions together
// with the configuration reached after each of them.
struct Run {
  Configuration start;
  std::vector<Step> steps;

  const Configuration& end() const {
    return steps.empty() ? start : steps.back().after;
  }
  std::size_t length() const { return steps.size(); }
};

// Successors of c reading `letter`, ordered by transition id.
std::vector<Configuration> step(const Machine& m, const Configuration& c,
                                LetterId letter);

// All configurations reachable from c by reading `word`, sorted and
// duplicate-free. The empty word yields {c}.
std::vector<Configuration> run(const Machine& m, const Configuration& c,
                               const std::vector<LetterId>& word);

// Builds the run that fires `transitions` in order from `start`.
// Throws Error{kInvalidRun} if a transition does not leave the current state.
Run fire(const Machine& m, const Configuration& start,
         const std::vector<TransitionId>& transitions);

// Re-simulates r on m; true iff every step is a transition of m and every
// recorded configuration matches the step relation.
bool validate_run(const Machine& m, const Run& r);

std::vector<LetterId> word_of(const Machine& m, const Run& r);

// Text form `state:c1,c2,...` used on the command line.
Configuration parse_configuration(const Machine& m, std::string_view text);
std::string format_configuration(const Machine& m, const Configuration& c);
std::string format_vector(const Vector& v);

// Normalization of reset/add machines.
//
// Every transition whose letter is v -> Λv + b is replaced by a chain
// r_{i1} ... r_{ij} [Add(b)] through fresh states, resets first so that the
// chain computes exactly Λv + b. Fresh states are appended after the original
// ones, in transition order.
struct TransitionOrigin {
  TransitionId original = 0;
  bool closes_chain = true;  // last link of the chain for `original`
};

struct NormalizedMachine {
  Machine machine;
  std::vector<TransitionOrigin> origin;  // indexed by normalized transition
};

NormalizedMachine normalize(const Machine& m);

// Maps a run of normalize(m).machine that starts and ends in original states
// back to a run of m.
Run lift_run(const Machine& original, const NormalizedMachine& nm,
             const Run& normalized_run);

}  // namespace zvass

#endif  // ZVASS_CORE_MODEL_HPP_

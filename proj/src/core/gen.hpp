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

// Instance generators: reductions into reachability, inclusion and
// quantified linear arithmetic, plus small random machines.

#ifndef ZVASS_CORE_GEN_HPP_
#define ZVASS_CORE_GEN_HPP_

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "model.hpp"
#include "pa.hpp"

namespace zvass::gen {

using Matrix = std::vector<std::vector<Int>>;  // rows

struct Block {
  Matrix a;  // m x n_i
  bool universal = false;
};

// Q_1 x_1 ... Q_k x_k.  A_1 x_1 + ... + A_k x_k ~ c  with ~ being = when the
// innermost block is existential and != otherwise. For a two-block system
// [forall, exists] with guard_from > 0, rows >= guard_from act as a guard:
//   forall x1 forall x2'. rows>=guard_from(x1, x2') -> exists x2. all rows.
struct DiophantineSystem {
  std::vector<Block> blocks;
  Vector c;
  std::size_t guard_from = 0;

  std::size_t rows() const { return c.size(); }
  std::size_t columns(std::size_t block) const;
  void validate() const;  // throws Error{kDimension}
};

// Block b, column j (both 0-based) is the natural variable "x<b+1>_<j+1>".
pa::Var system_var(std::size_t block, std::size_t column);
pa::Formula to_formula(const DiophantineSystem& s);

struct ReachInstance {
  Machine machine;
  Configuration source;
  Configuration target;
};

struct InclusionInstance {
  Machine a;
  Configuration source_a;
  Machine b;
  Configuration source_b;
};

// exists x >= 0. A x = b  as a single-state ZVAS.
ReachInstance diophantine_to_zvas(const Matrix& a, const Vector& b);

// Optional witness of A x = b with every x_j in [0, bound].
std::optional<Vector> ilp_bounded(const Matrix& a, const Vector& b, Int bound);

// a.x + z >= b.y
struct Pi2Term {
  Vector a;
  Int z = 0;
  Vector b;
};

// Positive Boolean combination over term indices.
struct PosBool {
  enum class Kind { kTerm, kAnd, kOr };
  Kind kind = Kind::kTerm;
  std::size_t term = 0;
  std::vector<PosBool> children;

  static PosBool leaf(std::size_t t) { return {Kind::kTerm, t, {}}; }
  static PosBool all(std::vector<PosBool> cs) { return {Kind::kAnd, 0, std::move(cs)}; }
  static PosBool any(std::vector<PosBool> cs) { return {Kind::kOr, 0, std::move(cs)}; }
};

// forall x exists y. matrix, with x and y natural.
struct Pi2Formula {
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::vector<Pi2Term> terms;
  PosBool matrix;

  void validate() const;  // throws Error{kFormula}
};

pa::Formula to_formula(const Pi2Formula& phi);

// Clauses of term indices. Throws Error{kBound} past max_clauses.
std::vector<std::vector<std::size_t>> to_cnf(const PosBool& f, std::size_t max_clauses = 4096);

// phi valid <=> reach(A, q(0)) is included in reach(B, p(0)).
InclusionInstance pi2pa_to_inclusion(const Pi2Formula& phi);

// Multisets M_1..M_k and a target.
struct QsosInstance {
  std::vector<std::vector<Int>> sets;
  Int target = 0;
};

// forall M_1' exists M_2' ... . sum = T (k even) or sum != T (k odd), by
// enumeration of sub-multisets.
bool qsos_holds(const QsosInstance& q);

enum class QsldeEncoding { kBinary, kUnary };

DiophantineSystem qsos2_to_qslde(const QsosInstance& q, QsldeEncoding encoding);

// Literals are +v / -v with v the 1-based variable index; variables are
// numbered block by block. Block i is universal for odd i.
struct Qbf {
  std::vector<std::size_t> blocks;
  std::vector<std::vector<int>> clauses;

  std::size_t variables() const;
};

bool qbf_holds(const Qbf& phi);
// The result always has an even number of sets; an odd block count gets an
// empty existential set appended.
QsosInstance qbf_to_qsos(const Qbf& phi);

struct PcpInstance {
  std::vector<std::pair<std::string, std::string>> pairs;
};

// Letters, in id order: "0" "1" "0~" "1~" "sep" (the # step). States q0,
// qf, then the interior states of the pair loops.
Machine pcp_to_affine_rm(const PcpInstance& p);

// Letters of the loops for the 1-based index sequence `seq`.
std::vector<LetterId> pcp_word(const Machine& m, const PcpInstance& p,
                               const std::vector<std::size_t>& seq);

bool pcp_is_solution(const PcpInstance& p, const std::vector<std::size_t>& seq);

struct RandomMachineOptions {
  std::size_t max_states = 3;
  std::size_t max_dim = 2;
  std::size_t max_letters = 3;
  std::size_t max_transitions = 6;
  Int max_offset = 2;
  bool resets = true;
};

// Random reset/add machine (class zvassr) with a random source and target.
ReachInstance random_instance(std::mt19937_64& rng, const RandomMachineOptions& opt);

// Random single-state normal-form machine: n Add letters with entries in
// [-max_offset, max_offset] and monitored r1..rd.
Machine random_normal_form(std::mt19937_64& rng, std::size_t d, std::size_t n, Int max_offset);

Pi2Formula random_pi2(std::mt19937_64& rng);
QsosInstance random_qsos2(std::mt19937_64& rng, std::size_t max_size, Int max_value);

}  // namespace zvass::gen

#endif  // ZVASS_CORE_GEN_HPP_

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

// Presburger encodings of generalized Parikh images, counter effects and
// the reachability, coverability and inclusion queries.
//
// Inside formulas states are numbered 1..m and letters 1..n+k, plain
// letters first. Variable names are built by Naming so that two machines
// can be encoded side by side.

#ifndef ZVASS_CORE_ENCODE_HPP_
#define ZVASS_CORE_ENCODE_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "model.hpp"
#include "pa.hpp"

namespace zvass::encode {

struct Nfa {
  struct Edge {
    std::size_t source = 1;  // 1..states
    std::size_t letter = 1;  // 1..plain+monitored
    std::size_t target = 1;
  };
  std::size_t states = 1;
  std::size_t plain = 0;      // n
  std::size_t monitored = 0;  // k
  std::vector<Edge> edges;    // edge e is transition e of the machine
  std::size_t initial = 1;
  std::vector<std::size_t> finals;
};

// Underlying automaton of a machine; states and letters shifted to 1-based.
Nfa nfa_of(const Machine& m, StateId initial, const std::vector<StateId>& finals);

struct Naming {
  std::string prefix;

  pa::Var sigma(std::size_t i) const;                   // i in 1..k
  pa::Var pad() const;                                  // p
  pa::Var seg_source(std::size_t i) const;              // s_i
  pa::Var seg_target(std::size_t i) const;              // t_i
  pa::Var flow(std::size_t i, std::size_t edge) const;  // x^i_e
  pa::Var dist(std::size_t i, std::size_t state) const;
  pa::Var alpha(std::size_t i, std::size_t letter) const;  // letter in 1..n
  pa::Var beta(std::size_t i, std::size_t j) const;        // integer
  pa::Var nu(std::size_t i) const;                         // integer
  pa::Var init_state() const;
  pa::Var final_state() const;
};

std::vector<pa::LinExpr> as_terms(const std::vector<pa::Var>& vs);

// Free variables sigma_1..sigma_k.
pa::Formula phi_perm(std::size_t k, const Naming& nm = {});

// Disjunction over the edges of from = e.source, letter = e.letter,
// to = e.target.
pa::Formula phi_delta(const Nfa& nfa, const pa::LinExpr& from, const pa::LinExpr& letter,
                      const pa::LinExpr& to);

// Endpoints of the k+1 partial runs. The initial state is `initial` and t_k
// must equal one of `finals`.
pa::Formula phi_states(const Nfa& nfa, const pa::LinExpr& initial,
                       const std::vector<pa::LinExpr>& finals, const Naming& nm = {});
// Same with the automaton's own initial state and final set.
pa::Formula phi_states(const Nfa& nfa, const Naming& nm = {});

// Consistent and connected flow from s to t, one flow term per edge.
// `dist_segment` selects the distance variables used for connectivity.
pa::Formula phi_connected_flow(const Nfa& nfa, const std::vector<pa::LinExpr>& flow,
                               const pa::LinExpr& s, const pa::LinExpr& t,
                               std::size_t dist_segment, const Naming& nm = {});

// Per segment: zero flow below p, otherwise a connected flow in which no
// monitored letter r_{sigma(j)}, j <= i, is used.
pa::Formula phi_flows(const Nfa& nfa, const Naming& nm = {});

// Psi'_B: free variables alpha, sigma, p and the initial and final state
// variables; everything else is existentially quantified.
pa::Formula psi_prime(const Nfa& nfa, const Naming& nm = {});

// Psi_B(alpha, sigma) for the automaton's own initial and final states.
pa::Formula psi_gpi(const Nfa& nfa, const Naming& nm = {});

// Counter update. Requires a normal-form machine (k = d). Free variables
// alpha, sigma, p plus whatever v and w mention.
pa::Formula phi_counters(const Machine& m, const std::vector<pa::LinExpr>& v,
                         const std::vector<pa::LinExpr>& w, const Naming& nm = {});

// Phi_A(q, q', v, w, alpha, sigma) = exists p. Psi'_B and phi_counters.
pa::Formula phi_reach(const Machine& m, const pa::LinExpr& q_init, const pa::LinExpr& q_final,
                      const std::vector<pa::LinExpr>& v, const std::vector<pa::LinExpr>& w,
                      const Naming& nm = {});
// Variant with free integer vectors v and w named by `nm`.
pa::Formula phi_reach(const Machine& m, const Naming& nm = {});

pa::Var counter_var(const Naming& nm, const std::string& base, std::size_t i);

enum class Mode { kReach, kCover };

// Closed existential sentence: src reaches dst exactly (kReach) or some
// vector >= dst.counters in dst.state (kCover). Requires normal form.
pa::Formula encode_query(const Machine& m, const Configuration& src, const Configuration& dst,
                         Mode mode);

// The existential formula phi_{A,q(v)}(x): x is reachable in A from src in
// one of the first `state_limit` states (all states when 0). Requires normal
// form.
pa::Formula reach_set_formula(const Machine& m, const Configuration& src,
                              const std::vector<pa::Var>& x, const Naming& nm,
                              std::size_t state_limit = 0);

// Shared target variables x_1..x_d of the inclusion sentence.
std::vector<pa::Var> inclusion_vars(std::size_t d);

// Prenex Pi2 sentence valid iff reach(A, src_a) is contained in
// reach(B, src_b). Machines are normalized internally; only original states
// count as final states.
pa::Formula encode_inclusion(const Machine& a, const Configuration& src_a, const Machine& b,
                             const Configuration& src_b);

enum class Direction { kCoverToReach, kReachToCover };

struct Reduced {
  Machine machine;
  Configuration src;
  Configuration dst;
};

// Reductions between reachability and coverability. kReachToCover doubles
// the dimension; kCoverToReach adds decrement self-loops at dst.state.
Reduced reduce(const Machine& m, const Configuration& src, const Configuration& dst,
               Direction direction);

struct PsiSizeRow {
  std::size_t k = 0;
  std::size_t automaton_size = 0;  // |Q| + |Delta|
  std::size_t unary_size = 0;
};

// Unary size of Psi_B for k = 1..k_max over the plain-letter automaton of
// the normalized machine. The automaton stays fixed; only the monitored
// alphabet grows.
std::vector<PsiSizeRow> psi_size_sweep(const Machine& m, std::size_t k_max);

}  // namespace zvass::encode

#endif  // ZVASS_CORE_ENCODE_HPP_

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

// Presburger arithmetic formulas.
//
// Atoms are linear constraints `sum c_i x_i  cmp  b`; the canonical
// comparator is >=, the others are sugar. Variables carry a sort: natural
// (the default, ranging over N) or integer. Formulas are immutable and share
// structure.

#ifndef ZVASS_CORE_PA_HPP_
#define ZVASS_CORE_PA_HPP_

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "model.hpp"

namespace zvass::pa {

enum class Sort { kNat, kInt };

struct Var {
  std::string name;
  Sort sort = Sort::kNat;
  auto operator<=>(const Var&) const = default;
};

inline Var nat(std::string name) { return {std::move(name), Sort::kNat}; }
inline Var integer(std::string name) { return {std::move(name), Sort::kInt}; }

// sum of coefficient * variable, plus a constant. Terms are kept sorted by
// variable name with zero coefficients dropped.
class LinExpr {
 public:
  LinExpr() = default;
  LinExpr(Int constant) : constant_(constant) {}  // NOLINT(runtime/explicit)
  LinExpr(const Var& v) : terms_{{v, 1}} {}       // NOLINT(runtime/explicit)

  const std::vector<std::pair<Var, Int>>& terms() const { return terms_; }
  Int constant() const { return constant_; }

  LinExpr& operator+=(const LinExpr& o);
  LinExpr& operator-=(const LinExpr& o);
  LinExpr& operator*=(Int k);

  friend LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
  friend LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
  friend LinExpr operator*(Int k, LinExpr a) { return a *= k; }
  friend LinExpr operator-(LinExpr a) { return a *= -1; }

 private:
  std::vector<std::pair<Var, Int>> terms_;
  Int constant_ = 0;
};

LinExpr sum(const std::vector<LinExpr>& xs);

enum class Cmp { kGe, kEq, kLe, kNe, kGt, kLt };

// sum(terms) cmp bound
struct Atom {
  std::vector<std::pair<Var, Int>> terms;
  Cmp cmp = Cmp::kGe;
  Int bound = 0;
};

enum class Op { kTrue, kFalse, kAtom, kNot, kAnd, kOr, kImplies, kExists, kForall };

class Formula;

struct Node {
  Op op = Op::kTrue;
  Atom atom;                      // kAtom
  std::vector<Formula> children;  // kNot/kAnd/kOr/kImplies/quantifiers
  std::vector<Var> bound;         // quantifiers
};

class Formula {
 public:
  Formula();  // true
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  Op op() const { return node_->op; }
  const Atom& atom() const { return node_->atom; }
  const std::vector<Formula>& children() const { return node_->children; }
  const Formula& child(std::size_t i = 0) const { return node_->children.at(i); }
  const std::vector<Var>& bound() const { return node_->bound; }
  const Node* get() const { return node_.get(); }

 private:
  std::shared_ptr<const Node> node_;
};

Formula top();
Formula bottom();
// lhs cmp rhs, normalized so that all variables are on the left. Atoms
// without variables fold to top()/bottom().
Formula compare(const LinExpr& lhs, Cmp cmp, const LinExpr& rhs);
inline Formula ge(const LinExpr& a, const LinExpr& b) { return compare(a, Cmp::kGe, b); }
inline Formula le(const LinExpr& a, const LinExpr& b) { return compare(a, Cmp::kLe, b); }
inline Formula eq(const LinExpr& a, const LinExpr& b) { return compare(a, Cmp::kEq, b); }
inline Formula ne(const LinExpr& a, const LinExpr& b) { return compare(a, Cmp::kNe, b); }
inline Formula gt(const LinExpr& a, const LinExpr& b) { return compare(a, Cmp::kGt, b); }
inline Formula lt(const LinExpr& a, const LinExpr& b) { return compare(a, Cmp::kLt, b); }

// Connectives fold true/false children; a single remaining child is returned
// as is.
Formula land(std::vector<Formula> xs);
Formula lor(std::vector<Formula> xs);
Formula lnot(const Formula& x);
Formula implies(const Formula& a, const Formula& b);
Formula exists(std::vector<Var> vars, const Formula& body);
Formula forall(std::vector<Var> vars, const Formula& body);

using Assignment = std::map<std::string, Int>;

// Truth value of a quantifier-free formula. Throws Error{kFormula} for a
// quantifier, a missing variable, or a negative value for a natural variable.
bool evaluate(const Formula& f, const Assignment& a);

// Rewrites every atom into conjunctions/negations of `>=` atoms.
Formula to_ge_canonical(const Formula& f);

std::set<Var> free_variables(const Formula& f);

// No universal quantifier in positive position and no existential one in
// negative position.
bool is_existential(const Formula& f);
bool is_quantifier_free(const Formula& f);
// forall* exists* quantifier-free
bool is_pi2_prenex(const Formula& f);

// Existential quantifiers pulled out of positive positions, renamed apart
// from `taken` (which is updated). Throws Error{kFormula} if f is not
// existential.
struct Hoisted {
  std::vector<Var> vars;
  Formula matrix;
};
Hoisted hoist_existentials(const Formula& f, std::set<std::string>& taken);

// not(exists x. psi_a and not psi_b)  ==>  forall x u. (a -> exists v. b)
// where psi_a = exists u. a and psi_b = exists v. b are existential.
Formula to_prenex_pi2(const Formula& f);

enum class SizeConvention { kNodes, kUnary };
// kNodes: one per variable occurrence, constant, comparator, connective and
// bound variable. kUnary: as kNodes, but a coefficient c counts |c| and the
// constant b counts |b| + 1.
std::size_t size(const Formula& f, SizeConvention convention);

// Deterministic parenthesized infix.
std::string to_string(const Formula& f);
std::string to_string(const Atom& a);

// Bounded brute-force search.
//
// The existential prefix is stripped into free variables; naturals range
// over [0, bound] and integers over [-bound, bound]. Finding nothing says
// nothing about satisfiability beyond the bound.
struct BoundedResult {
  enum class Status { kFound, kNoneWithinBound };
  Status status = Status::kNoneWithinBound;
  Assignment assignment;
  std::size_t nodes = 0;
  bool found() const { return status == Status::kFound; }
};

// `order` lists variable names to branch on first.
BoundedResult sat_bounded(const Formula& f, Int bound,
                          const std::vector<std::string>& order = {});

// Every projection onto `projection` of a satisfying assignment within the
// bound.
std::set<Assignment> enumerate_bounded(const Formula& f, Int bound,
                                       const std::vector<Var>& projection,
                                       const std::vector<std::string>& order = {});

}  // namespace zvass::pa

#endif  // ZVASS_CORE_PA_HPP_

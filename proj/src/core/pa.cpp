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

#include "pa.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace zvass::pa {
namespace {

using Terms = std::vector<std::pair<Var, Int>>;

Terms merge(const Terms& a, const Terms& b, Int kb) {
  Terms out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first.name < b[j].first.name)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first.name < a[i].first.name) {
      if (b[j].second * kb != 0) out.emplace_back(b[j].first, b[j].second * kb);
      ++j;
    } else {
      if (a[i].first.sort != b[j].first.sort) {
        throw Error(ErrorKind::kFormula,
                    "variable '" + a[i].first.name + "' used with two sorts");
      }
      const Int c = a[i].second + b[j].second * kb;
      if (c != 0) out.emplace_back(a[i].first, c);
      ++i, ++j;
    }
  }
  return out;
}

std::shared_ptr<Node> make(Op op) {
  auto n = std::make_shared<Node>();
  n->op = op;
  return n;
}

Formula make_atom(Terms terms, Cmp cmp, Int bound) {
  auto n = make(Op::kAtom);
  n->atom = Atom{std::move(terms), cmp, bound};
  return Formula(std::move(n));
}

bool holds(Int value, Cmp cmp, Int bound) {
  switch (cmp) {
    case Cmp::kGe: return value >= bound;
    case Cmp::kEq: return value == bound;
    case Cmp::kLe: return value <= bound;
    case Cmp::kNe: return value != bound;
    case Cmp::kGt: return value > bound;
    case Cmp::kLt: return value < bound;
  }
  return false;
}

const char* cmp_symbol(Cmp cmp) {
  switch (cmp) {
    case Cmp::kGe: return ">=";
    case Cmp::kEq: return "=";
    case Cmp::kLe: return "<=";
    case Cmp::kNe: return "!=";
    case Cmp::kGt: return ">";
    case Cmp::kLt: return "<";
  }
  return "?";
}

Formula nary(Op op, std::vector<Formula> xs) {
  const Op unit = op == Op::kAnd ? Op::kTrue : Op::kFalse;
  const Op absorbing = op == Op::kAnd ? Op::kFalse : Op::kTrue;
  std::vector<Formula> kept;
  kept.reserve(xs.size());
  for (auto& x : xs) {
    if (x.op() == absorbing) return x;
    if (x.op() != unit) kept.push_back(std::move(x));
  }
  if (kept.empty()) return op == Op::kAnd ? top() : bottom();
  if (kept.size() == 1) return kept.front();
  auto n = make(op);
  n->children = std::move(kept);
  return Formula(std::move(n));
}

Formula quantifier(Op op, std::vector<Var> vars, const Formula& body) {
  if (vars.empty()) return body;
  auto n = make(op);
  n->bound = std::move(vars);
  n->children = {body};
  return Formula(std::move(n));
}

Formula rebuild(const Formula& f, std::vector<Formula> children) {
  switch (f.op()) {
    case Op::kNot: return lnot(children[0]);
    case Op::kAnd: return land(std::move(children));
    case Op::kOr: return lor(std::move(children));
    case Op::kImplies: return implies(children[0], children[1]);
    case Op::kExists: return exists(f.bound(), children[0]);
    case Op::kForall: return forall(f.bound(), children[0]);
    default: return f;
  }
}

Formula rename(const Formula& f, const std::string& from, const std::string& to) {
  if (f.op() == Op::kAtom) {
    Terms t = f.atom().terms;
    bool hit = false;
    for (auto& [v, c] : t) {
      if (v.name == from) v.name = to, hit = true;
    }
    if (!hit) return f;
    std::sort(t.begin(), t.end(),
              [](const auto& a, const auto& b) { return a.first.name < b.first.name; });
    return make_atom(std::move(t), f.atom().cmp, f.atom().bound);
  }
  if (f.op() == Op::kExists || f.op() == Op::kForall) {
    for (const auto& v : f.bound()) {
      if (v.name == from) return f;
    }
  }
  if (f.children().empty()) return f;
  std::vector<Formula> ch;
  for (const auto& c : f.children()) ch.push_back(rename(c, from, to));
  return rebuild(f, std::move(ch));
}

void collect_free(const Formula& f, std::set<std::string>& bound_names,
                  std::set<Var>& out) {
  switch (f.op()) {
    case Op::kAtom:
      for (const auto& [v, c] : f.atom().terms) {
        if (!bound_names.count(v.name)) out.insert(v);
      }
      return;
    case Op::kExists:
    case Op::kForall: {
      std::vector<std::string> added;
      for (const auto& v : f.bound()) {
        if (bound_names.insert(v.name).second) added.push_back(v.name);
      }
      collect_free(f.child(), bound_names, out);
      for (const auto& n : added) bound_names.erase(n);
      return;
    }
    default:
      for (const auto& c : f.children()) collect_free(c, bound_names, out);
  }
}

bool existential_at(const Formula& f, bool positive) {
  switch (f.op()) {
    case Op::kExists: return positive && existential_at(f.child(), positive);
    case Op::kForall: return !positive && existential_at(f.child(), positive);
    case Op::kNot: return existential_at(f.child(), !positive);
    case Op::kImplies:
      return existential_at(f.child(0), !positive) && existential_at(f.child(1), positive);
    default:
      for (const auto& c : f.children()) {
        if (!existential_at(c, positive)) return false;
      }
      return true;
  }
}

Formula hoist_at(const Formula& f, bool positive, std::set<std::string>& taken,
                 std::vector<Var>& vars) {
  switch (f.op()) {
    case Op::kExists:
    case Op::kForall: {
      const bool ok = (f.op() == Op::kExists) == positive;
      if (!ok) throw Error(ErrorKind::kFormula, "formula is not existential");
      Formula body = f.child();
      for (const auto& v : f.bound()) {
        std::string name = v.name;
        while (taken.count(name)) name += "'";
        if (name != v.name) body = rename(body, v.name, name);
        taken.insert(name);
        vars.push_back({name, v.sort});
      }
      return hoist_at(body, positive, taken, vars);
    }
    case Op::kNot: return lnot(hoist_at(f.child(), !positive, taken, vars));
    case Op::kImplies: {
      Formula a = hoist_at(f.child(0), !positive, taken, vars);
      Formula b = hoist_at(f.child(1), positive, taken, vars);
      return implies(a, b);
    }
    case Op::kAnd:
    case Op::kOr: {
      std::vector<Formula> ch;
      for (const auto& c : f.children()) ch.push_back(hoist_at(c, positive, taken, vars));
      return rebuild(f, std::move(ch));
    }
    default: return f;
  }
}

std::size_t size_of(const Formula& f, SizeConvention conv) {
  switch (f.op()) {
    case Op::kTrue:
    case Op::kFalse: return 1;
    case Op::kAtom: {
      const Atom& a = f.atom();
      if (conv == SizeConvention::kNodes) return a.terms.size() + 2;
      std::size_t s = 1 + static_cast<std::size_t>(std::llabs(a.bound)) + 1;
      for (const auto& [v, c] : a.terms) s += static_cast<std::size_t>(std::llabs(c));
      return s;
    }
    default: {
      std::size_t s = 1 + f.bound().size();
      for (const auto& c : f.children()) s += size_of(c, conv);
      return s;
    }
  }
}

void print(const Formula& f, std::ostream& out) {
  auto join = [&](const char* sep) {
    out << "(";
    for (std::size_t i = 0; i < f.children().size(); ++i) {
      if (i) out << sep;
      print(f.child(i), out);
    }
    out << ")";
  };
  switch (f.op()) {
    case Op::kTrue: out << "true"; return;
    case Op::kFalse: out << "false"; return;
    case Op::kAtom: out << to_string(f.atom()); return;
    case Op::kNot: out << "!"; print(f.child(), out); return;
    case Op::kAnd: join(" & "); return;
    case Op::kOr: join(" | "); return;
    case Op::kImplies: join(" -> "); return;
    case Op::kExists:
    case Op::kForall:
      out << "(" << (f.op() == Op::kExists ? "exists" : "forall");
      for (const auto& v : f.bound()) {
        out << " " << v.name << (v.sort == Sort::kNat ? ":nat" : ":int");
      }
      out << ". ";
      print(f.child(), out);
      out << ")";
      return;
  }
}

}  // namespace

LinExpr& LinExpr::operator+=(const LinExpr& o) {
  terms_ = merge(terms_, o.terms_, 1);
  constant_ += o.constant_;
  return *this;
}

LinExpr& LinExpr::operator-=(const LinExpr& o) {
  terms_ = merge(terms_, o.terms_, -1);
  constant_ -= o.constant_;
  return *this;
}

LinExpr& LinExpr::operator*=(Int k) {
  if (k == 0) {
    terms_.clear();
    constant_ = 0;
    return *this;
  }
  for (auto& t : terms_) t.second *= k;
  constant_ *= k;
  return *this;
}

LinExpr sum(const std::vector<LinExpr>& xs) {
  LinExpr out;
  for (const auto& x : xs) out += x;
  return out;
}

Formula::Formula() : node_(make(Op::kTrue)) {}

Formula top() {
  static const Formula t(make(Op::kTrue));
  return t;
}

Formula bottom() {
  static const Formula f(make(Op::kFalse));
  return f;
}

Formula compare(const LinExpr& lhs, Cmp cmp, const LinExpr& rhs) {
  LinExpr e = lhs - rhs;
  if (e.terms().empty()) return holds(0, cmp, -e.constant()) ? top() : bottom();
  return make_atom(e.terms(), cmp, -e.constant());
}

Formula land(std::vector<Formula> xs) { return nary(Op::kAnd, std::move(xs)); }
Formula lor(std::vector<Formula> xs) { return nary(Op::kOr, std::move(xs)); }

Formula lnot(const Formula& x) {
  if (x.op() == Op::kTrue) return bottom();
  if (x.op() == Op::kFalse) return top();
  auto n = make(Op::kNot);
  n->children = {x};
  return Formula(std::move(n));
}

Formula implies(const Formula& a, const Formula& b) {
  if (a.op() == Op::kFalse || b.op() == Op::kTrue) return top();
  if (a.op() == Op::kTrue) return b;
  if (b.op() == Op::kFalse) return lnot(a);
  auto n = make(Op::kImplies);
  n->children = {a, b};
  return Formula(std::move(n));
}

Formula exists(std::vector<Var> vars, const Formula& body) {
  return quantifier(Op::kExists, std::move(vars), body);
}

Formula forall(std::vector<Var> vars, const Formula& body) {
  return quantifier(Op::kForall, std::move(vars), body);
}

bool evaluate(const Formula& f, const Assignment& a) {
  switch (f.op()) {
    case Op::kTrue: return true;
    case Op::kFalse: return false;
    case Op::kAtom: {
      Int value = 0;
      for (const auto& [v, c] : f.atom().terms) {
        auto it = a.find(v.name);
        if (it == a.end()) {
          throw Error(ErrorKind::kFormula, "evaluate: no value for '" + v.name + "'");
        }
        if (v.sort == Sort::kNat && it->second < 0) {
          throw Error(ErrorKind::kFormula,
                      "evaluate: natural variable '" + v.name + "' is negative");
        }
        value += c * it->second;
      }
      return holds(value, f.atom().cmp, f.atom().bound);
    }
    case Op::kNot: return !evaluate(f.child(), a);
    case Op::kAnd:
      for (const auto& c : f.children()) {
        if (!evaluate(c, a)) return false;
      }
      return true;
    case Op::kOr:
      for (const auto& c : f.children()) {
        if (evaluate(c, a)) return true;
      }
      return false;
    case Op::kImplies: return !evaluate(f.child(0), a) || evaluate(f.child(1), a);
    case Op::kExists:
    case Op::kForall:
      throw Error(ErrorKind::kFormula, "evaluate: formula is not quantifier-free");
  }
  return false;
}

Formula to_ge_canonical(const Formula& f) {
  if (f.op() == Op::kAtom) {
    const Atom& at = f.atom();
    Terms neg = at.terms;
    for (auto& t : neg) t.second = -t.second;
    auto ge_pos = [&](Int b) { return make_atom(at.terms, Cmp::kGe, b); };
    auto ge_neg = [&](Int b) { return make_atom(neg, Cmp::kGe, b); };
    switch (at.cmp) {
      case Cmp::kGe: return f;
      case Cmp::kLe: return ge_neg(-at.bound);
      case Cmp::kGt: return ge_pos(at.bound + 1);
      case Cmp::kLt: return ge_neg(-at.bound + 1);
      case Cmp::kEq: return land({ge_pos(at.bound), ge_neg(-at.bound)});
      case Cmp::kNe: return lnot(land({ge_pos(at.bound), ge_neg(-at.bound)}));
    }
  }
  if (f.children().empty()) return f;
  std::vector<Formula> ch;
  for (const auto& c : f.children()) ch.push_back(to_ge_canonical(c));
  return rebuild(f, std::move(ch));
}

std::set<Var> free_variables(const Formula& f) {
  std::set<std::string> bound_names;
  std::set<Var> out;
  collect_free(f, bound_names, out);
  return out;
}

bool is_existential(const Formula& f) { return existential_at(f, true); }

bool is_quantifier_free(const Formula& f) {
  if (f.op() == Op::kExists || f.op() == Op::kForall) return false;
  return std::all_of(f.children().begin(), f.children().end(),
                     [](const Formula& c) { return is_quantifier_free(c); });
}

bool is_pi2_prenex(const Formula& f) {
  const Formula* cur = &f;
  while (cur->op() == Op::kForall) cur = &cur->child();
  while (cur->op() == Op::kExists) cur = &cur->child();
  return is_quantifier_free(*cur);
}

Hoisted hoist_existentials(const Formula& f, std::set<std::string>& taken) {
  Hoisted h;
  h.matrix = hoist_at(f, true, taken, h.vars);
  return h;
}

Formula to_prenex_pi2(const Formula& f) {
  auto shape_error = [] {
    return Error(ErrorKind::kFormula,
                 "to_prenex_pi2: expected not(exists x. psi_a and not psi_b)");
  };
  if (f.op() != Op::kNot) throw shape_error();
  const Formula& inner = f.child();
  std::vector<Var> outer;
  const Formula* body = &inner;
  if (inner.op() == Op::kExists) {
    outer = inner.bound();
    body = &inner.child();
  }
  Formula psi_a = top();
  Formula not_b;
  if (body->op() == Op::kAnd && body->children().size() == 2) {
    psi_a = body->child(0);
    not_b = body->child(1);
  } else {
    not_b = *body;
  }
  if (not_b.op() != Op::kNot) throw shape_error();
  const Formula& psi_b = not_b.child();
  if (!is_existential(psi_a) || !is_existential(psi_b)) {
    throw Error(ErrorKind::kFormula, "to_prenex_pi2: psi_a and psi_b must be existential");
  }
  std::set<std::string> taken;
  for (const auto& v : free_variables(f)) taken.insert(v.name);
  for (const auto& v : outer) taken.insert(v.name);
  Hoisted a = hoist_existentials(psi_a, taken);
  Hoisted b = hoist_existentials(psi_b, taken);
  std::vector<Var> universal = outer;
  universal.insert(universal.end(), a.vars.begin(), a.vars.end());
  return forall(std::move(universal), exists(b.vars, implies(a.matrix, b.matrix)));
}

std::size_t size(const Formula& f, SizeConvention convention) {
  return size_of(f, convention);
}

std::string to_string(const Atom& a) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    const auto& [v, c] = a.terms[i];
    const Int mag = c < 0 ? -c : c;
    if (i == 0) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    if (mag != 1) out << mag << "*";
    out << v.name;
  }
  out << " " << cmp_symbol(a.cmp) << " " << a.bound << ")";
  return out.str();
}

std::string to_string(const Formula& f) {
  std::ostringstream out;
  print(f, out);
  return out.str();
}

}  // namespace zvass::pa

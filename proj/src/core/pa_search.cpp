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

// Bounded search by interval propagation and depth-first branching.
//
// The formula is compiled to negation normal form over three atom kinds
// (sum >= b, sum = b, sum != b). Each variable has an interval domain; a
// node evaluates to true, false or unknown under the current domains.

#include <algorithm>
#include <map>
#include <optional>

#include "pa.hpp"

namespace zvass::pa {
namespace {

using Wide = __int128;

enum class Kind { kTrue, kFalse, kGe, kEq, kNe, kAnd, kOr };
enum class Truth { kFalse, kTrue, kUnknown };

struct CNode {
  Kind kind = Kind::kTrue;
  std::vector<std::pair<std::size_t, Int>> terms;
  Int bound = 0;
  std::vector<std::size_t> children;
};

struct Domain {
  Int lo = 0;
  Int hi = 0;
};

Wide floor_div(Wide a, Wide b) {
  Wide q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Wide ceil_div(Wide a, Wide b) { return -floor_div(-a, b); }

class Compiler {
 public:
  std::vector<CNode> nodes;
  std::vector<Var> vars;
  std::map<std::string, std::size_t> index;

  std::size_t var_index(const Var& v) {
    auto [it, added] = index.emplace(v.name, vars.size());
    if (added) vars.push_back(v);
    return it->second;
  }

  std::size_t leaf(Kind k) {
    nodes.push_back({k, {}, 0, {}});
    return nodes.size() - 1;
  }

  std::size_t atom(const Atom& a, bool positive) {
    std::vector<std::pair<std::size_t, Int>> pos, neg;
    for (const auto& [v, c] : a.terms) {
      const std::size_t i = var_index(v);
      pos.emplace_back(i, c);
      neg.emplace_back(i, -c);
    }
    Cmp cmp = a.cmp;
    if (!positive) {
      switch (cmp) {
        case Cmp::kGe: cmp = Cmp::kLt; break;
        case Cmp::kLt: cmp = Cmp::kGe; break;
        case Cmp::kLe: cmp = Cmp::kGt; break;
        case Cmp::kGt: cmp = Cmp::kLe; break;
        case Cmp::kEq: cmp = Cmp::kNe; break;
        case Cmp::kNe: cmp = Cmp::kEq; break;
      }
    }
    CNode n;
    switch (cmp) {
      case Cmp::kGe: n = {Kind::kGe, pos, a.bound, {}}; break;
      case Cmp::kGt: n = {Kind::kGe, pos, a.bound + 1, {}}; break;
      case Cmp::kLe: n = {Kind::kGe, neg, -a.bound, {}}; break;
      case Cmp::kLt: n = {Kind::kGe, neg, -a.bound + 1, {}}; break;
      case Cmp::kEq: n = {Kind::kEq, pos, a.bound, {}}; break;
      case Cmp::kNe: n = {Kind::kNe, pos, a.bound, {}}; break;
    }
    nodes.push_back(std::move(n));
    return nodes.size() - 1;
  }

  std::size_t compile(const Formula& f, bool positive) {
    switch (f.op()) {
      case Op::kTrue: return leaf(positive ? Kind::kTrue : Kind::kFalse);
      case Op::kFalse: return leaf(positive ? Kind::kFalse : Kind::kTrue);
      case Op::kAtom: return atom(f.atom(), positive);
      case Op::kNot: return compile(f.child(), !positive);
      case Op::kAnd:
      case Op::kOr: {
        const bool conj = (f.op() == Op::kAnd) == positive;
        std::vector<std::size_t> ch;
        for (const auto& c : f.children()) ch.push_back(compile(c, positive));
        nodes.push_back({conj ? Kind::kAnd : Kind::kOr, {}, 0, std::move(ch)});
        return nodes.size() - 1;
      }
      case Op::kImplies: {
        // a -> b  ==  !a | b
        std::vector<std::size_t> ch{compile(f.child(0), !positive),
                                    compile(f.child(1), positive)};
        nodes.push_back({positive ? Kind::kOr : Kind::kAnd, {}, 0, std::move(ch)});
        return nodes.size() - 1;
      }
      case Op::kExists:
      case Op::kForall:
        break;
    }
    throw Error(ErrorKind::kFormula, "bounded search: unexpected quantifier");
  }
};

class Search {
 public:
  Search(const Formula& f, Int bound, const std::vector<Var>& extra,
         const std::vector<std::string>& order) {
    if (bound < 0) throw Error(ErrorKind::kBound, "bounded search: negative bound");
    std::set<std::string> taken;
    for (const auto& v : free_variables(f)) taken.insert(v.name);
    Hoisted h = hoist_existentials(f, taken);
    root_ = c_.compile(h.matrix, true);
    for (const auto& v : extra) c_.var_index(v);
    dom_.resize(c_.vars.size());
    for (std::size_t i = 0; i < c_.vars.size(); ++i) {
      dom_[i] = {c_.vars[i].sort == Sort::kNat ? 0 : -bound, bound};
    }
    std::vector<bool> placed(c_.vars.size(), false);
    auto place = [&](const std::string& name) {
      auto it = c_.index.find(name);
      if (it != c_.index.end() && !placed[it->second]) {
        placed[it->second] = true;
        order_.push_back(it->second);
      }
    };
    for (const auto& v : extra) place(v.name);
    projected_ = order_.size();
    for (const auto& n : order) place(n);
    preferred_ = order_.size();
    for (std::size_t i = 0; i < c_.vars.size(); ++i) place(c_.vars[i].name);
  }

  BoundedResult find_one() {
    BoundedResult r;
    if (dfs(false)) {
      r.status = BoundedResult::Status::kFound;
      r.assignment = assignment(c_.vars.size());
    }
    r.nodes = nodes_;
    return r;
  }

  std::set<Assignment> enumerate() {
    dfs(true);
    return std::move(found_);
  }

 private:
  Wide lo_sum(const CNode& n) const {
    Wide s = 0;
    for (const auto& [i, c] : n.terms) s += c > 0 ? Wide(c) * dom_[i].lo : Wide(c) * dom_[i].hi;
    return s;
  }
  Wide hi_sum(const CNode& n) const {
    Wide s = 0;
    for (const auto& [i, c] : n.terms) s += c > 0 ? Wide(c) * dom_[i].hi : Wide(c) * dom_[i].lo;
    return s;
  }

  Truth eval(std::size_t id) const {
    const CNode& n = c_.nodes[id];
    switch (n.kind) {
      case Kind::kTrue: return Truth::kTrue;
      case Kind::kFalse: return Truth::kFalse;
      case Kind::kGe: {
        if (lo_sum(n) >= n.bound) return Truth::kTrue;
        if (hi_sum(n) < n.bound) return Truth::kFalse;
        return Truth::kUnknown;
      }
      case Kind::kEq:
      case Kind::kNe: {
        const Wide lo = lo_sum(n), hi = hi_sum(n);
        Truth t = Truth::kUnknown;
        if (lo == hi && lo == n.bound) t = Truth::kTrue;
        if (n.bound < lo || n.bound > hi) t = Truth::kFalse;
        if (n.kind == Kind::kNe && t != Truth::kUnknown) {
          t = t == Truth::kTrue ? Truth::kFalse : Truth::kTrue;
        }
        return t;
      }
      case Kind::kAnd: {
        Truth t = Truth::kTrue;
        for (std::size_t c : n.children) {
          const Truth x = eval(c);
          if (x == Truth::kFalse) return Truth::kFalse;
          if (x == Truth::kUnknown) t = Truth::kUnknown;
        }
        return t;
      }
      case Kind::kOr: {
        Truth t = Truth::kFalse;
        for (std::size_t c : n.children) {
          const Truth x = eval(c);
          if (x == Truth::kTrue) return Truth::kTrue;
          if (x == Truth::kUnknown) t = Truth::kUnknown;
        }
        return t;
      }
    }
    return Truth::kUnknown;
  }

  // Tightens domains so that sum(terms) >= b can still hold; false on an
  // empty domain.
  bool tighten_ge(const std::vector<std::pair<std::size_t, Int>>& terms, Wide b, int sign) {
    Wide hi = 0;
    for (const auto& [i, c0] : terms) {
      const Wide c = Wide(c0) * sign;
      hi += c > 0 ? c * dom_[i].hi : c * dom_[i].lo;
    }
    if (hi < b) return false;
    for (const auto& [i, c0] : terms) {
      const Wide c = Wide(c0) * sign;
      Domain& d = dom_[i];
      const Wide rest = hi - (c > 0 ? c * d.hi : c * d.lo);
      const Wide need = b - rest;
      if (c > 0) {
        const Wide lo = ceil_div(need, c);
        if (lo > d.lo) {
          if (lo > d.hi) return false;
          d.lo = static_cast<Int>(lo);
          changed_ = true;
        }
      } else {
        const Wide up = floor_div(need, c);
        if (up < d.hi) {
          if (up < d.lo) return false;
          d.hi = static_cast<Int>(up);
          changed_ = true;
        }
      }
    }
    return true;
  }

  bool propagate(std::size_t id) {
    const CNode& n = c_.nodes[id];
    switch (n.kind) {
      case Kind::kTrue: return true;
      case Kind::kFalse: return false;
      case Kind::kGe: return tighten_ge(n.terms, n.bound, 1);
      case Kind::kEq:
        return tighten_ge(n.terms, n.bound, 1) && tighten_ge(n.terms, -Wide(n.bound), -1);
      case Kind::kNe: {
        std::size_t open = n.terms.size();
        Wide fixed = 0;
        for (std::size_t j = 0; j < n.terms.size(); ++j) {
          const auto& [i, c] = n.terms[j];
          if (dom_[i].lo == dom_[i].hi) {
            fixed += Wide(c) * dom_[i].lo;
          } else if (open == n.terms.size()) {
            open = j;
          } else {
            return true;
          }
        }
        if (open == n.terms.size()) return fixed != n.bound;
        const auto& [i, c] = n.terms[open];
        const Wide r = Wide(n.bound) - fixed;
        if (r % c != 0) return true;
        const Wide v = r / c;
        Domain& d = dom_[i];
        if (v == d.lo) ++d.lo, changed_ = true;
        else if (v == d.hi) --d.hi, changed_ = true;
        return d.lo <= d.hi;
      }
      case Kind::kAnd:
        for (std::size_t c : n.children) {
          if (!propagate(c)) return false;
        }
        return true;
      case Kind::kOr: {
        std::size_t live = 0, last = 0;
        for (std::size_t c : n.children) {
          const Truth t = eval(c);
          if (t == Truth::kTrue) return true;
          if (t == Truth::kUnknown) ++live, last = c;
        }
        if (live == 0) return false;
        if (live == 1) return propagate(last);
        return true;
      }
    }
    return true;
  }

  bool fixpoint() {
    do {
      changed_ = false;
      if (!propagate(root_)) return false;
    } while (changed_);
    return eval(root_) != Truth::kFalse;
  }

  Assignment assignment(std::size_t upto) const {
    Assignment a;
    for (std::size_t j = 0; j < upto && j < order_.size(); ++j) {
      const std::size_t i = order_[j];
      a[c_.vars[i].name] = dom_[i].lo;
    }
    return a;
  }

  // Unfixed variable with the smallest domain among positions [from, to).
  std::optional<std::size_t> pick(std::size_t from, std::size_t to) const {
    std::optional<std::size_t> best;
    Wide width = 0;
    for (std::size_t j = from; j < to; ++j) {
      const Domain& d = dom_[order_[j]];
      const Wide w = Wide(d.hi) - d.lo;
      if (w > 0 && (!best || w < width)) best = order_[j], width = w;
    }
    return best;
  }

  std::optional<std::size_t> next_var() const {
    if (auto v = pick(0, projected_)) return v;
    if (auto v = pick(projected_, preferred_)) return v;
    return pick(preferred_, order_.size());
  }

  // Projected enumeration branches over projection variables first; below
  // them one witness suffices.
  bool dfs(bool enumerating) {
    ++nodes_;
    if (!fixpoint()) return false;
    if (enumerating && !pick(0, projected_)) {
      const auto saved = dom_;
      const bool ok = dfs(false);
      const Assignment a = assignment(projected_);
      dom_ = saved;
      if (ok) found_.insert(a);
      return ok;
    }
    const Truth t = eval(root_);
    if (t == Truth::kTrue && !enumerating) return true;
    // While enumerating, any variable may be split; once the formula holds
    // throughout, only the projection is left to spell out.
    const auto v = !enumerating ? next_var()
                   : t == Truth::kTrue ? pick(0, projected_)
                                       : pick(0, order_.size());
    if (!v) return t == Truth::kTrue;
    const Domain d = dom_[*v];
    const auto saved = dom_;
    bool any = false;
    for (Int x = d.lo; x <= d.hi; ++x) {
      dom_[*v] = {x, x};
      if (dfs(enumerating)) {
        any = true;
        if (!enumerating) return true;
      }
      dom_ = saved;
    }
    return any;
  }

  Compiler c_;
  std::size_t root_ = 0;
  std::vector<Domain> dom_;
  std::vector<std::size_t> order_;
  std::size_t projected_ = 0;
  std::size_t preferred_ = 0;
  bool changed_ = false;
  std::size_t nodes_ = 0;
  std::set<Assignment> found_;
};

}  // namespace

BoundedResult sat_bounded(const Formula& f, Int bound, const std::vector<std::string>& order) {
  Search s(f, bound, {}, order);
  return s.find_one();
}

std::set<Assignment> enumerate_bounded(const Formula& f, Int bound,
                                       const std::vector<Var>& projection,
                                       const std::vector<std::string>& order) {
  Search s(f, bound, projection, order);
  return s.enumerate();
}

}  // namespace zvass::pa

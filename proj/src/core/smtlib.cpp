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

#include <cctype>
#include <set>
#include <sstream>

#include "backend.hpp"

namespace zvass::backend {
namespace {

using pa::Formula;
using pa::Op;

void put_int(std::ostream& out, Int v) {
  if (v < 0) {
    out << "(- " << std::to_string(v).substr(1) << ")";
  } else {
    out << v;
  }
}

void put_atom(std::ostream& out, const pa::Atom& a) {
  std::ostringstream lhs;
  if (a.terms.size() > 1) lhs << "(+";
  for (const auto& [v, c] : a.terms) {
    if (a.terms.size() > 1) lhs << " ";
    if (c == 1) {
      lhs << smt_symbol(v.name);
    } else {
      lhs << "(* ";
      put_int(lhs, c);
      lhs << " " << smt_symbol(v.name) << ")";
    }
  }
  if (a.terms.size() > 1) lhs << ")";
  const char* op = ">=";
  switch (a.cmp) {
    case pa::Cmp::kGe: op = ">="; break;
    case pa::Cmp::kEq: op = "="; break;
    case pa::Cmp::kLe: op = "<="; break;
    case pa::Cmp::kGt: op = ">"; break;
    case pa::Cmp::kLt: op = "<"; break;
    case pa::Cmp::kNe: op = "="; break;
  }
  if (a.cmp == pa::Cmp::kNe) out << "(not ";
  out << "(" << op << " " << lhs.str() << " ";
  put_int(out, a.bound);
  out << ")";
  if (a.cmp == pa::Cmp::kNe) out << ")";
}

void put_nat_guards(std::ostream& out, const std::vector<pa::Var>& vars) {
  for (const auto& v : vars) {
    if (v.sort == pa::Sort::kNat) out << " (>= " << smt_symbol(v.name) << " 0)";
  }
}

bool has_nat(const std::vector<pa::Var>& vars) {
  for (const auto& v : vars) {
    if (v.sort == pa::Sort::kNat) return true;
  }
  return false;
}

void put(std::ostream& out, const Formula& f) {
  auto nary = [&](const char* op) {
    out << "(" << op;
    for (const auto& c : f.children()) {
      out << " ";
      put(out, c);
    }
    out << ")";
  };
  switch (f.op()) {
    case Op::kTrue: out << "true"; return;
    case Op::kFalse: out << "false"; return;
    case Op::kAtom: put_atom(out, f.atom()); return;
    case Op::kNot: out << "(not "; put(out, f.child()); out << ")"; return;
    case Op::kAnd: nary("and"); return;
    case Op::kOr: nary("or"); return;
    case Op::kImplies: nary("=>"); return;
    case Op::kExists:
    case Op::kForall: {
      const bool ex = f.op() == Op::kExists;
      out << "(" << (ex ? "exists" : "forall") << " (";
      for (std::size_t i = 0; i < f.bound().size(); ++i) {
        if (i) out << " ";
        out << "(" << smt_symbol(f.bound()[i].name) << " Int)";
      }
      out << ") ";
      if (has_nat(f.bound())) {
        out << (ex ? "(and" : "(=> (and");
        put_nat_guards(out, f.bound());
        out << (ex ? " " : ") ");
        put(out, f.child());
        out << "))";
      } else {
        put(out, f.child());
        out << ")";
      }
      return;
    }
  }
}

}  // namespace

std::string smt_symbol(const std::string& name) {
  static const std::string extra = "~!@$%^&*_-+=<>.?/";
  bool simple = !name.empty() && !std::isdigit(static_cast<unsigned char>(name[0]));
  for (char ch : name) {
    simple = simple && (std::isalnum(static_cast<unsigned char>(ch)) ||
                        extra.find(ch) != std::string::npos);
  }
  return simple ? name : "|" + name + "|";
}

std::string to_smtlib2(const Formula& f) {
  std::vector<pa::Var> consts;
  std::set<std::string> taken;
  for (const auto& v : pa::free_variables(f)) {
    consts.push_back(v);
    taken.insert(v.name);
  }
  Formula body = f;
  if (pa::is_existential(f)) {
    pa::Hoisted h = pa::hoist_existentials(f, taken);
    consts.insert(consts.end(), h.vars.begin(), h.vars.end());
    body = h.matrix;
  } else {
    while (body.op() == Op::kExists) {
      for (const auto& v : body.bound()) consts.push_back(v);
      body = body.child();
    }
  }
  std::ostringstream out;
  out << "(set-logic " << (pa::is_quantifier_free(body) ? "QF_LIA" : "LIA") << ")\n";
  for (const auto& v : consts) out << "(declare-const " << smt_symbol(v.name) << " Int)\n";
  out << "(assert ";
  if (has_nat(consts)) {
    out << "(and";
    put_nat_guards(out, consts);
    out << " ";
    put(out, body);
    out << ")";
  } else {
    put(out, body);
  }
  out << ")\n(check-sat)\n";
  if (!consts.empty()) out << "(get-model)\n";
  return out.str();
}

}  // namespace zvass::backend

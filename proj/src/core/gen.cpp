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

#include "gen.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace zvass::gen {
namespace {

Int uniform(std::mt19937_64& rng, Int lo, Int hi) {
  return std::uniform_int_distribution<Int>(lo, hi)(rng);
}

std::size_t uniform_size(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

Int checked_add(Int a, Int b) {
  Int r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::kOverflow, "generator: overflow");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::kOverflow, "generator: overflow");
  return r;
}

Vector unit(std::size_t d, std::size_t i, Int v = 1) {
  Vector e(d, 0);
  e[i] = v;
  return e;
}

Letter add_letter(std::string name, Vector offset) {
  return {std::move(name), Add{std::move(offset)}, false};
}

pa::LinExpr row_expr(const DiophantineSystem& s, std::size_t row,
                     const std::vector<std::vector<pa::Var>>& vars) {
  pa::LinExpr e;
  for (std::size_t b = 0; b < s.blocks.size(); ++b) {
    for (std::size_t j = 0; j < vars[b].size(); ++j) {
      const Int c = s.blocks[b].a[row][j];
      if (c != 0) e += c * pa::LinExpr(vars[b][j]);
    }
  }
  return e;
}

pa::Formula rows_hold(const DiophantineSystem& s, std::size_t from,
                      const std::vector<std::vector<pa::Var>>& vars) {
  std::vector<pa::Formula> eqs;
  for (std::size_t r = from; r < s.rows(); ++r) {
    eqs.push_back(pa::eq(row_expr(s, r, vars), s.c[r]));
  }
  return pa::land(std::move(eqs));
}

pa::Formula quantify(bool universal, std::vector<pa::Var> vars, const pa::Formula& body) {
  if (vars.empty()) return body;
  return universal ? pa::forall(std::move(vars), body) : pa::exists(std::move(vars), body);
}

std::vector<pa::Var> named(const char* prefix, std::size_t n) {
  std::vector<pa::Var> out;
  for (std::size_t j = 0; j < n; ++j) out.push_back(pa::nat(prefix + std::to_string(j + 1)));
  return out;
}

pa::Formula posbool_formula(const PosBool& f, const std::vector<pa::Formula>& terms) {
  if (f.kind == PosBool::Kind::kTerm) return terms.at(f.term);
  std::vector<pa::Formula> cs;
  for (const auto& c : f.children) cs.push_back(posbool_formula(c, terms));
  return f.kind == PosBool::Kind::kAnd ? pa::land(std::move(cs)) : pa::lor(std::move(cs));
}

// Every sub-multiset sum reachable by choosing a subset of positions.
std::vector<Int> subset_sums(const std::vector<Int>& set) {
  if (set.size() > 20) throw Error(ErrorKind::kBound, "qsos: set too large to enumerate");
  std::vector<Int> sums{0};
  for (Int v : set) {
    const std::size_t n = sums.size();
    for (std::size_t i = 0; i < n; ++i) sums.push_back(checked_add(sums[i], v));
  }
  return sums;
}

bool qsos_level(const QsosInstance& q, const std::vector<std::vector<Int>>& sums,
                std::size_t level, Int acc) {
  const std::size_t k = q.sets.size();
  if (level == k) return k % 2 == 0 ? acc == q.target : acc != q.target;
  const bool universal = level % 2 == 0;
  for (Int s : sums[level]) {
    const bool sub = qsos_level(q, sums, level + 1, checked_add(acc, s));
    if (universal && !sub) return false;
    if (!universal && sub) return true;
  }
  return universal;
}

std::size_t bit_length(Int v) {
  std::size_t n = 0;
  while (v > 0) {
    ++n;
    v >>= 1;
  }
  return n;
}

Int pow10(std::size_t e) {
  Int r = 1;
  for (std::size_t i = 0; i < e; ++i) r = checked_mul(r, 10);
  return r;
}

bool cnf_true(const Qbf& phi, const std::vector<bool>& value) {
  return std::all_of(phi.clauses.begin(), phi.clauses.end(), [&](const auto& clause) {
    return std::any_of(clause.begin(), clause.end(), [&](int lit) {
      const bool v = value[static_cast<std::size_t>(std::abs(lit)) - 1];
      return lit > 0 ? v : !v;
    });
  });
}

void check_literals(const Qbf& phi) {
  const auto n = static_cast<int>(phi.variables());
  for (const auto& clause : phi.clauses) {
    for (int lit : clause) {
      if (lit == 0 || std::abs(lit) > n) {
        throw Error(ErrorKind::kFormula, "qbf: literal " + std::to_string(lit) + " out of range");
      }
    }
  }
}

}  // namespace

std::size_t DiophantineSystem::columns(std::size_t block) const {
  const Matrix& a = blocks.at(block).a;
  return a.empty() ? 0 : a.front().size();
}

void DiophantineSystem::validate() const {
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].a.size() != rows()) {
      throw Error(ErrorKind::kDimension, "block " + std::to_string(b + 1) + " has " +
                                             std::to_string(blocks[b].a.size()) + " rows, expected " +
                                             std::to_string(rows()));
    }
    for (const auto& row : blocks[b].a) {
      if (row.size() != columns(b)) {
        throw Error(ErrorKind::kDimension, "block " + std::to_string(b + 1) + " is ragged");
      }
    }
  }
  if (guard_from > 0) {
    if (blocks.size() != 2 || !blocks[0].universal || blocks[1].universal ||
        guard_from > rows()) {
      throw Error(ErrorKind::kDimension, "guarded system must be [forall, exists] with a valid guard row");
    }
  }
}

pa::Var system_var(std::size_t block, std::size_t column) {
  return pa::nat("x" + std::to_string(block + 1) + "_" + std::to_string(column + 1));
}

pa::Formula to_formula(const DiophantineSystem& s) {
  s.validate();
  std::vector<std::vector<pa::Var>> vars(s.blocks.size());
  for (std::size_t b = 0; b < s.blocks.size(); ++b) {
    for (std::size_t j = 0; j < s.columns(b); ++j) vars[b].push_back(system_var(b, j));
  }
  if (s.guard_from > 0) {
    auto guard_vars = vars;
    for (auto& v : guard_vars[1]) v.name += "'";
    const pa::Formula guard = rows_hold(s, s.guard_from, guard_vars);
    std::vector<pa::Var> outer = vars[0];
    outer.insert(outer.end(), guard_vars[1].begin(), guard_vars[1].end());
    return quantify(true, outer,
                    pa::implies(guard, quantify(false, vars[1], rows_hold(s, 0, vars))));
  }
  const bool last_universal = !s.blocks.empty() && s.blocks.back().universal;
  pa::Formula body = rows_hold(s, 0, vars);
  if (last_universal) body = pa::lnot(body);
  for (std::size_t b = s.blocks.size(); b-- > 0;) {
    body = quantify(s.blocks[b].universal, vars[b], body);
  }
  return body;
}

ReachInstance diophantine_to_zvas(const Matrix& a, const Vector& b) {
  const std::size_t m = b.size();
  if (m == 0) throw Error(ErrorKind::kDimension, "diophantine: no equations");
  if (a.size() != m) throw Error(ErrorKind::kDimension, "diophantine: row count mismatch");
  const std::size_t n = a.front().size();
  std::vector<Letter> letters;
  std::vector<Transition> transitions;
  for (std::size_t j = 0; j < n; ++j) {
    Vector column;
    for (const auto& row : a) {
      if (row.size() != n) throw Error(ErrorKind::kDimension, "diophantine: ragged matrix");
      column.push_back(row[j]);
    }
    letters.push_back(add_letter("a" + std::to_string(j + 1), std::move(column)));
    transitions.push_back({0, j, 0});
  }
  Machine machine("diophantine", MachineClass::kZVAS, m, {"q"}, std::move(letters),
                  std::move(transitions));
  return {std::move(machine), {0, Vector(m, 0)}, {0, b}};
}

std::optional<Vector> ilp_bounded(const Matrix& a, const Vector& b, Int bound) {
  const std::size_t n = a.empty() ? 0 : a.front().size();
  Vector x(n, 0);
  while (true) {
    bool ok = true;
    for (std::size_t r = 0; r < a.size() && ok; ++r) {
      Int s = 0;
      for (std::size_t j = 0; j < n; ++j) s = checked_add(s, checked_mul(a[r][j], x[j]));
      ok = s == b[r];
    }
    if (ok) return x;
    std::size_t j = 0;
    while (j < n && x[j] == bound) x[j++] = 0;
    if (j == n) return std::nullopt;
    ++x[j];
  }
}

void Pi2Formula::validate() const {
  for (const auto& t : terms) {
    if (t.a.size() != nx || t.b.size() != ny) {
      throw Error(ErrorKind::kFormula, "pi2: term arity does not match the variable blocks");
    }
  }
  std::function<void(const PosBool&)> walk = [&](const PosBool& f) {
    if (f.kind == PosBool::Kind::kTerm) {
      if (f.term >= terms.size()) throw Error(ErrorKind::kFormula, "pi2: unknown term index");
      return;
    }
    if (f.children.empty()) throw Error(ErrorKind::kFormula, "pi2: empty connective");
    for (const auto& c : f.children) walk(c);
  };
  walk(matrix);
}

pa::Formula to_formula(const Pi2Formula& phi) {
  phi.validate();
  const auto xs = named("x", phi.nx);
  const auto ys = named("y", phi.ny);
  std::vector<pa::Formula> terms;
  for (const auto& t : phi.terms) {
    pa::LinExpr lhs(t.z), rhs;
    for (std::size_t j = 0; j < phi.nx; ++j) lhs += t.a[j] * pa::LinExpr(xs[j]);
    for (std::size_t j = 0; j < phi.ny; ++j) rhs += t.b[j] * pa::LinExpr(ys[j]);
    terms.push_back(pa::ge(lhs, rhs));
  }
  return quantify(true, xs, quantify(false, ys, posbool_formula(phi.matrix, terms)));
}

std::vector<std::vector<std::size_t>> to_cnf(const PosBool& f, std::size_t max_clauses) {
  using Cnf = std::vector<std::vector<std::size_t>>;
  switch (f.kind) {
    case PosBool::Kind::kTerm:
      return {{f.term}};
    case PosBool::Kind::kAnd: {
      Cnf out;
      for (const auto& c : f.children) {
        Cnf sub = to_cnf(c, max_clauses);
        out.insert(out.end(), sub.begin(), sub.end());
        if (out.size() > max_clauses) throw Error(ErrorKind::kBound, "cnf: too many clauses");
      }
      return out;
    }
    case PosBool::Kind::kOr: {
      Cnf out{{}};
      for (const auto& c : f.children) {
        const Cnf sub = to_cnf(c, max_clauses);
        if (out.size() * sub.size() > max_clauses) {
          throw Error(ErrorKind::kBound, "cnf: too many clauses");
        }
        Cnf next;
        for (const auto& left : out) {
          for (const auto& right : sub) {
            auto clause = left;
            clause.insert(clause.end(), right.begin(), right.end());
            next.push_back(std::move(clause));
          }
        }
        out = std::move(next);
      }
      return out;
    }
  }
  return {};
}

InclusionInstance pi2pa_to_inclusion(const Pi2Formula& phi) {
  phi.validate();
  const auto cnf = to_cnf(phi.matrix);
  std::vector<std::size_t> term_of;               // occurrence -> term
  std::vector<std::vector<std::size_t>> clause_occ;  // clause -> occurrences
  for (const auto& clause : cnf) {
    clause_occ.emplace_back();
    for (std::size_t t : clause) {
      clause_occ.back().push_back(term_of.size());
      term_of.push_back(t);
    }
  }
  const std::size_t d = term_of.size();

  std::vector<Letter> la;
  Vector z(d);
  for (std::size_t o = 0; o < d; ++o) z[o] = phi.terms[term_of[o]].z;
  la.push_back(add_letter("z", z));
  std::vector<Transition> ta{{0, 0, 1}};
  for (std::size_t j = 0; j < phi.nx; ++j) {
    Vector l(d);
    for (std::size_t o = 0; o < d; ++o) l[o] = phi.terms[term_of[o]].a[j];
    la.push_back(add_letter("l" + std::to_string(j + 1), l));
    ta.push_back({1, la.size() - 1, 1});
  }
  Machine a("pi2.A", MachineClass::kZVASS, d, {"q", "q1"}, std::move(la), std::move(ta));

  std::vector<std::string> states{"p"};
  std::vector<Letter> lb;
  std::vector<Transition> tb;
  for (std::size_t j = 0; j < phi.ny; ++j) {
    Vector r(d);
    for (std::size_t o = 0; o < d; ++o) r[o] = phi.terms[term_of[o]].b[j];
    lb.push_back(add_letter("r" + std::to_string(j + 1), r));
    tb.push_back({0, lb.size() - 1, 0});
  }
  const LetterId go = lb.size();
  lb.push_back(add_letter("go", Vector(d, 0)));
  const LetterId dec0 = lb.size();
  for (std::size_t o = 0; o < d; ++o) lb.push_back(add_letter("dec" + std::to_string(o + 1), unit(d, o, -1)));
  const LetterId inc0 = lb.size();
  for (std::size_t o = 0; o < d; ++o) lb.push_back(add_letter("inc" + std::to_string(o + 1), unit(d, o, 1)));

  StateId junction = 0;
  for (std::size_t c = 0; c < clause_occ.size(); ++c) {
    const bool last = c + 1 == clause_occ.size();
    states.push_back(last ? "pf" : "j" + std::to_string(c + 1));
    const StateId next = states.size() - 1;
    for (std::size_t chosen : clause_occ[c]) {
      states.push_back("c" + std::to_string(c + 1) + "_" + std::to_string(chosen + 1));
      const StateId branch = states.size() - 1;
      tb.push_back({junction, go, branch});
      for (std::size_t other : clause_occ[c]) {
        if (other != chosen) tb.push_back({branch, dec0 + other, branch});
      }
      tb.push_back({branch, go, next});
    }
    junction = next;
  }
  for (std::size_t o = 0; o < d; ++o) tb.push_back({junction, inc0 + o, junction});
  Machine b("pi2.B", MachineClass::kZVASS, d, std::move(states), std::move(lb), std::move(tb));
  return {std::move(a), {0, Vector(d, 0)}, std::move(b), {0, Vector(d, 0)}};
}

bool qsos_holds(const QsosInstance& q) {
  std::vector<std::vector<Int>> sums;
  for (const auto& s : q.sets) sums.push_back(subset_sums(s));
  return qsos_level(q, sums, 0, 0);
}

DiophantineSystem qsos2_to_qslde(const QsosInstance& q, QsldeEncoding encoding) {
  if (q.sets.size() != 2) throw Error(ErrorKind::kArgument, "qsos2_to_qslde: expected k = 2");
  for (const auto& s : q.sets) {
    for (Int v : s) {
      if (v < 0) throw Error(ErrorKind::kArgument, "qsos: negative value");
    }
  }
  const auto& m = q.sets[0];
  const auto& n = q.sets[1];
  const std::size_t p = m.size(), r = n.size();
  DiophantineSystem s;
  s.guard_from = 1;

  if (encoding == QsldeEncoding::kBinary) {
    const std::size_t rows = 1 + p + r;
    Matrix a(rows, Vector(p, 0)), b(rows, Vector(r + p + r, 0));
    s.c.assign(rows, 1);
    s.c[0] = q.target;
    for (std::size_t i = 0; i < p; ++i) a[0][i] = m[i];
    for (std::size_t j = 0; j < r; ++j) b[0][j] = n[j];
    for (std::size_t i = 0; i < p; ++i) {
      a[1 + i][i] = 1;
      b[1 + i][r + i] = 1;
    }
    for (std::size_t j = 0; j < r; ++j) {
      b[1 + p + j][j] = 1;
      b[1 + p + j][r + p + j] = 1;
    }
    s.blocks = {{std::move(a), true}, {std::move(b), false}};
    return s;
  }

  Int top = 0;
  for (const auto& set : q.sets) {
    for (Int v : set) top = std::max(top, v);
  }
  const std::size_t digits = std::max<std::size_t>(1, bit_length(top));  // q + 1
  const std::size_t width = digits + 2;
  const std::size_t rows = 1 + (p + r) * (1 + digits);
  Matrix a(rows, Vector(p * width, 0)), b(rows, Vector(r * width, 0));
  s.c.assign(rows, 0);
  s.c[0] = q.target;
  std::size_t row = 1;
  auto emit = [&](Matrix& mat, const std::vector<Int>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      const std::size_t base = i * width;  // x_i, x̄_i, x_i0 .. x_iq
      mat[0][base + 2] = 1;
      mat[row][base] = 1;
      mat[row][base + 1] = 1;
      s.c[row++] = 1;
      for (std::size_t j = 0; j < digits; ++j) {
        const Int bit = (values[i] >> j) & 1;
        mat[row][base + 2 + j] = 1;
        if (j + 1 < digits) mat[row][base + 3 + j] = -2;
        mat[row][base] -= bit;
        ++row;
      }
    }
  };
  emit(a, m);
  emit(b, n);
  s.blocks = {{std::move(a), true}, {std::move(b), false}};
  return s;
}

std::size_t Qbf::variables() const { return std::accumulate(blocks.begin(), blocks.end(), std::size_t{0}); }

bool qbf_holds(const Qbf& phi) {
  check_literals(phi);
  const std::size_t n = phi.variables();
  if (n > 24) throw Error(ErrorKind::kBound, "qbf: too many variables to enumerate");
  std::vector<bool> value(n, false);
  std::function<bool(std::size_t, std::size_t)> go = [&](std::size_t block, std::size_t first) {
    if (block == phi.blocks.size()) return cnf_true(phi, value);
    const std::size_t len = phi.blocks[block];
    const bool universal = block % 2 == 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << len); ++mask) {
      for (std::size_t i = 0; i < len; ++i) value[first + i] = (mask >> i) & 1;
      const bool sub = go(block + 1, first + len);
      if (universal && !sub) return false;
      if (!universal && sub) return true;
    }
    return universal;
  };
  return go(0, 0);
}

QsosInstance qbf_to_qsos(const Qbf& phi) {
  for (const auto& clause : phi.clauses) {
    if (clause.size() != 3) {
      throw Error(ErrorKind::kFormula, "qbf: clause with " + std::to_string(clause.size()) +
                                           " literals, expected 3");
    }
  }
  check_literals(phi);
  if (phi.blocks.empty()) throw Error(ErrorKind::kFormula, "qbf: no quantifier blocks");
  const std::size_t m = phi.clauses.size(), n = phi.variables();
  if (m + n > 18) throw Error(ErrorKind::kBound, "qbf: more than 18 digits");
  auto clause_weight = [&](std::size_t l) { return pow10(n + m - 1 - l); };
  auto var_weight = [&](std::size_t g) { return pow10(n - 1 - g); };
  auto literal_number = [&](std::size_t g, int sign) {
    Int v = var_weight(g);
    for (std::size_t l = 0; l < m; ++l) {
      for (int lit : phi.clauses[l]) {
        if (lit == sign * static_cast<int>(g + 1)) v = checked_add(v, clause_weight(l));
      }
    }
    return v;
  };
  QsosInstance q;
  std::size_t g = 0;
  for (std::size_t size : phi.blocks) {
    q.sets.emplace_back();
    for (std::size_t i = 0; i < size; ++i, ++g) q.sets.back().push_back(literal_number(g, 1));
  }
  if (q.sets.size() % 2 == 1) q.sets.emplace_back();
  auto& last = q.sets.back();
  for (std::size_t v = 0; v < n; ++v) last.push_back(literal_number(v, -1));
  for (std::size_t l = 0; l < m; ++l) {
    last.push_back(clause_weight(l));
    last.push_back(checked_mul(2, clause_weight(l)));
    q.target = checked_add(q.target, checked_mul(4, clause_weight(l)));
  }
  for (std::size_t v = 0; v < n; ++v) q.target = checked_add(q.target, var_weight(v));
  return q;
}

Machine pcp_to_affine_rm(const PcpInstance& p) {
  if (p.pairs.empty()) throw Error(ErrorKind::kArgument, "pcp: no pairs");
  std::vector<Letter> letters{
      {"0", Affine{{2, 0, 0, 1}, {0, 0}}, false},
      {"1", Affine{{2, 0, 0, 1}, {1, 0}}, false},
      {"0~", Affine{{1, 0, 0, 2}, {0, 0}}, false},
      {"1~", Affine{{1, 0, 0, 2}, {0, 1}}, false},
      {"sep", Add{{-1, -1}}, false},
  };
  std::vector<std::string> states{"q0", "qf"};
  std::vector<Transition> transitions{{0, 4, 1}, {1, 4, 1}};
  for (std::size_t i = 0; i < p.pairs.size(); ++i) {
    std::vector<LetterId> word;
    for (char ch : p.pairs[i].first) {
      if (ch != '0' && ch != '1') throw Error(ErrorKind::kArgument, "pcp: words are over {0,1}");
      word.push_back(ch == '0' ? 0 : 1);
    }
    for (char ch : p.pairs[i].second) {
      if (ch != '0' && ch != '1') throw Error(ErrorKind::kArgument, "pcp: words are over {0,1}");
      word.push_back(ch == '0' ? 2 : 3);
    }
    StateId from = 0;
    for (std::size_t j = 0; j < word.size(); ++j) {
      StateId to = 0;
      if (j + 1 < word.size()) {
        states.push_back("q0_" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
        to = states.size() - 1;
      }
      transitions.push_back({from, word[j], to});
      from = to;
    }
  }
  return Machine("pcp", MachineClass::kZRM, 2, std::move(states), std::move(letters),
                 std::move(transitions));
}

std::vector<LetterId> pcp_word(const Machine& m, const PcpInstance& p,
                               const std::vector<std::size_t>& seq) {
  const LetterId ids[4] = {*m.find_letter("0"), *m.find_letter("1"), *m.find_letter("0~"),
                           *m.find_letter("1~")};
  std::vector<LetterId> word;
  for (std::size_t i : seq) {
    if (i < 1 || i > p.pairs.size()) throw Error(ErrorKind::kArgument, "pcp: index out of range");
    for (char ch : p.pairs[i - 1].first) word.push_back(ids[ch == '0' ? 0 : 1]);
    for (char ch : p.pairs[i - 1].second) word.push_back(ids[ch == '0' ? 2 : 3]);
  }
  return word;
}

bool pcp_is_solution(const PcpInstance& p, const std::vector<std::size_t>& seq) {
  if (seq.empty()) return false;
  std::string top, bottom;
  for (std::size_t i : seq) {
    if (i < 1 || i > p.pairs.size()) throw Error(ErrorKind::kArgument, "pcp: index out of range");
    top += p.pairs[i - 1].first;
    bottom += p.pairs[i - 1].second;
  }
  return top == bottom;
}

ReachInstance random_instance(std::mt19937_64& rng, const RandomMachineOptions& opt) {
  const std::size_t states = uniform_size(rng, 1, opt.max_states);
  const std::size_t d = uniform_size(rng, 1, opt.max_dim);
  const std::size_t nl = uniform_size(rng, 1, opt.max_letters);
  std::vector<std::string> names;
  for (std::size_t q = 0; q < states; ++q) names.push_back("s" + std::to_string(q));
  std::vector<Letter> letters;
  for (std::size_t l = 0; l < nl; ++l) {
    Vector offset(d);
    for (auto& x : offset) x = uniform(rng, -opt.max_offset, opt.max_offset);
    const std::string name = "a" + std::to_string(l);
    if (opt.resets && uniform(rng, 0, 2) == 0) {
      std::vector<Int> matrix(d * d, 0);
      for (std::size_t i = 0; i < d; ++i) matrix[i * d + i] = uniform(rng, 0, 1);
      matrix[uniform_size(rng, 0, d - 1) * (d + 1)] = 0;
      letters.push_back({name, Affine{std::move(matrix), std::move(offset)}, false});
    } else {
      letters.push_back(add_letter(name, std::move(offset)));
    }
  }
  std::vector<Transition> transitions;
  const std::size_t nt = uniform_size(rng, 1, opt.max_transitions);
  for (std::size_t t = 0; t < nt; ++t) {
    transitions.push_back({uniform_size(rng, 0, states - 1), uniform_size(rng, 0, nl - 1),
                           uniform_size(rng, 0, states - 1)});
  }
  Machine m("random", opt.resets ? MachineClass::kZVASSR : MachineClass::kZVASS, d,
            std::move(names), std::move(letters), std::move(transitions));
  Configuration src{uniform_size(rng, 0, states - 1), Vector(d, 0)};
  for (auto& x : src.counters) x = uniform(rng, -1, 1);
  Configuration dst = src;
  if (uniform(rng, 0, 1) == 0) {
    const std::size_t len = uniform_size(rng, 0, 6);
    for (std::size_t i = 0; i < len; ++i) {
      std::vector<TransitionId> out;
      for (TransitionId id = 0; id < m.transitions().size(); ++id) {
        if (m.transition(id).source == dst.state) out.push_back(id);
      }
      if (out.empty()) break;
      const Transition& t = m.transition(out[uniform_size(rng, 0, out.size() - 1)]);
      dst = {t.target, zvass::apply(m.letter(t.letter).effect, dst.counters)};
    }
  } else {
    dst.state = uniform_size(rng, 0, states - 1);
    for (auto& x : dst.counters) x = uniform(rng, -3, 3);
  }
  return {std::move(m), std::move(src), std::move(dst)};
}

Machine random_normal_form(std::mt19937_64& rng, std::size_t d, std::size_t n, Int max_offset) {
  std::vector<Letter> letters;
  std::vector<Transition> transitions;
  for (std::size_t a = 0; a < n; ++a) {
    Vector offset(d);
    for (auto& x : offset) x = uniform(rng, -max_offset, max_offset);
    letters.push_back(add_letter("a" + std::to_string(a + 1), std::move(offset)));
  }
  for (std::size_t i = 0; i < d; ++i) {
    letters.push_back({"r" + std::to_string(i + 1), Reset{i}, true});
  }
  for (LetterId a = 0; a < letters.size(); ++a) transitions.push_back({0, a, 0});
  return Machine("normal", MachineClass::kZVASSR, d, {"q"}, std::move(letters),
                 std::move(transitions));
}

Pi2Formula random_pi2(std::mt19937_64& rng) {
  Pi2Formula phi;
  phi.nx = uniform_size(rng, 1, 2);
  phi.ny = uniform_size(rng, 1, 2);
  const std::size_t nterms = uniform_size(rng, 1, 3);
  for (std::size_t t = 0; t < nterms; ++t) {
    Pi2Term term;
    for (std::size_t j = 0; j < phi.nx; ++j) term.a.push_back(uniform(rng, 0, 2));
    for (std::size_t j = 0; j < phi.ny; ++j) term.b.push_back(uniform(rng, 0, 2));
    term.z = uniform(rng, -2, 2);
    phi.terms.push_back(std::move(term));
  }
  std::vector<PosBool> clauses;
  const std::size_t nclauses = uniform_size(rng, 1, 2);
  for (std::size_t c = 0; c < nclauses; ++c) {
    std::vector<PosBool> lits;
    const std::size_t width = uniform_size(rng, 1, 2);
    for (std::size_t i = 0; i < width; ++i) lits.push_back(PosBool::leaf(uniform_size(rng, 0, nterms - 1)));
    clauses.push_back(PosBool::any(std::move(lits)));
  }
  phi.matrix = PosBool::all(std::move(clauses));
  return phi;
}

QsosInstance random_qsos2(std::mt19937_64& rng, std::size_t max_size, Int max_value) {
  QsosInstance q;
  Int total = 0;
  for (int i = 0; i < 2; ++i) {
    q.sets.emplace_back();
    const std::size_t n = uniform_size(rng, 0, max_size);
    for (std::size_t j = 0; j < n; ++j) {
      q.sets.back().push_back(uniform(rng, 0, max_value));
      total += q.sets.back().back();
    }
  }
  q.target = uniform(rng, 0, total + 1);
  return q;
}

}  // namespace zvass::gen

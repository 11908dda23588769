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

#include "encode.hpp"

#include <algorithm>
#include <set>

#include "parikh.hpp"

namespace zvass::encode {
namespace {

using pa::Formula;
using pa::LinExpr;
using pa::Var;

LinExpr c(std::size_t x) { return LinExpr(static_cast<Int>(x)); }
std::string num(std::size_t x) { return std::to_string(x); }

std::vector<Var> alpha_vars(const Naming& nm, std::size_t k, std::size_t n) {
  std::vector<Var> out;
  for (std::size_t i = 0; i <= k; ++i) {
    for (std::size_t a = 1; a <= n; ++a) out.push_back(nm.alpha(i, a));
  }
  return out;
}

std::vector<Var> sigma_vars(const Naming& nm, std::size_t k) {
  std::vector<Var> out;
  for (std::size_t i = 1; i <= k; ++i) out.push_back(nm.sigma(i));
  return out;
}

// Psi'_B without its quantifier; `inner` collects the variables to bind.
Formula psi_core(const Nfa& nfa, const LinExpr& initial, const std::vector<LinExpr>& finals,
                 const Naming& nm, std::vector<Var>& inner) {
  const std::size_t k = nfa.monitored;
  for (std::size_t i = 0; i <= k; ++i) {
    inner.push_back(nm.seg_source(i));
    inner.push_back(nm.seg_target(i));
    for (std::size_t e = 0; e < nfa.edges.size(); ++e) inner.push_back(nm.flow(i, e));
    for (std::size_t q = 1; q <= nfa.states; ++q) inner.push_back(nm.dist(i, q));
  }
  std::vector<Formula> parts{phi_perm(k, nm), pa::le(nm.pad(), c(k)),
                             phi_states(nfa, initial, finals, nm), phi_flows(nfa, nm)};
  for (std::size_t i = 0; i <= k; ++i) {
    for (std::size_t a = 1; a <= nfa.plain; ++a) {
      LinExpr total;
      for (std::size_t e = 0; e < nfa.edges.size(); ++e) {
        if (nfa.edges[e].letter == a) total += nm.flow(i, e);
      }
      parts.push_back(pa::eq(nm.alpha(i, a), total));
    }
  }
  return pa::land(std::move(parts));
}

}  // namespace

Nfa nfa_of(const Machine& m, StateId initial, const std::vector<StateId>& finals) {
  Nfa nfa;
  nfa.states = m.state_count();
  nfa.plain = m.plain_letter_count();
  nfa.monitored = m.monitored_letter_count();
  for (const auto& t : m.transitions()) {
    nfa.edges.push_back({t.source + 1, t.letter + 1, t.target + 1});
  }
  nfa.initial = initial + 1;
  for (StateId f : finals) nfa.finals.push_back(f + 1);
  return nfa;
}

Var Naming::sigma(std::size_t i) const { return pa::nat(prefix + "sg" + num(i)); }
Var Naming::pad() const { return pa::nat(prefix + "p"); }
Var Naming::seg_source(std::size_t i) const { return pa::nat(prefix + "s" + num(i)); }
Var Naming::seg_target(std::size_t i) const { return pa::nat(prefix + "t" + num(i)); }
Var Naming::flow(std::size_t i, std::size_t edge) const {
  return pa::nat(prefix + "x" + num(i) + "_" + num(edge));
}
Var Naming::dist(std::size_t i, std::size_t state) const {
  return pa::nat(prefix + "h" + num(i) + "_" + num(state));
}
Var Naming::alpha(std::size_t i, std::size_t letter) const {
  return pa::nat(prefix + "a" + num(i) + "_" + num(letter));
}
Var Naming::beta(std::size_t i, std::size_t j) const {
  return pa::integer(prefix + "b" + num(i) + "_" + num(j));
}
Var Naming::nu(std::size_t i) const { return pa::integer(prefix + "nu" + num(i)); }
Var Naming::init_state() const { return pa::nat(prefix + "qi"); }
Var Naming::final_state() const { return pa::nat(prefix + "qf"); }

Var counter_var(const Naming& nm, const std::string& base, std::size_t i) {
  return pa::integer(nm.prefix + base + num(i));
}

std::vector<LinExpr> as_terms(const std::vector<Var>& vs) {
  return {vs.begin(), vs.end()};
}

Formula phi_perm(std::size_t k, const Naming& nm) {
  std::vector<Formula> parts;
  for (std::size_t i = 1; i <= k; ++i) {
    parts.push_back(pa::ge(nm.sigma(i), 1));
    parts.push_back(pa::le(nm.sigma(i), c(k)));
  }
  for (std::size_t i = 1; i <= k; ++i) {
    for (std::size_t j = i + 1; j <= k; ++j) {
      parts.push_back(pa::ne(nm.sigma(i), nm.sigma(j)));
    }
  }
  return pa::land(std::move(parts));
}

Formula phi_delta(const Nfa& nfa, const LinExpr& from, const LinExpr& letter,
                  const LinExpr& to) {
  std::vector<Formula> alts;
  for (const auto& e : nfa.edges) {
    alts.push_back(pa::land({pa::eq(from, c(e.source)), pa::eq(letter, c(e.letter)),
                             pa::eq(to, c(e.target))}));
  }
  return pa::lor(std::move(alts));
}

Formula phi_states(const Nfa& nfa, const LinExpr& initial, const std::vector<LinExpr>& finals,
                   const Naming& nm) {
  const std::size_t k = nfa.monitored;
  std::vector<Formula> parts{pa::eq(nm.seg_source(0), initial)};
  std::vector<Formula> accept;
  for (const auto& f : finals) accept.push_back(pa::eq(nm.seg_target(k), f));
  parts.push_back(pa::lor(std::move(accept)));
  for (std::size_t i = 1; i <= k; ++i) {
    const Var p = nm.pad();
    parts.push_back(pa::implies(
        pa::ge(p, c(i)), pa::land({pa::eq(nm.seg_source(i - 1), nm.seg_target(i - 1)),
                                   pa::eq(nm.seg_target(i - 1), nm.seg_source(i))})));
    parts.push_back(pa::implies(
        pa::lt(p, c(i)), phi_delta(nfa, nm.seg_target(i - 1), c(nfa.plain) + nm.sigma(i),
                                   nm.seg_source(i))));
  }
  return pa::land(std::move(parts));
}

Formula phi_states(const Nfa& nfa, const Naming& nm) {
  std::vector<LinExpr> finals;
  for (std::size_t f : nfa.finals) finals.push_back(c(f));
  return phi_states(nfa, c(nfa.initial), finals, nm);
}

Formula phi_connected_flow(const Nfa& nfa, const std::vector<LinExpr>& flow, const LinExpr& s,
                           const LinExpr& t, std::size_t dist_segment, const Naming& nm) {
  if (flow.size() != nfa.edges.size()) {
    throw Error(ErrorKind::kDimension, "phi_connected_flow: one flow term per edge expected");
  }
  const auto m = c(nfa.states);
  std::vector<Formula> parts{pa::ge(s, 1), pa::le(s, m), pa::ge(t, 1), pa::le(t, m)};
  for (std::size_t q = 1; q <= nfa.states; ++q) {
    LinExpr in, out;
    std::vector<Formula> feeders;
    for (std::size_t e = 0; e < nfa.edges.size(); ++e) {
      const auto& edge = nfa.edges[e];
      if (edge.target == q) in += flow[e];
      if (edge.source == q) out += flow[e];
      if (edge.target == q && edge.source != q) {
        feeders.push_back(pa::land({pa::ge(flow[e], 1),
                                    pa::lt(nm.dist(dist_segment, edge.source),
                                           nm.dist(dist_segment, q))}));
      }
    }
    const auto qc = c(q);
    const Formula is_s = pa::eq(s, qc), not_s = pa::ne(s, qc);
    const Formula is_t = pa::eq(t, qc), not_t = pa::ne(t, qc);
    parts.push_back(pa::lor({pa::land({is_s, is_t, pa::eq(in, out)}),
                             pa::land({is_s, not_t, pa::eq(in + 1, out)}),
                             pa::land({not_s, is_t, pa::eq(in, out + 1)}),
                             pa::land({not_s, not_t, pa::eq(in, out)})}));
    parts.push_back(pa::implies(is_s, pa::eq(nm.dist(dist_segment, q), 0)));
    parts.push_back(
        pa::implies(pa::land({not_s, pa::ge(in, 1)}), pa::lor(std::move(feeders))));
  }
  return pa::land(std::move(parts));
}

Formula phi_flows(const Nfa& nfa, const Naming& nm) {
  const std::size_t k = nfa.monitored;
  const Var p = nm.pad();
  std::vector<Formula> parts;
  for (std::size_t i = 0; i <= k; ++i) {
    std::vector<LinExpr> flow;
    std::vector<Formula> zero;
    for (std::size_t e = 0; e < nfa.edges.size(); ++e) {
      flow.push_back(nm.flow(i, e));
      zero.push_back(pa::eq(nm.flow(i, e), 0));
    }
    parts.push_back(pa::implies(pa::gt(p, c(i)), pa::land(std::move(zero))));
    std::vector<Formula> live{
        phi_connected_flow(nfa, flow, nm.seg_source(i), nm.seg_target(i), i, nm)};
    for (std::size_t j = 1; j <= i; ++j) {
      for (std::size_t e = 0; e < nfa.edges.size(); ++e) {
        const std::size_t a = nfa.edges[e].letter;
        if (a <= nfa.plain) continue;
        live.push_back(
            pa::implies(pa::eq(nm.sigma(j), c(a - nfa.plain)), pa::eq(nm.flow(i, e), 0)));
      }
    }
    parts.push_back(pa::implies(pa::le(p, c(i)), pa::land(std::move(live))));
  }
  return pa::land(std::move(parts));
}

Formula psi_prime(const Nfa& nfa, const Naming& nm) {
  std::vector<Var> inner;
  Formula core = psi_core(nfa, nm.init_state(), {LinExpr(nm.final_state())}, nm, inner);
  return pa::exists(std::move(inner), core);
}

Formula psi_gpi(const Nfa& nfa, const Naming& nm) {
  std::vector<Var> inner{nm.pad()};
  std::vector<LinExpr> finals;
  for (std::size_t f : nfa.finals) finals.push_back(c(f));
  Formula core = psi_core(nfa, c(nfa.initial), finals, nm, inner);
  return pa::exists(std::move(inner), core);
}

Formula phi_counters(const Machine& m, const std::vector<LinExpr>& v,
                     const std::vector<LinExpr>& w, const Naming& nm) {
  const parikh::EffectMatrix b = parikh::effect_matrix(m);
  const std::size_t d = m.dimension();
  const std::size_t n = m.plain_letter_count();
  if (v.size() != d || w.size() != d) {
    throw Error(ErrorKind::kDimension, "phi_counters: counter vectors must have dimension d");
  }
  const Var p = nm.pad();
  std::vector<Var> inner;
  std::vector<Formula> parts;
  for (std::size_t i = 1; i <= d; ++i) {
    for (std::size_t j = 0; j <= d; ++j) inner.push_back(nm.beta(i, j));
    inner.push_back(nm.nu(i));
    parts.push_back(pa::eq(nm.beta(i, 0), 0));
    parts.push_back(pa::eq(w[i - 1], LinExpr(nm.beta(i, d)) + nm.nu(i)));
    for (std::size_t pos = 1; pos <= d; ++pos) {
      std::vector<Formula> body;
      for (std::size_t j = 1; j <= d; ++j) {
        LinExpr next = nm.beta(i, j - 1);
        if (pos <= j) {
          for (std::size_t a = 1; a <= n; ++a) {
            next += b.at(i - 1, a - 1) * LinExpr(nm.alpha(j, a));
          }
        }
        body.push_back(pa::eq(nm.beta(i, j), next));
      }
      body.push_back(pa::implies(pa::lt(p, c(pos)), pa::eq(nm.nu(i), 0)));
      body.push_back(pa::implies(pa::ge(p, c(pos)), pa::eq(nm.nu(i), v[i - 1])));
      parts.push_back(pa::implies(pa::eq(nm.sigma(pos), c(i)), pa::land(std::move(body))));
    }
  }
  return pa::exists(std::move(inner), pa::land(std::move(parts)));
}

Formula phi_reach(const Machine& m, const LinExpr& q_init, const LinExpr& q_final,
                  const std::vector<LinExpr>& v, const std::vector<LinExpr>& w,
                  const Naming& nm) {
  if (!m.is_normal_form()) {
    throw Error(ErrorKind::kClass, "phi_reach: machine is not in normal form");
  }
  const Nfa nfa = nfa_of(m, 0, {});
  std::vector<Var> inner;
  Formula core = psi_core(nfa, q_init, {q_final}, nm, inner);
  inner.insert(inner.begin(), nm.pad());
  return pa::exists(std::move(inner), pa::land({core, phi_counters(m, v, w, nm)}));
}

Formula phi_reach(const Machine& m, const Naming& nm) {
  std::vector<LinExpr> v, w;
  for (std::size_t i = 1; i <= m.dimension(); ++i) {
    v.push_back(counter_var(nm, "v", i));
    w.push_back(counter_var(nm, "w", i));
  }
  return phi_reach(m, nm.init_state(), nm.final_state(), v, w, nm);
}

Formula encode_query(const Machine& m, const Configuration& src, const Configuration& dst,
                     Mode mode) {
  const std::size_t d = m.dimension();
  if (src.counters.size() != d || dst.counters.size() != d) {
    throw Error(ErrorKind::kDimension, "encode_query: configuration dimension mismatch");
  }
  const Naming nm;
  const std::size_t k = m.monitored_letter_count();
  std::vector<Var> outer = alpha_vars(nm, k, m.plain_letter_count());
  const auto sg = sigma_vars(nm, k);
  outer.insert(outer.end(), sg.begin(), sg.end());
  std::vector<LinExpr> v, w;
  std::vector<Formula> target;
  for (std::size_t i = 1; i <= d; ++i) {
    const Var wi = counter_var(nm, "w", i);
    outer.push_back(wi);
    v.push_back(src.counters[i - 1]);
    w.push_back(wi);
    target.push_back(mode == Mode::kReach ? pa::eq(wi, dst.counters[i - 1])
                                          : pa::ge(wi, dst.counters[i - 1]));
  }
  Formula body = phi_reach(m, c(src.state + 1), c(dst.state + 1), v, w, nm);
  target.insert(target.begin(), body);
  return pa::exists(std::move(outer), pa::land(std::move(target)));
}

Formula reach_set_formula(const Machine& m, const Configuration& src, const std::vector<Var>& x,
                          const Naming& nm, std::size_t state_limit) {
  const std::size_t d = m.dimension();
  if (src.counters.size() != d || x.size() != d) {
    throw Error(ErrorKind::kDimension, "reach_set_formula: dimension mismatch");
  }
  const std::size_t k = m.monitored_letter_count();
  std::vector<Var> outer = alpha_vars(nm, k, m.plain_letter_count());
  const auto sg = sigma_vars(nm, k);
  outer.insert(outer.end(), sg.begin(), sg.end());
  outer.push_back(nm.final_state());
  std::vector<LinExpr> v(src.counters.begin(), src.counters.end());
  const std::size_t limit = state_limit == 0 ? m.state_count() : state_limit;
  Formula body = pa::land({phi_reach(m, c(src.state + 1), nm.final_state(), v, as_terms(x), nm),
                           pa::ge(nm.final_state(), 1), pa::le(nm.final_state(), c(limit))});
  return pa::exists(std::move(outer), body);
}

std::vector<Var> inclusion_vars(std::size_t d) {
  std::vector<Var> x;
  for (std::size_t i = 1; i <= d; ++i) x.push_back(pa::integer("x" + num(i)));
  return x;
}

Formula encode_inclusion(const Machine& a, const Configuration& src_a, const Machine& b,
                         const Configuration& src_b) {
  if (a.dimension() != b.dimension()) {
    throw Error(ErrorKind::kDimension, "encode_inclusion: machines differ in dimension");
  }
  const NormalizedMachine na = normalize(a);
  const NormalizedMachine nb = normalize(b);
  const auto x = inclusion_vars(a.dimension());
  Formula psi_a = reach_set_formula(na.machine, src_a, x, Naming{"A."}, a.state_count());
  Formula psi_b = reach_set_formula(nb.machine, src_b, x, Naming{"B."}, b.state_count());
  return pa::to_prenex_pi2(pa::lnot(pa::exists(x, pa::land({psi_a, pa::lnot(psi_b)}))));
}

Reduced reduce(const Machine& m, const Configuration& src, const Configuration& dst,
               Direction direction) {
  if (m.machine_class() == MachineClass::kZRM || m.has_general_affine()) {
    throw Error(ErrorKind::kClass, "reduce: machine is not a reset/add machine");
  }
  const std::size_t d = m.dimension();
  if (src.counters.size() != d || dst.counters.size() != d) {
    throw Error(ErrorKind::kDimension, "reduce: configuration dimension mismatch");
  }
  if (direction == Direction::kReachToCover) {
    const std::size_t d2 = 2 * d;
    std::vector<Letter> letters;
    bool resets = false;
    for (const auto& l : m.letters()) {
      std::vector<Int> diag(d, 1);
      Vector offset(d, 0);
      if (const auto* add = std::get_if<Add>(&l.effect)) {
        offset = add->offset;
      } else if (const auto* r = std::get_if<Reset>(&l.effect)) {
        diag[r->coord] = 0;
      } else {
        const auto& f = std::get<Affine>(l.effect);
        for (std::size_t i = 0; i < d; ++i) diag[i] = f.matrix[i * d + i];
        offset = f.offset;
      }
      Vector off2(d2, 0);
      for (std::size_t i = 0; i < d; ++i) off2[i] = offset[i], off2[d + i] = -offset[i];
      const bool identity = std::all_of(diag.begin(), diag.end(), [](Int x) { return x == 1; });
      std::string name = l.name;
      if (l.monitored) name = "reset" + num(std::get<Reset>(l.effect).coord + 1);
      if (identity) {
        letters.push_back({name, Add{off2}, false});
      } else {
        resets = true;
        Affine f{std::vector<Int>(d2 * d2, 0), off2};
        for (std::size_t i = 0; i < d; ++i) {
          f.matrix[i * d2 + i] = diag[i];
          f.matrix[(d + i) * d2 + d + i] = diag[i];
        }
        letters.push_back({name, f, false});
      }
    }
    MachineClass cls = m.machine_class();
    if (resets) cls = MachineClass::kZVASSR;
    Machine out(m.name() + ".cover", cls, d2, m.states(), std::move(letters), m.transitions());
    auto twin = [d](const Configuration& cfg) {
      Configuration r{cfg.state, cfg.counters};
      for (std::size_t i = 0; i < d; ++i) r.counters.push_back(-cfg.counters[i]);
      return r;
    };
    return {std::move(out), twin(src), twin(dst)};
  }

  std::vector<Letter> letters;
  const std::size_t n = m.plain_letter_count();
  for (std::size_t a = 0; a < n; ++a) letters.push_back(m.letter(a));
  std::set<std::string> names;
  for (const auto& l : m.letters()) names.insert(l.name);
  for (std::size_t i = 0; i < d; ++i) {
    std::string name = "dec" + num(i + 1);
    while (names.count(name)) name += "'";
    Vector off(d, 0);
    off[i] = -1;
    letters.push_back({name, Add{off}, false});
  }
  for (std::size_t a = n; a < m.letters().size(); ++a) letters.push_back(m.letter(a));
  std::vector<Transition> transitions;
  for (const auto& t : m.transitions()) {
    transitions.push_back({t.source, t.letter < n ? t.letter : t.letter + d, t.target});
  }
  for (std::size_t i = 0; i < d; ++i) transitions.push_back({dst.state, n + i, dst.state});
  Machine out(m.name() + ".reach", m.machine_class(), d, m.states(), std::move(letters),
              std::move(transitions));
  return {std::move(out), src, dst};
}

std::vector<PsiSizeRow> psi_size_sweep(const Machine& m, std::size_t k_max) {
  const NormalizedMachine nm = normalize(m);
  std::vector<StateId> all(nm.machine.state_count());
  for (StateId q = 0; q < all.size(); ++q) all[q] = q;
  Nfa base = nfa_of(nm.machine, 0, all);
  std::vector<Nfa::Edge> plain;
  for (const auto& e : base.edges) {
    if (e.letter <= base.plain) plain.push_back(e);
  }
  base.edges = std::move(plain);
  std::vector<PsiSizeRow> rows;
  for (std::size_t k = 1; k <= k_max; ++k) {
    Nfa nfa = base;
    nfa.monitored = k;
    rows.push_back({k, nfa.states + nfa.edges.size(),
                    pa::size(psi_gpi(nfa), pa::SizeConvention::kUnary)});
  }
  return rows;
}

}  // namespace zvass::encode

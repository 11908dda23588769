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

#include "model.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>
#include <unordered_set>

namespace zvass {
namespace {

Int checked_add(Int a, Int b) {
  Int r = 0;
  if (__builtin_add_overflow(a, b, &r)) {
    throw Error(ErrorKind::kOverflow, "counter overflow");
  }
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r = 0;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw Error(ErrorKind::kOverflow, "counter overflow");
  }
  return r;
}

void check_transform(const Transform& t, std::size_t dim,
                     const std::string& letter) {
  const bool ok = std::visit(
      [dim](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Add>) {
          return x.offset.size() == dim;
        } else if constexpr (std::is_same_v<T, Reset>) {
          return x.coord < dim;
        } else {
          return x.matrix.size() == dim * dim && x.offset.size() == dim;
        }
      },
      t);
  if (!ok) {
    throw Error(ErrorKind::kDimension,
                "effect of letter '" + letter + "' does not match dimension " +
                    std::to_string(dim));
  }
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::size_t transform_dimension(const Transform& t) {
  if (const auto* a = std::get_if<Add>(&t)) return a->offset.size();
  if (const auto* f = std::get_if<Affine>(&t)) return f->offset.size();
  return 0;
}

Vector apply(const Transform& t, const Vector& v) {
  if (const auto* a = std::get_if<Add>(&t)) {
    if (a->offset.size() != v.size()) {
      throw Error(ErrorKind::kDimension, "apply: dimension mismatch");
    }
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      out[i] = checked_add(v[i], a->offset[i]);
    }
    return out;
  }
  if (const auto* r = std::get_if<Reset>(&t)) {
    if (r->coord >= v.size()) {
      throw Error(ErrorKind::kDimension, "apply: reset coordinate out of range");
    }
    Vector out = v;
    out[r->coord] = 0;
    return out;
  }
  const auto& f = std::get<Affine>(t);
  const std::size_t d = v.size();
  if (f.offset.size() != d || f.matrix.size() != d * d) {
    throw Error(ErrorKind::kDimension, "apply: dimension mismatch");
  }
  Vector out(d);
  for (std::size_t i = 0; i < d; ++i) {
    Int acc = f.offset[i];
    for (std::size_t j = 0; j < d; ++j) {
      acc = checked_add(acc, checked_mul(f.matrix[i * d + j], v[j]));
    }
    out[i] = acc;
  }
  return out;
}

bool is_reset_add(const Transform& t, std::size_t dim) {
  if (std::holds_alternative<Add>(t) || std::holds_alternative<Reset>(t)) {
    return true;
  }
  const auto& f = std::get<Affine>(t);
  if (f.matrix.size() != dim * dim) return false;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      const Int e = f.matrix[i * dim + j];
      if (i != j && e != 0) return false;
      if (i == j && e != 0 && e != 1) return false;
    }
  }
  return true;
}

std::string_view class_name(MachineClass c) {
  switch (c) {
    case MachineClass::kZRM: return "zrm";
    case MachineClass::kZVASSR: return "zvassr";
    case MachineClass::kZVASS: return "zvass";
    case MachineClass::kZVAS: return "zvas";
  }
  return "?";
}

std::optional<MachineClass> parse_class(std::string_view s) {
  if (s == "zrm") return MachineClass::kZRM;
  if (s == "zvassr") return MachineClass::kZVASSR;
  if (s == "zvass") return MachineClass::kZVASS;
  if (s == "zvas") return MachineClass::kZVAS;
  return std::nullopt;
}

Machine::Machine(std::string name, MachineClass cls, std::size_t dim,
                 std::vector<std::string> states, std::vector<Letter> letters,
                 std::vector<Transition> transitions)
    : name_(std::move(name)),
      class_(cls),
      dim_(dim),
      states_(std::move(states)),
      letters_(std::move(letters)),
      transitions_(std::move(transitions)) {
  if (dim_ == 0) throw Error(ErrorKind::kInvalidMachine, "dimension must be > 0");
  if (states_.empty()) throw Error(ErrorKind::kInvalidMachine, "no states");
  std::unordered_set<std::string> seen;
  for (const auto& s : states_) {
    if (!seen.insert(s).second) {
      throw Error(ErrorKind::kInvalidMachine, "duplicate state '" + s + "'");
    }
  }
  seen.clear();
  bool in_monitored = false;
  for (const auto& l : letters_) {
    if (!seen.insert(l.name).second) {
      throw Error(ErrorKind::kInvalidMachine,
                  "duplicate letter '" + l.name + "'");
    }
    check_transform(l.effect, dim_, l.name);
    if (l.monitored) {
      in_monitored = true;
      if (!std::holds_alternative<Reset>(l.effect)) {
        throw Error(ErrorKind::kInvalidMachine,
                    "monitored letter '" + l.name + "' must be a reset");
      }
    } else {
      if (in_monitored) {
        throw Error(ErrorKind::kInvalidMachine,
                    "plain letters must precede monitored letters");
      }
      ++plain_count_;
    }
    switch (class_) {
      case MachineClass::kZVAS:
      case MachineClass::kZVASS:
        if (!std::holds_alternative<Add>(l.effect)) {
          throw Error(ErrorKind::kClass, "letter '" + l.name +
                                             "' is not an addition in class " +
                                             std::string(class_name(class_)));
        }
        break;
      case MachineClass::kZVASSR:
        if (!is_reset_add(l.effect, dim_)) {
          throw Error(ErrorKind::kClass,
                      "letter '" + l.name +
                          "' is not a reset/add transform in class zvassr");
        }
        break;
      case MachineClass::kZRM:
        break;
    }
  }
  if (class_ == MachineClass::kZVAS && states_.size() != 1) {
    throw Error(ErrorKind::kClass, "class zvas requires exactly one state");
  }
  for (const auto& t : transitions_) {
    if (t.source >= states_.size() || t.target >= states_.size() ||
        t.letter >= letters_.size()) {
      throw Error(ErrorKind::kInvalidMachine, "transition out of range");
    }
  }
}

std::optional<StateId> Machine::find_state(std::string_view name) const {
  for (StateId q = 0; q < states_.size(); ++q) {
    if (states_[q] == name) return q;
  }
  return std::nullopt;
}

std::optional<LetterId> Machine::find_letter(std::string_view name) const {
  for (LetterId a = 0; a < letters_.size(); ++a) {
    if (letters_[a].name == name) return a;
  }
  return std::nullopt;
}

bool Machine::is_normal_form() const {
  if (class_ == MachineClass::kZRM) return false;
  for (std::size_t a = 0; a < plain_count_; ++a) {
    if (!std::holds_alternative<Add>(letters_[a].effect)) return false;
  }
  if (monitored_letter_count() != dim_) return false;
  for (std::size_t i = 0; i < dim_; ++i) {
    const Letter& l = letters_[plain_count_ + i];
    const auto* r = std::get_if<Reset>(&l.effect);
    if (r == nullptr || r->coord != i || l.name != "r" + std::to_string(i + 1)) {
      return false;
    }
  }
  return true;
}

bool Machine::has_general_affine() const {
  return std::any_of(letters_.begin(), letters_.end(), [this](const Letter& l) {
    return !is_reset_add(l.effect, dim_);
  });
}

std::vector<Configuration> step(const Machine& m, const Configuration& c,
                                LetterId letter) {
  std::vector<Configuration> out;
  for (const auto& t : m.transitions()) {
    if (t.source == c.state && t.letter == letter) {
      out.push_back({t.target, zvass::apply(m.letter(letter).effect, c.counters)});
    }
  }
  return out;
}

std::vector<Configuration> run(const Machine& m, const Configuration& c,
                               const std::vector<LetterId>& word) {
  std::set<Configuration> current{c};
  for (LetterId a : word) {
    std::set<Configuration> next;
    for (const auto& cfg : current) {
      for (auto& succ : step(m, cfg, a)) next.insert(std::move(succ));
    }
    current = std::move(next);
    if (current.empty()) break;
  }
  return {current.begin(), current.end()};
}

Run fire(const Machine& m, const Configuration& start,
         const std::vector<TransitionId>& transitions) {
  Run r{start, {}};
  Configuration cur = start;
  for (TransitionId id : transitions) {
    const Transition& t = m.transition(id);
    if (t.source != cur.state) {
      throw Error(ErrorKind::kInvalidRun,
                  "transition " + std::to_string(id) + " does not leave state " +
                      m.state_name(cur.state));
    }
    cur.counters = zvass::apply(m.letter(t.letter).effect, cur.counters);
    cur.state = t.target;
    r.steps.push_back({id, cur});
  }
  return r;
}

bool validate_run(const Machine& m, const Run& r) {
  if (r.start.state >= m.state_count() ||
      r.start.counters.size() != m.dimension()) {
    return false;
  }
  Configuration cur = r.start;
  for (const auto& s : r.steps) {
    if (s.transition >= m.transitions().size()) return false;
    const Transition& t = m.transition(s.transition);
    if (t.source != cur.state) return false;
    Configuration next{t.target, zvass::apply(m.letter(t.letter).effect, cur.counters)};
    if (next != s.after) return false;
    cur = std::move(next);
  }
  return true;
}

std::vector<LetterId> word_of(const Machine& m, const Run& r) {
  std::vector<LetterId> w;
  w.reserve(r.steps.size());
  for (const auto& s : r.steps) w.push_back(m.transition(s.transition).letter);
  return w;
}

Configuration parse_configuration(const Machine& m, std::string_view text) {
  const auto colon = text.find(':');
  const std::string state =
      trim(colon == std::string_view::npos ? text : text.substr(0, colon));
  const auto q = m.find_state(state);
  if (!q) {
    throw Error(ErrorKind::kArgument, "unknown state '" + state + "'");
  }
  Configuration c{*q, {}};
  if (colon != std::string_view::npos) {
    std::string rest(text.substr(colon + 1));
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const std::string tok = trim(item);
      Int value = 0;
      const auto* first = tok.data();
      const auto* last = tok.data() + tok.size();
      auto [ptr, ec] = std::from_chars(first, last, value);
      if (tok.empty() || ec != std::errc() || ptr != last) {
        throw Error(ErrorKind::kArgument, "bad counter value '" + tok + "'");
      }
      c.counters.push_back(value);
    }
  }
  if (c.counters.size() != m.dimension()) {
    throw Error(ErrorKind::kDimension,
                "configuration '" + std::string(text) + "' has " +
                    std::to_string(c.counters.size()) + " counters, machine has " +
                    std::to_string(m.dimension()));
  }
  return c;
}

std::string format_vector(const Vector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

std::string format_configuration(const Machine& m, const Configuration& c) {
  return m.state_name(c.state) + ":" + format_vector(c.counters);
}

NormalizedMachine normalize(const Machine& m) {
  if (m.machine_class() == MachineClass::kZRM || m.has_general_affine()) {
    throw Error(ErrorKind::kClass,
                "normalize: machine '" + m.name() + "' is not a reset/add machine");
  }
  const std::size_t d = m.dimension();

  std::set<std::string> reserved;
  for (std::size_t i = 1; i <= d; ++i) reserved.insert("r" + std::to_string(i));
  std::set<std::string> used_names;
  auto fresh_letter_name = [&](std::string base) {
    while (reserved.count(base) || used_names.count(base)) base += "'";
    used_names.insert(base);
    return base;
  };

  // Per original letter: resets to perform, then the plain Add letter (if any).
  struct Chain {
    std::vector<std::size_t> resets;
    std::optional<LetterId> add;
  };
  std::vector<Letter> letters;
  std::vector<Chain> chains(m.letters().size());
  for (LetterId a = 0; a < m.letters().size(); ++a) {
    const Letter& l = m.letter(a);
    Chain& ch = chains[a];
    if (const auto* add = std::get_if<Add>(&l.effect)) {
      ch.add = letters.size();
      letters.push_back({fresh_letter_name(l.name), *add, false});
    } else if (const auto* r = std::get_if<Reset>(&l.effect)) {
      ch.resets.push_back(r->coord);
    } else {
      const auto& f = std::get<Affine>(l.effect);
      for (std::size_t i = 0; i < d; ++i) {
        if (f.matrix[i * d + i] == 0) ch.resets.push_back(i);
      }
      const bool zero_offset =
          std::all_of(f.offset.begin(), f.offset.end(), [](Int x) { return x == 0; });
      if (ch.resets.empty() || !zero_offset) {
        const std::string base = ch.resets.empty() ? l.name : l.name + ".add";
        ch.add = letters.size();
        letters.push_back({fresh_letter_name(base), Add{f.offset}, false});
      }
    }
  }
  const std::size_t n = letters.size();
  for (std::size_t i = 0; i < d; ++i) {
    letters.push_back({"r" + std::to_string(i + 1), Reset{i}, true});
  }

  std::vector<std::string> states = m.states();
  std::set<std::string> state_names(states.begin(), states.end());
  std::vector<Transition> transitions;
  std::vector<TransitionOrigin> origin;
  for (TransitionId id = 0; id < m.transitions().size(); ++id) {
    const Transition& t = m.transition(id);
    const Chain& ch = chains[t.letter];
    std::vector<LetterId> links;
    for (std::size_t i : ch.resets) links.push_back(n + i);
    if (ch.add) links.push_back(*ch.add);
    StateId cur = t.source;
    for (std::size_t j = 0; j < links.size(); ++j) {
      StateId next = t.target;
      if (j + 1 < links.size()) {
        std::string name =
            m.state_name(t.source) + "." + std::to_string(id) + "." + std::to_string(j + 1);
        while (state_names.count(name)) name += "'";
        state_names.insert(name);
        states.push_back(name);
        next = states.size() - 1;
      }
      transitions.push_back({cur, links[j], next});
      origin.push_back({id, j + 1 == links.size()});
      cur = next;
    }
  }
  return {Machine(m.name(), MachineClass::kZVASSR, d, std::move(states),
                  std::move(letters), std::move(transitions)),
          std::move(origin)};
}

Run lift_run(const Machine& original, const NormalizedMachine& nm,
             const Run& normalized_run) {
  if (normalized_run.start.state >= original.state_count()) {
    throw Error(ErrorKind::kInvalidRun, "lift_run: run starts in a fresh state");
  }
  std::vector<TransitionId> ids;
  bool open = false;
  for (const auto& s : normalized_run.steps) {
    const TransitionOrigin& o = nm.origin.at(s.transition);
    open = !o.closes_chain;
    if (o.closes_chain) ids.push_back(o.original);
  }
  if (open) {
    throw Error(ErrorKind::kInvalidRun, "lift_run: run ends inside a chain");
  }
  return fire(original, normalized_run.start, ids);
}

}  // namespace zvass

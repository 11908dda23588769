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

#include "machine_io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace zvass {
namespace {

class LineError {
 public:
  LineError(std::string_view source, std::size_t line)
      : prefix_(std::string(source) + ":" + std::to_string(line) + ": ") {}
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::kParse, prefix_ + msg);
  }

 private:
  std::string prefix_;
};

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ' ' || c == '\t' || c == '\r') {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else if (c == ';') {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
      out.emplace_back(";");
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

Int to_int(const std::string& tok, const LineError& err) {
  Int v = 0;
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), last, v);
  if (tok.empty() || ec != std::errc() || ptr != last) {
    err.fail("expected integer, got '" + tok + "'");
  }
  return v;
}

}  // namespace

Machine parse_machine(std::string_view text, std::string_view source) {
  std::string name = "unnamed";
  std::optional<MachineClass> cls;
  std::optional<std::size_t> dim;
  std::vector<std::string> states;
  std::vector<std::string> letter_names;
  std::map<std::string, std::pair<Transform, std::size_t>> effects;
  struct RawTransition {
    std::string source, letter, target;
    std::size_t line;
  };
  std::vector<RawTransition> raw;

  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const LineError err(source, lineno);
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    auto tok = tokenize(line);
    if (tok.empty()) continue;
    const std::string& kw = tok[0];
    if (kw == "machine") {
      if (tok.size() != 2) err.fail("expected 'machine <name>'");
      name = tok[1];
    } else if (kw == "class") {
      if (tok.size() != 2) err.fail("expected 'class <zrm|zvassr|zvass|zvas>'");
      cls = parse_class(tok[1]);
      if (!cls) err.fail("unknown class '" + tok[1] + "'");
    } else if (kw == "dim") {
      if (tok.size() != 2) err.fail("expected 'dim <d>'");
      const Int d = to_int(tok[1], err);
      if (d <= 0) err.fail("dimension must be positive");
      dim = static_cast<std::size_t>(d);
    } else if (kw == "states") {
      states.insert(states.end(), tok.begin() + 1, tok.end());
    } else if (kw == "letters") {
      letter_names.insert(letter_names.end(), tok.begin() + 1, tok.end());
    } else if (kw == "effect") {
      if (!dim) err.fail("'dim' must precede effects");
      if (tok.size() < 3) err.fail("expected 'effect <letter> <kind> ...'");
      const std::size_t d = *dim;
      const std::string& kind = tok[2];
      Transform t;
      if (kind == "add") {
        if (tok.size() != 3 + d) err.fail("add needs " + std::to_string(d) + " integers");
        Vector b;
        for (std::size_t i = 0; i < d; ++i) b.push_back(to_int(tok[3 + i], err));
        t = Add{std::move(b)};
      } else if (kind == "reset") {
        if (tok.size() != 4) err.fail("reset needs one coordinate");
        const Int i = to_int(tok[3], err);
        if (i < 1 || static_cast<std::size_t>(i) > d) {
          err.fail("reset coordinate out of range 1.." + std::to_string(d));
        }
        t = Reset{static_cast<std::size_t>(i - 1)};
      } else if (kind == "affine") {
        if (tok.size() != 3 + d * d + 1 + d || tok[3 + d * d] != ";") {
          err.fail("affine needs " + std::to_string(d * d) + " matrix entries, ';', " +
                   std::to_string(d) + " offsets");
        }
        Affine f;
        for (std::size_t i = 0; i < d * d; ++i) f.matrix.push_back(to_int(tok[3 + i], err));
        for (std::size_t i = 0; i < d; ++i) {
          f.offset.push_back(to_int(tok[4 + d * d + i], err));
        }
        t = std::move(f);
      } else {
        err.fail("unknown effect kind '" + kind + "'");
      }
      if (!effects.emplace(tok[1], std::make_pair(std::move(t), lineno)).second) {
        err.fail("duplicate effect for letter '" + tok[1] + "'");
      }
    } else if (kw == "transition") {
      if (tok.size() != 4) err.fail("expected 'transition <state> <letter> <state>'");
      raw.push_back({tok[1], tok[2], tok[3], lineno});
    } else {
      err.fail("unknown directive '" + kw + "'");
    }
  }
  const LineError eof(source, lineno);
  if (!cls) eof.fail("missing 'class'");
  if (!dim) eof.fail("missing 'dim'");

  std::vector<Letter> letters;
  for (const auto& l : letter_names) {
    auto it = effects.find(l);
    if (it == effects.end()) eof.fail("letter '" + l + "' has no effect");
    letters.push_back({l, it->second.first, false});
  }
  for (const auto& [l, eff] : effects) {
    bool declared = false;
    for (const auto& n : letter_names) declared = declared || n == l;
    if (!declared) {
      LineError(source, eff.second).fail("effect for undeclared letter '" + l + "'");
    }
  }
  if (*cls == MachineClass::kZVASSR) {
    for (std::size_t i = 0; i < *dim; ++i) {
      const std::string r = "r" + std::to_string(i + 1);
      if (effects.count(r)) {
        LineError(source, effects.at(r).second)
            .fail("'" + r + "' is an implicit monitored letter in class zvassr");
      }
      letters.push_back({r, Reset{i}, true});
    }
  }

  std::map<std::string, StateId> state_ids;
  for (StateId q = 0; q < states.size(); ++q) state_ids.emplace(states[q], q);
  std::map<std::string, LetterId> letter_ids;
  for (LetterId a = 0; a < letters.size(); ++a) letter_ids.emplace(letters[a].name, a);
  std::vector<Transition> transitions;
  for (const auto& r : raw) {
    const LineError err(source, r.line);
    auto s = state_ids.find(r.source);
    auto t = state_ids.find(r.target);
    auto a = letter_ids.find(r.letter);
    if (s == state_ids.end()) err.fail("unknown state '" + r.source + "'");
    if (t == state_ids.end()) err.fail("unknown state '" + r.target + "'");
    if (a == letter_ids.end()) err.fail("unknown letter '" + r.letter + "'");
    transitions.push_back({s->second, a->second, t->second});
  }
  try {
    return Machine(name, *cls, *dim, std::move(states), std::move(letters),
                   std::move(transitions));
  } catch (const Error& e) {
    eof.fail(e.what());
  }
}

Machine load_machine(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_machine(ss.str(), path);
}

std::string print_machine(const Machine& m) {
  std::ostringstream out;
  out << "machine " << m.name() << "\n";
  out << "class " << class_name(m.machine_class()) << "\n";
  out << "dim " << m.dimension() << "\n";
  out << "states";
  for (const auto& s : m.states()) out << " " << s;
  out << "\n";
  // Implicit r1..rd of class zvassr are not written back.
  const bool implicit = m.machine_class() == MachineClass::kZVASSR;
  std::vector<LetterId> written;
  for (LetterId a = 0; a < m.letters().size(); ++a) {
    if (!(implicit && m.letter(a).monitored)) written.push_back(a);
  }
  if (!written.empty()) {
    out << "letters";
    for (LetterId a : written) out << " " << m.letter(a).name;
    out << "\n";
  }
  for (LetterId a : written) {
    const Letter& l = m.letter(a);
    out << "effect " << l.name;
    if (const auto* add = std::get_if<Add>(&l.effect)) {
      out << " add";
      for (Int x : add->offset) out << " " << x;
    } else if (const auto* r = std::get_if<Reset>(&l.effect)) {
      out << " reset " << r->coord + 1;
    } else {
      const auto& f = std::get<Affine>(l.effect);
      out << " affine";
      for (Int x : f.matrix) out << " " << x;
      out << " ;";
      for (Int x : f.offset) out << " " << x;
    }
    out << "\n";
  }
  for (const auto& t : m.transitions()) {
    out << "transition " << m.state_name(t.source) << " " << m.letter(t.letter).name << " "
        << m.state_name(t.target) << "\n";
  }
  return out.str();
}

}  // namespace zvass

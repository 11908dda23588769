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

#include "report.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace zvass::report {
namespace {

using nlohmann::json;

json config_json(const Machine& m, const Configuration& c) {
  return {{"state", m.state_name(c.state)}, {"counters", c.counters}};
}

void check_replay(const Machine& m, const Run& r) {
  if (!validate_run(m, r)) throw Error(ErrorKind::kWitness, "witness does not replay on the machine");
}

}  // namespace

std::string render(const Machine& m, const backend::Verdict& v, Format format) {
  if (v.witness) check_replay(m, *v.witness);
  if (format == Format::kJson) {
    json out = {{"schema", kSchemaVersion}, {"answer", std::string(backend::answer_name(v.answer))}};
    if (v.witness) {
      json steps = json::array({config_json(m, v.witness->start)});
      for (const auto& s : v.witness->steps) {
        json c = config_json(m, s.after);
        c["letter"] = m.letter(m.transition(s.transition).letter).name;
        steps.push_back(std::move(c));
      }
      out["witness"] = std::move(steps);
    } else {
      out["witness"] = nullptr;
    }
    out["counterexample"] = v.counterexample ? json(*v.counterexample) : json(nullptr);
    out["stats"] = json(v.stats);
    if (!v.reason.empty()) out["reason"] = v.reason;
    return out.dump() + "\n";
  }
  std::ostringstream out;
  out << backend::answer_name(v.answer) << "\n";
  if (!v.reason.empty()) out << "reason: " << v.reason << "\n";
  if (v.witness) {
    out << "witness (" << v.witness->length() << " steps):\n";
    out << "  " << format_configuration(m, v.witness->start) << "\n";
    for (const auto& s : v.witness->steps) {
      out << "  --" << m.letter(m.transition(s.transition).letter).name << "--> "
          << format_configuration(m, s.after) << "\n";
    }
  }
  if (v.counterexample) out << "counterexample: " << format_vector(*v.counterexample) << "\n";
  if (!v.stats.empty()) {
    out << "stats:";
    for (const auto& [k, n] : v.stats) out << " " << k << "=" << n;
    out << "\n";
  }
  return out.str();
}

std::string render_simulation(const Machine& m, const Configuration& start,
                              const std::vector<LetterId>& word, Format format) {
  std::vector<std::vector<Configuration>> sets{{start}};
  for (LetterId a : word) {
    std::vector<Configuration> next;
    for (const auto& c : sets.back()) {
      for (auto& n : step(m, c, a)) next.push_back(std::move(n));
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    sets.push_back(std::move(next));
  }
  if (format == Format::kJson) {
    json steps = json::array();
    for (const auto& set : sets) {
      json row = json::array();
      for (const auto& c : set) row.push_back(config_json(m, c));
      steps.push_back(std::move(row));
    }
    return json{{"schema", kSchemaVersion}, {"steps", std::move(steps)}}.dump() + "\n";
  }
  std::ostringstream out;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    out << (i == 0 ? std::string("start") : m.letter(word[i - 1]).name) << ":";
    if (sets[i].empty()) out << " (stuck)";
    for (const auto& c : sets[i]) out << " " << format_configuration(m, c);
    out << "\n";
  }
  return out.str();
}

}  // namespace zvass::report

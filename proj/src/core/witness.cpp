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

#include <algorithm>

#include "backend.hpp"

namespace zvass::backend {
namespace {

Int lookup(const pa::Assignment& model, const pa::Var& v) {
  auto it = model.find(v.name);
  return it == model.end() ? 0 : it->second;
}

StateId state_of(Int v, const Machine& m, const char* what) {
  if (v < 1 || static_cast<std::size_t>(v) > m.state_count()) {
    throw Error(ErrorKind::kWitness,
                std::string("model assigns ") + what + " = " + std::to_string(v) +
                    ", outside 1.." + std::to_string(m.state_count()));
  }
  return static_cast<StateId>(v - 1);
}

// Hierholzer on the multigraph with `counts[t]` copies of transition t.
std::vector<TransitionId> euler_path(const Machine& m, std::map<TransitionId, Int> counts,
                                     StateId s, StateId t, std::size_t segment) {
  std::vector<std::vector<TransitionId>> out(m.state_count());
  Int total = 0;
  for (const auto& [id, n] : counts) {
    if (n < 0) throw Error(ErrorKind::kWitness, "negative flow");
    if (n > 0) out[m.transition(id).source].push_back(id);
    total += n;
  }
  std::vector<std::size_t> cursor(m.state_count(), 0);
  struct Frame {
    StateId state;
    std::optional<TransitionId> via;
  };
  std::vector<Frame> stack{{s, std::nullopt}};
  std::vector<TransitionId> path;
  while (!stack.empty()) {
    const StateId q = stack.back().state;
    auto& cur = cursor[q];
    while (cur < out[q].size() && counts[out[q][cur]] == 0) ++cur;
    if (cur < out[q].size()) {
      const TransitionId id = out[q][cur];
      --counts[id];
      stack.push_back({m.transition(id).target, id});
    } else {
      if (stack.back().via) path.push_back(*stack.back().via);
      stack.pop_back();
    }
  }
  std::reverse(path.begin(), path.end());
  const std::string where = "segment " + std::to_string(segment);
  if (static_cast<Int>(path.size()) != total) {
    throw Error(ErrorKind::kWitness, where + ": flow is not connected to its source");
  }
  StateId q = s;
  for (TransitionId id : path) {
    if (m.transition(id).source != q) {
      throw Error(ErrorKind::kWitness, where + ": flow is not consistent");
    }
    q = m.transition(id).target;
  }
  if (q != t) throw Error(ErrorKind::kWitness, where + ": path does not end in t");
  return path;
}

}  // namespace

FlowWitness witness_from_model(const Machine& m, const pa::Assignment& model,
                               const encode::Naming& nm) {
  const std::size_t k = m.monitored_letter_count();
  FlowWitness w;
  const Int p = lookup(model, nm.pad());
  if (p < 0 || static_cast<std::size_t>(p) > k) {
    throw Error(ErrorKind::kWitness, "model assigns p outside 0..k");
  }
  w.p = static_cast<std::size_t>(p);
  for (std::size_t i = 1; i <= k; ++i) {
    const Int s = lookup(model, nm.sigma(i));
    if (s < 1 || static_cast<std::size_t>(s) > k) {
      throw Error(ErrorKind::kWitness, "model assigns sigma outside 1..k");
    }
    w.sigma.push_back(static_cast<std::size_t>(s));
  }
  w.counts.resize(k + 1);
  for (std::size_t i = 0; i <= k; ++i) {
    w.source.push_back(i < w.p ? 0 : state_of(lookup(model, nm.seg_source(i)), m, "s_i"));
    w.target.push_back(i < w.p ? 0 : state_of(lookup(model, nm.seg_target(i)), m, "t_i"));
    for (TransitionId e = 0; e < m.transitions().size(); ++e) {
      const Int x = lookup(model, nm.flow(i, e));
      if (x != 0) w.counts[i][e] = x;
    }
  }
  return w;
}

Run flows_to_run(const Machine& m, const FlowWitness& w, const Vector& start) {
  const std::size_t k = w.sigma.size();
  if (w.counts.size() != k + 1 || w.source.size() != k + 1 || w.target.size() != k + 1 ||
      w.p > k) {
    throw Error(ErrorKind::kWitness, "flow witness has inconsistent segment count");
  }
  const std::size_t n = m.plain_letter_count();
  std::vector<TransitionId> ids;
  for (std::size_t i = w.p; i <= k; ++i) {
    if (i > w.p) {
      const LetterId r = n + w.sigma[i - 1] - 1;
      std::optional<TransitionId> join;
      for (TransitionId id = 0; id < m.transitions().size() && !join; ++id) {
        const Transition& t = m.transition(id);
        if (t.source == w.target[i - 1] && t.letter == r && t.target == w.source[i]) join = id;
      }
      if (!join) {
        throw Error(ErrorKind::kWitness, "no " + m.letter(r).name + " transition joins segment " +
                                             std::to_string(i - 1) + " to segment " +
                                             std::to_string(i));
      }
      ids.push_back(*join);
    }
    const auto seg = euler_path(m, w.counts[i], w.source[i], w.target[i], i);
    ids.insert(ids.end(), seg.begin(), seg.end());
  }
  return fire(m, Configuration{w.source[w.p], start}, ids);
}

}  // namespace zvass::backend

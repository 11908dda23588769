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

#include "oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

namespace zvass::oracle {
namespace {

bool meets(const Configuration& c, const Configuration& dst, encode::Mode mode) {
  if (c.state != dst.state) return false;
  if (mode == encode::Mode::kReach) return c.counters == dst.counters;
  for (std::size_t i = 0; i < dst.counters.size(); ++i) {
    if (c.counters[i] < dst.counters[i]) return false;
  }
  return true;
}

std::optional<Configuration> successor(const Machine& m, const Configuration& c,
                                       const Transition& t) {
  if (t.source != c.state) return std::nullopt;
  try {
    return Configuration{t.target, zvass::apply(m.letter(t.letter).effect, c.counters)};
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kOverflow) return std::nullopt;
    throw;
  }
}

std::set<Vector> vectors_of(const std::set<Configuration>& cs) {
  std::set<Vector> out;
  for (const auto& c : cs) out.insert(c.counters);
  return out;
}

}  // namespace

BoundedAnswer bfs(const Machine& m, const Configuration& src, const Configuration& dst,
                  encode::Mode mode, std::size_t max_len) {
  BoundedAnswer ans;
  struct Node {
    Configuration config;
    std::size_t parent;
    TransitionId via;
  };
  std::vector<Node> nodes{{src, 0, 0}};
  std::set<Configuration> seen{src};
  std::size_t layer_begin = 0;
  std::optional<std::size_t> hit;
  if (meets(src, dst, mode)) hit = 0;
  for (std::size_t depth = 0; !hit && depth < max_len; ++depth) {
    const std::size_t layer_end = nodes.size();
    if (layer_begin == layer_end) break;
    for (std::size_t i = layer_begin; i < layer_end && !hit; ++i) {
      ++ans.explored;
      for (TransitionId id = 0; id < m.transitions().size() && !hit; ++id) {
        auto next = successor(m, nodes[i].config, m.transition(id));
        if (!next || !seen.insert(*next).second) continue;
        nodes.push_back({*next, i, id});
        if (meets(*next, dst, mode)) hit = nodes.size() - 1;
      }
    }
    layer_begin = layer_end;
  }
  if (!hit) return ans;
  std::vector<TransitionId> ids;
  for (std::size_t i = *hit; i != 0; i = nodes[i].parent) ids.push_back(nodes[i].via);
  std::reverse(ids.begin(), ids.end());
  Run run = fire(m, src, ids);
  if (!validate_run(m, run) || !meets(run.end(), dst, mode)) {
    throw Error(ErrorKind::kWitness, "bfs: witness fails simulation");
  }
  ans.status = BoundedAnswer::Status::kFound;
  ans.witness = std::move(run);
  return ans;
}

std::set<Configuration> reach_set_bounded(const Machine& m, const Configuration& src,
                                          std::size_t max_len) {
  std::set<Configuration> seen{src};
  std::vector<Configuration> frontier{src};
  for (std::size_t depth = 0; depth < max_len && !frontier.empty(); ++depth) {
    std::vector<Configuration> next_frontier;
    for (const auto& c : frontier) {
      for (const auto& t : m.transitions()) {
        auto next = successor(m, c, t);
        if (next && seen.insert(*next).second) next_frontier.push_back(*next);
      }
    }
    frontier = std::move(next_frontier);
  }
  return seen;
}

BoundedAnswer incl_counterexample_bounded(const Machine& a, const Configuration& src_a,
                                          const Machine& b, const Configuration& src_b,
                                          std::size_t max_len_a, std::size_t max_len_b,
                                          const backend::SolverConfig* confirm) {
  if (a.dimension() != b.dimension()) {
    throw Error(ErrorKind::kDimension, "inclusion: machines differ in dimension");
  }
  const auto ra = reach_set_bounded(a, src_a, max_len_a);
  const auto rb = vectors_of(reach_set_bounded(b, src_b, max_len_b));
  BoundedAnswer ans;
  ans.explored = ra.size() + rb.size();
  std::vector<Vector> candidates;
  for (const auto& v : vectors_of(ra)) {
    if (!rb.count(v)) candidates.push_back(v);
  }
  auto norm = [](const Vector& v) {
    Int s = 0;
    for (Int x : v) s += std::llabs(x);
    return s;
  };
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](const Vector& x, const Vector& y) { return norm(x) < norm(y); });
  if (candidates.empty()) return ans;
  if (!confirm) {
    ans.status = BoundedAnswer::Status::kFound;
    ans.vector = candidates.front();
    return ans;
  }
  for (const auto& v : candidates) {
    if (backend::confirm_non_membership(b, src_b, v, *confirm) == backend::Answer::kYes) {
      ans.status = BoundedAnswer::Status::kFound;
      ans.vector = v;
      ans.confirmed = true;
      return ans;
    }
  }
  return ans;
}

}  // namespace zvass::oracle

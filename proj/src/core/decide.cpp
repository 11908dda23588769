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

#include "backend.hpp"

namespace zvass::backend {
namespace {

void require_decidable(const Machine& m) {
  if (m.has_general_affine()) {
    throw Error(ErrorKind::kClass,
                "machine '" + m.name() + "' has general affine transforms; only simulation is supported");
  }
}

void check_config(const Machine& m, const Configuration& c, const char* what) {
  if (c.state >= m.state_count() || c.counters.size() != m.dimension()) {
    throw Error(ErrorKind::kDimension,
                std::string(what) + " configuration does not fit machine '" + m.name() + "'");
  }
}

bool target_met(const Configuration& end, const Configuration& dst, encode::Mode mode) {
  if (end.state != dst.state) return false;
  for (std::size_t i = 0; i < dst.counters.size(); ++i) {
    const bool ok = mode == encode::Mode::kReach ? end.counters[i] == dst.counters[i]
                                                 : end.counters[i] >= dst.counters[i];
    if (!ok) return false;
  }
  return true;
}

Answer answer_of(Status s) {
  switch (s) {
    case Status::kSat: return Answer::kYes;
    case Status::kUnsat: return Answer::kNo;
    case Status::kUnknown: return Answer::kUnknown;
  }
  return Answer::kUnknown;
}

}  // namespace

std::string_view answer_name(Answer a) {
  switch (a) {
    case Answer::kYes: return "yes";
    case Answer::kNo: return "no";
    case Answer::kUnknown: return "unknown";
  }
  return "unknown";
}

Verdict decide(const Machine& m, const Configuration& src, const Configuration& dst,
               encode::Mode mode, const SolverConfig& config) {
  require_decidable(m);
  check_config(m, src, "source");
  check_config(m, dst, "target");
  const NormalizedMachine nm = normalize(m);
  const pa::Formula f = encode::encode_query(nm.machine, src, dst, mode);
  const SolverResult res = invoke(to_smtlib2(f), config);
  Verdict v;
  v.stats["formula_size"] = static_cast<long>(pa::size(f, pa::SizeConvention::kNodes));
  v.stats["solver_ms"] = res.elapsed_ms;
  v.answer = answer_of(res.status);
  v.reason = res.diagnostics;
  if (v.answer != Answer::kYes) return v;
  if (!res.model) throw Error(ErrorKind::kSolver, "solver answered sat without a model");

  const FlowWitness w = witness_from_model(nm.machine, *res.model);
  const Run normalized = flows_to_run(nm.machine, w, src.counters);
  if (normalized.start.state != src.state) {
    throw Error(ErrorKind::kWitness, "reconstructed run does not start in the source state");
  }
  Run run = lift_run(m, nm, normalized);
  if (!validate_run(m, run) || run.start != src || !target_met(run.end(), dst, mode)) {
    throw Error(ErrorKind::kWitness, "reconstructed witness fails simulation");
  }
  v.stats["witness_length"] = static_cast<long>(run.length());
  v.witness = std::move(run);
  return v;
}

Answer decide_sentence(const pa::Formula& sentence, const SolverConfig& config) {
  return answer_of(invoke(to_smtlib2(sentence), config).status);
}

Answer confirm_non_membership(const Machine& m, const Configuration& src, const Vector& x,
                              const SolverConfig& config) {
  require_decidable(m);
  check_config(m, src, "source");
  if (x.size() != m.dimension()) {
    throw Error(ErrorKind::kDimension, "confirm_non_membership: vector dimension mismatch");
  }
  const NormalizedMachine nm = normalize(m);
  const auto xs = encode::inclusion_vars(m.dimension());
  std::vector<pa::Formula> parts{
      encode::reach_set_formula(nm.machine, src, xs, encode::Naming{}, m.state_count())};
  for (std::size_t i = 0; i < xs.size(); ++i) parts.push_back(pa::eq(xs[i], x[i]));
  const pa::Formula member = pa::exists(xs, pa::land(std::move(parts)));
  switch (invoke(to_smtlib2(member), config).status) {
    case Status::kSat: return Answer::kNo;
    case Status::kUnsat: return Answer::kYes;
    case Status::kUnknown: return Answer::kUnknown;
  }
  return Answer::kUnknown;
}

Verdict decide_inclusion(const Machine& a, const Configuration& src_a, const Machine& b,
                         const Configuration& src_b, const SolverConfig& config) {
  require_decidable(a);
  require_decidable(b);
  check_config(a, src_a, "source");
  check_config(b, src_b, "source");
  const pa::Formula sentence = encode::encode_inclusion(a, src_a, b, src_b);
  const SolverResult res = invoke(to_smtlib2(sentence), config);
  Verdict v;
  v.stats["formula_size"] = static_cast<long>(pa::size(sentence, pa::SizeConvention::kNodes));
  v.stats["solver_ms"] = res.elapsed_ms;
  v.answer = answer_of(res.status);
  v.reason = res.diagnostics;
  if (v.answer != Answer::kNo) return v;

  // Refuting assignment: forall u. M  becomes  exists u. not M.
  std::vector<pa::Var> outer;
  pa::Formula matrix = sentence;
  while (matrix.op() == pa::Op::kForall) {
    outer.insert(outer.end(), matrix.bound().begin(), matrix.bound().end());
    matrix = matrix.child();
  }
  const SolverResult cx = invoke(to_smtlib2(pa::exists(outer, pa::lnot(matrix))), config);
  v.stats["counterexample_ms"] = cx.elapsed_ms;
  if (cx.status != Status::kSat || !cx.model) {
    v.reason = "counterexample query: " + std::string(status_name(cx.status));
    return v;
  }
  Vector x;
  for (const auto& xi : encode::inclusion_vars(a.dimension())) {
    auto it = cx.model->find(xi.name);
    x.push_back(it == cx.model->end() ? 0 : it->second);
  }
  const Answer confirmed = confirm_non_membership(b, src_b, x, config);
  if (confirmed == Answer::kYes) {
    v.counterexample = std::move(x);
  } else {
    v.reason = "counterexample " + format_vector(x) + " not confirmed (" +
               std::string(answer_name(confirmed)) + ")";
  }
  return v;
}

}  // namespace zvass::backend

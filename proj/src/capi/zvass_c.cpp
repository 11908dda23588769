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

#include "zvass/zvass.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "backend.hpp"
#include "encode.hpp"
#include "gen.hpp"
#include "json.hpp"
#include "machine_io.hpp"
#include "oracle.hpp"
#include "report.hpp"

struct zvass_machine {
  zvass::Machine machine;
};

struct zvass_result {
  zvass::Machine machine;
  zvass::backend::Verdict verdict;
};

namespace {

using nlohmann::json;
using zvass::Error;
using zvass::ErrorKind;

thread_local std::string g_last_error;

zvass_status status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::kDimension: return ZVASS_E_DIMENSION;
    case ErrorKind::kOverflow: return ZVASS_E_OVERFLOW;
    case ErrorKind::kInvalidMachine: return ZVASS_E_INVALID_MACHINE;
    case ErrorKind::kClass: return ZVASS_E_CLASS;
    case ErrorKind::kInvalidRun: return ZVASS_E_INVALID_RUN;
    case ErrorKind::kParse: return ZVASS_E_PARSE;
    case ErrorKind::kFormula: return ZVASS_E_FORMULA;
    case ErrorKind::kBound: return ZVASS_E_BOUND;
    case ErrorKind::kSolver: return ZVASS_E_SOLVER;
    case ErrorKind::kWitness: return ZVASS_E_WITNESS;
    case ErrorKind::kArgument: return ZVASS_E_ARGUMENT;
    case ErrorKind::kIo: return ZVASS_E_IO;
  }
  return ZVASS_E_INTERNAL;
}

template <typename F>
zvass_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return ZVASS_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const json::exception& e) {
    g_last_error = std::string("parameters: ") + e.what();
    return ZVASS_E_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ZVASS_E_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw Error(ErrorKind::kArgument, std::string(what) + " is NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

zvass::backend::SolverConfig solver_config(const zvass_solver_options* o) {
  auto c = zvass::backend::SolverConfig::from_env();
  if (o != nullptr) {
    if (o->command != nullptr && *o->command != '\0') c.command = o->command;
    if (o->timeout_ms > 0) c.timeout_ms = o->timeout_ms;
  }
  return c;
}

zvass::encode::Mode mode_of(zvass_mode m) {
  return m == ZVASS_COVER ? zvass::encode::Mode::kCover : zvass::encode::Mode::kReach;
}

zvass::Configuration config(const zvass::Machine& m, const char* text, const char* what) {
  require(text, what);
  return zvass::parse_configuration(m, text);
}

std::vector<zvass::LetterId> parse_word(const zvass::Machine& m, const std::string& text) {
  std::string spaced = text;
  for (auto& ch : spaced) {
    if (ch == ',') ch = ' ';
  }
  std::istringstream in(spaced);
  std::vector<zvass::LetterId> word;
  for (std::string tok; in >> tok;) {
    auto id = m.find_letter(tok);
    if (!id) throw Error(ErrorKind::kArgument, "unknown letter '" + tok + "'");
    word.push_back(*id);
  }
  return word;
}

zvass::report::Format format_of(zvass_format f) {
  return f == ZVASS_JSON ? zvass::report::Format::kJson : zvass::report::Format::kText;
}

// ---- generators -----------------------------------------------------------

json reach_bundle(const zvass::gen::ReachInstance& r, const std::string& kind) {
  json out;
  out["schema"] = zvass::report::kSchemaVersion;
  out["kind"] = kind;
  out["files"]["machine.zvass"] = zvass::print_machine(r.machine);
  out["query"] = {{"query", "reach"},
                  {"machine", "machine.zvass"},
                  {"from", zvass::format_configuration(r.machine, r.source)},
                  {"to", zvass::format_configuration(r.machine, r.target)}};
  return out;
}

std::mt19937_64 rng_for(std::uint64_t seed) { return std::mt19937_64(seed); }

json gen_diophantine(const json& p, std::uint64_t seed) {
  zvass::gen::Matrix a;
  zvass::Vector b;
  if (p.contains("matrix")) {
    a = p.at("matrix").get<zvass::gen::Matrix>();
    b = p.at("rhs").get<zvass::Vector>();
  } else {
    auto rng = rng_for(seed);
    std::uniform_int_distribution<std::size_t> dim(1, 3);
    std::uniform_int_distribution<zvass::Int> entry(-3, 3);
    const std::size_t m = dim(rng), n = dim(rng);
    a.assign(m, zvass::Vector(n));
    for (auto& row : a) {
      for (auto& x : row) x = entry(rng);
    }
    b.resize(m);
    for (auto& x : b) x = entry(rng);
  }
  json out = reach_bundle(zvass::gen::diophantine_to_zvas(a, b), "diophantine");
  const auto x = zvass::gen::ilp_bounded(a, b, 10);
  if (x) {
    out["expected"] = "yes";
    out["note"] = "brute force over x_j in [0,10] found x = (" + zvass::format_vector(*x) + ")";
  } else {
    out["expected"] = nullptr;
    out["note"] = "brute force over x_j in [0,10] found no solution; larger solutions are not excluded";
  }
  return out;
}

zvass::gen::Pi2Formula pi2_from(const json& p, std::uint64_t seed) {
  if (!p.contains("terms")) {
    auto rng = rng_for(seed);
    return zvass::gen::random_pi2(rng);
  }
  zvass::gen::Pi2Formula phi;
  phi.nx = p.at("nx").get<std::size_t>();
  phi.ny = p.at("ny").get<std::size_t>();
  for (const auto& t : p.at("terms")) {
    phi.terms.push_back({t.at("a").get<zvass::Vector>(), t.at("z").get<zvass::Int>(),
                         t.at("b").get<zvass::Vector>()});
  }
  std::vector<zvass::gen::PosBool> clauses;
  for (const auto& c : p.at("cnf")) {
    std::vector<zvass::gen::PosBool> lits;
    for (const auto& t : c) lits.push_back(zvass::gen::PosBool::leaf(t.get<std::size_t>()));
    clauses.push_back(zvass::gen::PosBool::any(std::move(lits)));
  }
  phi.matrix = zvass::gen::PosBool::all(std::move(clauses));
  return phi;
}

json gen_pi2pa(const json& p, std::uint64_t seed) {
  const auto phi = pi2_from(p, seed);
  const auto inst = zvass::gen::pi2pa_to_inclusion(phi);
  json out;
  out["schema"] = zvass::report::kSchemaVersion;
  out["kind"] = "pi2pa";
  out["files"]["a.zvass"] = zvass::print_machine(inst.a);
  out["files"]["b.zvass"] = zvass::print_machine(inst.b);
  out["files"]["formula.smt2"] = zvass::backend::to_smtlib2(zvass::gen::to_formula(phi));
  out["query"] = {{"query", "incl"},
                  {"a", "a.zvass"},
                  {"from_a", zvass::format_configuration(inst.a, inst.source_a)},
                  {"b", "b.zvass"},
                  {"from_b", zvass::format_configuration(inst.b, inst.source_b)}};
  out["expected"] = nullptr;
  out["note"] = "inclusion holds iff formula.smt2 is valid (sat); check it with the solver: " +
                zvass::pa::to_string(zvass::gen::to_formula(phi));
  return out;
}

zvass::gen::QsosInstance qsos_from(const json& p, std::uint64_t seed) {
  if (!p.contains("sets")) {
    auto rng = rng_for(seed);
    return zvass::gen::random_qsos2(rng, 3, 7);
  }
  return {p.at("sets").get<std::vector<zvass::Vector>>(), p.at("target").get<zvass::Int>()};
}

json system_json(const zvass::gen::DiophantineSystem& s) {
  json blocks = json::array();
  for (const auto& b : s.blocks) {
    blocks.push_back({{"universal", b.universal}, {"matrix", b.a}});
  }
  return {{"blocks", blocks}, {"c", s.c}, {"guard_from", s.guard_from}};
}

json gen_qsos2_qslde(const json& p, std::uint64_t seed) {
  const auto q = qsos_from(p, seed);
  const std::string enc = p.value("encoding", "binary");
  if (enc != "binary" && enc != "unary") {
    throw Error(ErrorKind::kArgument, "encoding must be binary or unary");
  }
  const auto s = zvass::gen::qsos2_to_qslde(
      q, enc == "unary" ? zvass::gen::QsldeEncoding::kUnary : zvass::gen::QsldeEncoding::kBinary);
  json out;
  out["schema"] = zvass::report::kSchemaVersion;
  out["kind"] = "qsos2-qslde";
  out["files"]["system.json"] = system_json(s).dump(2) + "\n";
  out["files"]["system.smt2"] = zvass::backend::to_smtlib2(zvass::gen::to_formula(s));
  out["files"]["qsos.json"] = json{{"sets", q.sets}, {"target", q.target}}.dump() + "\n";
  out["query"] = {{"query", "sentence"}, {"file", "system.smt2"}, {"encoding", enc}};
  const bool truth = zvass::gen::qsos_holds(q);
  out["expected"] = truth ? "yes" : "no";
  out["note"] = std::string("sub-multiset enumeration: the QSOS statement is ") +
                (truth ? "true" : "false") + "; system.smt2 is sat iff the system is valid";
  return out;
}

json gen_qbf_qsos(const json& p, std::uint64_t seed) {
  zvass::gen::Qbf phi;
  if (p.contains("clauses")) {
    phi.blocks = p.at("blocks").get<std::vector<std::size_t>>();
    phi.clauses = p.at("clauses").get<std::vector<std::vector<int>>>();
  } else {
    auto rng = rng_for(seed);
    phi.blocks = {1, 1};
    std::uniform_int_distribution<int> lit(1, 2), sign(0, 1), count(1, 2);
    const int m = count(rng);
    for (int c = 0; c < m; ++c) {
      std::vector<int> clause;
      for (int i = 0; i < 3; ++i) clause.push_back(sign(rng) ? lit(rng) : -lit(rng));
      phi.clauses.push_back(std::move(clause));
    }
  }
  const auto q = zvass::gen::qbf_to_qsos(phi);
  json out;
  out["schema"] = zvass::report::kSchemaVersion;
  out["kind"] = "qbf-qsos";
  out["files"]["qsos.json"] = json{{"sets", q.sets}, {"target", q.target}}.dump() + "\n";
  out["query"] = {{"query", "qsos"}, {"file", "qsos.json"}};
  const bool truth = zvass::gen::qbf_holds(phi);
  out["expected"] = truth ? "yes" : "no";
  out["note"] = std::string("QBF evaluated by enumeration: ") + (truth ? "true" : "false") +
                "; the QSOS statement has the same truth value";
  return out;
}

json gen_pcp(const json& p) {
  zvass::gen::PcpInstance inst;
  if (p.contains("pairs")) {
    for (const auto& pr : p.at("pairs")) {
      inst.pairs.emplace_back(pr.at(0).get<std::string>(), pr.at(1).get<std::string>());
    }
  } else {
    inst.pairs = {{"0", "100"}, {"01", "00"}, {"110", "11"}};
  }
  std::vector<std::size_t> seq{3, 2, 3, 1};
  if (p.contains("sequence")) seq = p.at("sequence").get<std::vector<std::size_t>>();
  const zvass::Machine m = zvass::gen::pcp_to_affine_rm(inst);
  std::string word;
  for (zvass::LetterId a : zvass::gen::pcp_word(m, inst, seq)) {
    word += (word.empty() ? "" : " ") + m.letter(a).name;
  }
  json out;
  out["schema"] = zvass::report::kSchemaVersion;
  out["kind"] = "pcp";
  out["files"]["machine.zvass"] = zvass::print_machine(m);
  const bool solution = zvass::gen::pcp_is_solution(inst, seq);
  std::string top;
  for (std::size_t i : seq) top += inst.pairs.at(i - 1).first;
  zvass::Int value = 0;
  for (char ch : top) value = value * 2 + (ch - '0');
  if (solution && value > 0 && value <= 100000) {
    for (zvass::Int i = 0; i < value; ++i) word += (word.empty() ? "" : " ") + std::string("sep");
  }
  out["query"] = {{"query", "simulate"}, {"machine", "machine.zvass"}, {"from", "q0:0,0"}, {"word", word}};
  out["expected"] = solution ? json("qf:0,0") : json(nullptr);
  out["note"] = solution ? "string check: the index sequence is a solution; the word ends with " +
                               std::to_string(value) + " 'sep' steps"
                         : std::string("string check: the index sequence is not a solution");
  return out;
}

json gen_random(const json& p, std::uint64_t seed) {
  zvass::gen::RandomMachineOptions opt;
  opt.max_states = p.value("max_states", opt.max_states);
  opt.max_dim = p.value("max_dim", opt.max_dim);
  opt.max_letters = p.value("max_letters", opt.max_letters);
  opt.max_transitions = p.value("max_transitions", opt.max_transitions);
  opt.resets = p.value("resets", opt.resets);
  auto rng = rng_for(seed);
  json out = reach_bundle(zvass::gen::random_instance(rng, opt), "random");
  out["expected"] = nullptr;
  out["note"] = "random instance; no ground truth";
  return out;
}

}  // namespace

extern "C" {

const char* zvass_version(void) { return "1.0.0"; }

const char* zvass_last_error(void) { return g_last_error.c_str(); }

void zvass_string_free(char* s) { std::free(s); }

zvass_status zvass_machine_load(const char* path, zvass_machine** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new zvass_machine{zvass::load_machine(path)};
  });
}

zvass_status zvass_machine_parse(const char* text, const char* source_name, zvass_machine** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new zvass_machine{zvass::parse_machine(text, source_name ? source_name : "<input>")};
  });
}

void zvass_machine_free(zvass_machine* m) { delete m; }

size_t zvass_machine_dimension(const zvass_machine* m) {
  return m == nullptr ? 0 : m->machine.dimension();
}

zvass_status zvass_machine_print(const zvass_machine* m, char** out) {
  return guarded([&] {
    require(m, "machine");
    require(out, "out");
    *out = dup_string(zvass::print_machine(m->machine));
  });
}

zvass_status zvass_simulate(const zvass_machine* m, const char* from, const char* word,
                            zvass_format format, char** out, int* stuck) {
  return guarded([&] {
    require(m, "machine");
    require(out, "out");
    const auto src = config(m->machine, from, "from");
    const auto w = parse_word(m->machine, word ? word : "");
    if (stuck != nullptr) *stuck = zvass::run(m->machine, src, w).empty() ? 1 : 0;
    *out = dup_string(zvass::report::render_simulation(m->machine, src, w, format_of(format)));
  });
}

zvass_status zvass_check(const zvass_machine* m, zvass_mode mode, const char* from, const char* to,
                         const zvass_solver_options* options, zvass_result** out) {
  return guarded([&] {
    require(m, "machine");
    require(out, "out");
    const auto src = config(m->machine, from, "from");
    const auto dst = config(m->machine, to, "to");
    auto v = zvass::backend::decide(m->machine, src, dst, mode_of(mode), solver_config(options));
    *out = new zvass_result{m->machine, std::move(v)};
  });
}

zvass_status zvass_check_inclusion(const zvass_machine* a, const char* from_a,
                                   const zvass_machine* b, const char* from_b,
                                   const zvass_solver_options* options, zvass_result** out) {
  return guarded([&] {
    require(a, "machine a");
    require(b, "machine b");
    require(out, "out");
    const auto sa = config(a->machine, from_a, "from_a");
    const auto sb = config(b->machine, from_b, "from_b");
    auto v = zvass::backend::decide_inclusion(a->machine, sa, b->machine, sb, solver_config(options));
    *out = new zvass_result{a->machine, std::move(v)};
  });
}

zvass_status zvass_emit_smt(const zvass_machine* m, zvass_mode mode, const char* from,
                            const char* to, char** out) {
  return guarded([&] {
    require(m, "machine");
    require(out, "out");
    const auto src = config(m->machine, from, "from");
    const auto dst = config(m->machine, to, "to");
    const auto nm = zvass::normalize(m->machine);
    *out = dup_string(zvass::backend::to_smtlib2(
        zvass::encode::encode_query(nm.machine, src, dst, mode_of(mode))));
  });
}

zvass_status zvass_emit_smt_inclusion(const zvass_machine* a, const char* from_a,
                                      const zvass_machine* b, const char* from_b, char** out) {
  return guarded([&] {
    require(a, "machine a");
    require(b, "machine b");
    require(out, "out");
    const auto sa = config(a->machine, from_a, "from_a");
    const auto sb = config(b->machine, from_b, "from_b");
    *out = dup_string(zvass::backend::to_smtlib2(
        zvass::encode::encode_inclusion(a->machine, sa, b->machine, sb)));
  });
}

zvass_status zvass_oracle(const zvass_machine* m, zvass_mode mode, const char* from,
                          const char* to, size_t max_len, zvass_result** out) {
  return guarded([&] {
    require(m, "machine");
    require(out, "out");
    const auto src = config(m->machine, from, "from");
    const auto dst = config(m->machine, to, "to");
    auto ans = zvass::oracle::bfs(m->machine, src, dst, mode_of(mode), max_len);
    zvass::backend::Verdict v;
    v.stats["explored"] = static_cast<long>(ans.explored);
    if (ans.found()) {
      v.answer = zvass::backend::Answer::kYes;
      v.stats["witness_length"] = static_cast<long>(ans.witness->length());
      v.witness = std::move(ans.witness);
    } else {
      v.answer = zvass::backend::Answer::kUnknown;
      v.reason = "no run of length <= " + std::to_string(max_len);
    }
    *out = new zvass_result{m->machine, std::move(v)};
  });
}

zvass_status zvass_oracle_inclusion(const zvass_machine* a, const char* from_a,
                                    const zvass_machine* b, const char* from_b, size_t max_len,
                                    const zvass_solver_options* options, zvass_result** out) {
  return guarded([&] {
    require(a, "machine a");
    require(b, "machine b");
    require(out, "out");
    const auto sa = config(a->machine, from_a, "from_a");
    const auto sb = config(b->machine, from_b, "from_b");
    std::optional<zvass::backend::SolverConfig> cfg;
    if (options != nullptr) cfg = solver_config(options);
    auto ans = zvass::oracle::incl_counterexample_bounded(a->machine, sa, b->machine, sb, max_len,
                                                          max_len, cfg ? &*cfg : nullptr);
    zvass::backend::Verdict v;
    v.stats["explored"] = static_cast<long>(ans.explored);
    v.answer = zvass::backend::Answer::kUnknown;
    if (ans.found() && ans.confirmed) {
      v.answer = zvass::backend::Answer::kNo;
      v.counterexample = ans.vector;
    } else if (ans.found()) {
      v.counterexample = ans.vector;
      v.reason = "candidate not reached by B within " + std::to_string(max_len) +
                 " steps (unconfirmed)";
    } else {
      v.reason = "no counterexample within " + std::to_string(max_len) + " steps";
    }
    *out = new zvass_result{a->machine, std::move(v)};
  });
}

zvass_answer zvass_result_answer(const zvass_result* r) {
  if (r == nullptr) return ZVASS_UNKNOWN;
  switch (r->verdict.answer) {
    case zvass::backend::Answer::kYes: return ZVASS_YES;
    case zvass::backend::Answer::kNo: return ZVASS_NO;
    case zvass::backend::Answer::kUnknown: return ZVASS_UNKNOWN;
  }
  return ZVASS_UNKNOWN;
}

size_t zvass_result_witness_length(const zvass_result* r) {
  return r != nullptr && r->verdict.witness ? r->verdict.witness->length() : 0;
}

zvass_status zvass_result_render(const zvass_result* r, zvass_format format, char** out) {
  return guarded([&] {
    require(r, "result");
    require(out, "out");
    *out = dup_string(zvass::report::render(r->machine, r->verdict, format_of(format)));
  });
}

void zvass_result_free(zvass_result* r) { delete r; }

zvass_status zvass_generate(const char* kind, const char* params_json, uint64_t seed, char** out) {
  return guarded([&] {
    require(kind, "kind");
    require(out, "out");
    const json p = (params_json && *params_json) ? json::parse(params_json) : json::object();
    const std::string k = kind;
    json bundle;
    if (k == "diophantine") {
      bundle = gen_diophantine(p, seed);
    } else if (k == "pi2pa") {
      bundle = gen_pi2pa(p, seed);
    } else if (k == "qsos2-qslde") {
      bundle = gen_qsos2_qslde(p, seed);
    } else if (k == "qbf-qsos") {
      bundle = gen_qbf_qsos(p, seed);
    } else if (k == "pcp") {
      bundle = gen_pcp(p);
    } else if (k == "random") {
      bundle = gen_random(p, seed);
    } else {
      throw Error(ErrorKind::kArgument, "unknown generator kind '" + k + "'");
    }
    bundle["seed"] = seed;
    *out = dup_string(bundle.dump(2) + "\n");
  });
}

zvass_status zvass_psi_size(const zvass_machine* m, size_t k_max, zvass_format format, char** out) {
  return guarded([&] {
    require(m, "machine");
    require(out, "out");
    const auto rows = zvass::encode::psi_size_sweep(m->machine, k_max);
    if (format == ZVASS_JSON) {
      json arr = json::array();
      for (const auto& r : rows) {
        arr.push_back({{"k", r.k}, {"automaton_size", r.automaton_size}, {"unary_size", r.unary_size}});
      }
      *out = dup_string(json{{"schema", zvass::report::kSchemaVersion}, {"rows", arr}}.dump() + "\n");
      return;
    }
    std::ostringstream s;
    s << "k\t|B|\tunary_size\tsize/(k^2|B|)\n";
    for (const auto& r : rows) {
      s << r.k << "\t" << r.automaton_size << "\t" << r.unary_size << "\t"
        << static_cast<double>(r.unary_size) / static_cast<double>(r.k * r.k * r.automaton_size)
        << "\n";
    }
    *out = dup_string(s.str());
  });
}

}  // extern "C"

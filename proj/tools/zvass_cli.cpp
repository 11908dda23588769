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

// zvass command-line driver. Exit codes: 0 yes, 1 no, 2 unknown, >= 10
// usage or runtime error.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "zvass/zvass.h"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kUsageError = ZVASS_E_ARGUMENT;

struct Failure {
  int code;
  std::string message;
};

void check(zvass_status s) {
  if (s != ZVASS_OK) throw Failure{s, zvass_last_error()};
}

struct MachineDeleter {
  void operator()(zvass_machine* m) const { zvass_machine_free(m); }
};
struct ResultDeleter {
  void operator()(zvass_result* r) const { zvass_result_free(r); }
};
using MachinePtr = std::unique_ptr<zvass_machine, MachineDeleter>;
using ResultPtr = std::unique_ptr<zvass_result, ResultDeleter>;

MachinePtr load(const std::string& path) {
  zvass_machine* m = nullptr;
  check(zvass_machine_load(path.c_str(), &m));
  return MachinePtr(m);
}

std::string take(char* s) {
  std::string out(s);
  zvass_string_free(s);
  return out;
}

struct Options {
  bool json = false;
  std::string solver_cmd;
  long timeout_ms = 0;
  std::size_t max_len = 8;
  std::uint64_t seed = 1;

  zvass_solver_options solver() const { return {solver_cmd.empty() ? nullptr : solver_cmd.c_str(), timeout_ms}; }
  zvass_format format() const { return json ? ZVASS_JSON : ZVASS_TEXT; }
};

struct Query {
  std::string kind;  // reach, cover, incl
  std::string machine, from, to;
  std::string machine_b, from_b;
};

zvass_mode mode_of(const std::string& kind) { return kind == "cover" ? ZVASS_COVER : ZVASS_REACH; }

// Runs a decision query and returns (exit code, rendered output).
std::pair<int, std::string> run_check(const Query& q, const Options& o) {
  const zvass_solver_options solver = o.solver();
  zvass_result* raw = nullptr;
  auto a = load(q.machine);
  if (q.kind == "incl") {
    auto b = load(q.machine_b);
    check(zvass_check_inclusion(a.get(), q.from.c_str(), b.get(), q.from_b.c_str(), &solver, &raw));
  } else {
    check(zvass_check(a.get(), mode_of(q.kind), q.from.c_str(), q.to.c_str(), &solver, &raw));
  }
  ResultPtr r(raw);
  char* text = nullptr;
  check(zvass_result_render(r.get(), o.format(), &text));
  return {zvass_result_answer(r.get()), take(text)};
}

Query parse_batch_line(const std::string& line, const fs::path& base) {
  std::istringstream in(line);
  std::vector<std::string> tok;
  for (std::string t; in >> t;) tok.push_back(t);
  auto path = [&](const std::string& p) {
    const fs::path fp(p);
    return (fp.is_absolute() ? fp : base / fp).string();
  };
  if (tok.size() == 4 && (tok[0] == "reach" || tok[0] == "cover")) {
    return {tok[0], path(tok[1]), tok[2], tok[3], "", ""};
  }
  if (tok.size() == 5 && tok[0] == "incl") return {tok[0], path(tok[1]), tok[2], "", path(tok[3]), tok[4]};
  throw Failure{kUsageError, "batch: cannot parse line '" + line + "'"};
}

int run_batch(const std::string& file, const Options& o) {
  std::ifstream in(file);
  if (!in) throw Failure{ZVASS_E_IO, "cannot open batch file '" + file + "'"};
  const fs::path base = fs::path(file).parent_path();
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    lines.push_back(line);
  }
  struct Outcome {
    int code = 0;
    std::string output;
  };
  auto work = [&](const std::string& line) {
    try {
      auto [code, out] = run_check(parse_batch_line(line, base), o);
      return Outcome{code, out};
    } catch (const Failure& f) {
      return Outcome{f.code, f.message};
    }
  };
  const std::size_t width = std::max(1u, std::thread::hardware_concurrency());
  std::vector<Outcome> outcomes(lines.size());
  for (std::size_t start = 0; start < lines.size(); start += width) {
    std::vector<std::future<Outcome>> running;
    for (std::size_t i = start; i < std::min(lines.size(), start + width); ++i) {
      running.push_back(std::async(std::launch::async, work, lines[i]));
    }
    for (std::size_t i = 0; i < running.size(); ++i) outcomes[start + i] = running[i].get();
  }
  int worst = 0;
  json results = json::array();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const Outcome& r = outcomes[i];
    worst = std::max(worst, r.code);
    if (o.json) {
      json entry = r.code < 10 ? json::parse(r.output) : json{{"error", r.output}, {"status", r.code}};
      entry["query"] = lines[i];
      results.push_back(std::move(entry));
    } else {
      std::cout << "[" << i + 1 << "] " << lines[i] << "\n";
      std::cout << (r.code < 10 ? r.output : "error: " + r.output + "\n");
    }
  }
  if (o.json) std::cout << json{{"schema", 1}, {"results", results}}.dump() << "\n";
  return worst;
}

void add_solver_flags(CLI::App* app, Options& o) {
  app->add_option("--solver-cmd", o.solver_cmd, "SMT solver command (reads SMT-LIB2 on stdin)");
  app->add_option("--timeout-ms", o.timeout_ms, "solver timeout in milliseconds");
}

void add_query_args(CLI::App* app, Query& q, const std::string& kind) {
  q.kind = kind;
  app->add_option("machine", q.machine, "machine file")->required();
  app->add_option("--from", q.from, "source configuration state:c1,c2,...")->required();
  if (kind == "incl") {
    app->add_option("machine_b", q.machine_b, "machine file B")->required();
    app->add_option("--from-b", q.from_b, "source configuration in B")->required();
  } else {
    app->add_option("--to", q.to, "target configuration state:c1,c2,...")->required();
  }
}

void write_bundle(const json& bundle, const std::string& dir) {
  fs::create_directories(dir);
  for (const auto& [name, contents] : bundle.at("files").items()) {
    std::ofstream(fs::path(dir) / name) << contents.get<std::string>();
  }
  json query = bundle.at("query");
  query["schema"] = bundle.at("schema");
  query["expected"] = bundle.at("expected");
  std::ofstream(fs::path(dir) / "query.json") << query.dump(2) << "\n";
  std::ofstream(fs::path(dir) / "NOTE.txt") << bundle.at("note").get<std::string>() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zvass: reachability, coverability and inclusion for integer VASS with resets"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "machine-readable output");

  auto* check_cmd = app.add_subcommand("check", "decide a query with the SMT backend");
  std::string batch;
  check_cmd->add_option("--batch", batch, "file of queries, one per line");
  check_cmd->require_subcommand(0, 1);
  add_solver_flags(check_cmd, o);
  Query check_q;
  for (const char* kind : {"reach", "cover", "incl"}) {
    auto* sub = check_cmd->add_subcommand(kind, std::string(kind) + " query");
    add_query_args(sub, check_q, kind);
    add_solver_flags(sub, o);
  }

  auto* emit_cmd = app.add_subcommand("emit-smt", "print the SMT-LIB2 script of a query");
  emit_cmd->require_subcommand(1);
  Query emit_q;
  for (const char* kind : {"reach", "cover", "incl"}) {
    add_query_args(emit_cmd->add_subcommand(kind, std::string(kind) + " query"), emit_q, kind);
  }

  auto* sim_cmd = app.add_subcommand("simulate", "run a word from a configuration");
  std::string sim_machine, sim_from, sim_word;
  sim_cmd->add_option("machine", sim_machine, "machine file")->required();
  sim_cmd->add_option("word", sim_word, "letters separated by spaces or commas");
  sim_cmd->add_option("--from", sim_from, "source configuration")->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "bounded explicit-state search");
  oracle_cmd->require_subcommand(1);
  Query oracle_q;
  bool confirm = false;
  for (const char* kind : {"reach", "cover", "incl"}) {
    auto* sub = oracle_cmd->add_subcommand(kind, std::string(kind) + " query");
    add_query_args(sub, oracle_q, kind);
    sub->add_option("--max-len", o.max_len, "maximal run length");
    if (std::string(kind) == "incl") {
      sub->add_flag("--confirm", confirm, "confirm the counterexample with the solver");
      add_solver_flags(sub, o);
    }
  }

  auto* gen_cmd = app.add_subcommand("gen", "generate an instance with known ground truth");
  std::string gen_kind, gen_params, gen_out;
  gen_cmd->add_option("kind", gen_kind, "diophantine|pi2pa|qsos2-qslde|qbf-qsos|pcp|random")
      ->required();
  gen_cmd->add_option("--params", gen_params, "instance as JSON (random when omitted)");
  gen_cmd->add_option("--seed", o.seed, "random seed");
  gen_cmd->add_option("--out-dir", gen_out, "write the files, query.json and NOTE.txt here");

  auto* stats_cmd = app.add_subcommand("stats", "formula statistics");
  stats_cmd->require_subcommand(1);
  auto* psi_cmd = stats_cmd->add_subcommand("psi-size", "unary size of the Parikh formula per k");
  std::string psi_machine;
  std::size_t k_max = 6;
  psi_cmd->add_option("machine", psi_machine, "machine file")->required();
  psi_cmd->add_option("--k-max", k_max, "largest k");

  for (auto* sub : {check_cmd, emit_cmd, sim_cmd, oracle_cmd, gen_cmd, stats_cmd}) {
    sub->add_flag("--json", o.json, "machine-readable output");
  }
  for (auto* parent : {check_cmd, oracle_cmd}) {
    for (auto* sub : parent->get_subcommands({})) sub->add_flag("--json", o.json, "machine-readable output");
  }
  psi_cmd->add_flag("--json", o.json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsageError;
  }

  try {
    if (check_cmd->parsed()) {
      if (!batch.empty()) return run_batch(batch, o);
      if (check_cmd->get_subcommands().empty()) throw Failure{kUsageError, "check: give reach|cover|incl or --batch"};
      check_q.kind = check_cmd->get_subcommands().front()->get_name();
      auto [code, out] = run_check(check_q, o);
      std::cout << out;
      return code;
    }
    if (emit_cmd->parsed()) {
      emit_q.kind = emit_cmd->get_subcommands().front()->get_name();
      char* out = nullptr;
      auto a = load(emit_q.machine);
      if (emit_q.kind == "incl") {
        auto b = load(emit_q.machine_b);
        check(zvass_emit_smt_inclusion(a.get(), emit_q.from.c_str(), b.get(), emit_q.from_b.c_str(), &out));
      } else {
        check(zvass_emit_smt(a.get(), mode_of(emit_q.kind), emit_q.from.c_str(), emit_q.to.c_str(), &out));
      }
      std::cout << take(out);
      return 0;
    }
    if (sim_cmd->parsed()) {
      auto m = load(sim_machine);
      char* out = nullptr;
      int stuck = 0;
      check(zvass_simulate(m.get(), sim_from.c_str(), sim_word.c_str(), o.format(), &out, &stuck));
      std::cout << take(out);
      return stuck ? ZVASS_NO : ZVASS_YES;
    }
    if (oracle_cmd->parsed()) {
      oracle_q.kind = oracle_cmd->get_subcommands().front()->get_name();
      auto a = load(oracle_q.machine);
      zvass_result* raw = nullptr;
      if (oracle_q.kind == "incl") {
        auto b = load(oracle_q.machine_b);
        const zvass_solver_options solver = o.solver();
        check(zvass_oracle_inclusion(a.get(), oracle_q.from.c_str(), b.get(), oracle_q.from_b.c_str(),
                                     o.max_len, confirm ? &solver : nullptr, &raw));
      } else {
        check(zvass_oracle(a.get(), mode_of(oracle_q.kind), oracle_q.from.c_str(), oracle_q.to.c_str(),
                           o.max_len, &raw));
      }
      ResultPtr r(raw);
      char* out = nullptr;
      check(zvass_result_render(r.get(), o.format(), &out));
      std::cout << take(out);
      return zvass_result_answer(r.get());
    }
    if (gen_cmd->parsed()) {
      char* out = nullptr;
      check(zvass_generate(gen_kind.c_str(), gen_params.c_str(), o.seed, &out));
      const std::string text = take(out);
      if (gen_out.empty()) {
        std::cout << text;
      } else {
        const json bundle = json::parse(text);
        write_bundle(bundle, gen_out);
        std::cout << bundle.at("note").get<std::string>() << "\n";
      }
      return 0;
    }
    if (psi_cmd->parsed()) {
      auto m = load(psi_machine);
      char* out = nullptr;
      check(zvass_psi_size(m.get(), k_max, o.format(), &out));
      std::cout << take(out);
      return 0;
    }
  } catch (const Failure& f) {
    std::cerr << "zvass: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "zvass: " << e.what() << "\n";
    return ZVASS_E_INTERNAL;
  }
  return kUsageError;
}

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <memory>
#include <string>

#include "json.hpp"
#include "zvass/zvass.h"

namespace {

const char* kTwo =
    "machine two\nclass zvass\ndim 1\nstates q\nletters a\neffect a add 2\ntransition q a q\n";
const char* kOne =
    "machine one\nclass zvass\ndim 1\nstates q\nletters a\neffect a add 1\ntransition q a q\n";

bool have_z3() { return std::system("command -v z3 >/dev/null 2>&1") == 0; }

struct MachineDeleter {
  void operator()(zvass_machine* m) const { zvass_machine_free(m); }
};
struct ResultDeleter {
  void operator()(zvass_result* r) const { zvass_result_free(r); }
};
using MachinePtr = std::unique_ptr<zvass_machine, MachineDeleter>;
using ResultPtr = std::unique_ptr<zvass_result, ResultDeleter>;

MachinePtr parse(const char* text) {
  zvass_machine* m = nullptr;
  REQUIRE(zvass_machine_parse(text, "t.zvass", &m) == ZVASS_OK);
  return MachinePtr(m);
}

std::string take(char* s) {
  std::string out = s ? s : "";
  zvass_string_free(s);
  return out;
}

std::string render(const zvass_result* r, zvass_format f) {
  char* s = nullptr;
  REQUIRE(zvass_result_render(r, f, &s) == ZVASS_OK);
  return take(s);
}

}  // namespace

TEST_CASE("version and errors") {
  CHECK(std::string(zvass_version()).size() > 0);
  zvass_machine* m = nullptr;
  CHECK(zvass_machine_parse("machine x\nclass nope\n", "bad.zvass", &m) == ZVASS_E_PARSE);
  CHECK(m == nullptr);
  CHECK(std::string(zvass_last_error()).find("bad.zvass") != std::string::npos);
  CHECK(zvass_machine_load("/nonexistent/file.zvass", &m) == ZVASS_E_IO);
  CHECK(zvass_machine_parse(nullptr, "x", &m) == ZVASS_E_ARGUMENT);
}

TEST_CASE("machine handle basics") {
  auto m = parse(kTwo);
  CHECK(zvass_machine_dimension(m.get()) == 1);
  char* text = nullptr;
  REQUIRE(zvass_machine_print(m.get(), &text) == ZVASS_OK);
  const std::string printed = take(text);
  CHECK(printed.find("effect a add 2") != std::string::npos);
  auto again = parse(printed.c_str());
  CHECK(zvass_machine_dimension(again.get()) == 1);
}

TEST_CASE("simulate") {
  auto m = parse(kTwo);
  char* out = nullptr;
  int stuck = -1;
  REQUIRE(zvass_simulate(m.get(), "q:1", "", ZVASS_TEXT, &out, &stuck) == ZVASS_OK);
  CHECK(take(out).find("q:1") != std::string::npos);
  CHECK(stuck == 0);
  REQUIRE(zvass_simulate(m.get(), "q:0", "a a", ZVASS_JSON, &out, &stuck) == ZVASS_OK);
  CHECK(take(out).find("4") != std::string::npos);
  CHECK(zvass_simulate(m.get(), "q:0", "b", ZVASS_TEXT, &out, &stuck) != ZVASS_OK);
  CHECK(zvass_simulate(m.get(), "q:0,1", "", ZVASS_TEXT, &out, &stuck) == ZVASS_E_DIMENSION);
}

TEST_CASE("oracle results render") {
  auto m = parse(kTwo);
  zvass_result* raw = nullptr;
  REQUIRE(zvass_oracle(m.get(), ZVASS_REACH, "q:0", "q:4", 5, &raw) == ZVASS_OK);
  ResultPtr r(raw);
  CHECK(zvass_result_answer(r.get()) == ZVASS_YES);
  CHECK(zvass_result_witness_length(r.get()) == 2);
  const auto j = nlohmann::json::parse(render(r.get(), ZVASS_JSON));
  CHECK(j["schema"] == 1);
  CHECK(j["answer"] == "yes");
  CHECK(j["witness"].size() == 3);

  REQUIRE(zvass_oracle(m.get(), ZVASS_REACH, "q:0", "q:3", 6, &raw) == ZVASS_OK);
  ResultPtr u(raw);
  CHECK(zvass_result_answer(u.get()) == ZVASS_UNKNOWN);
  const auto ju = nlohmann::json::parse(render(u.get(), ZVASS_JSON));
  CHECK(ju["reason"].is_string());
  CHECK(ju["witness"].is_null());
}

TEST_CASE("emit-smt is stable") {
  auto m = parse(kTwo);
  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(zvass_emit_smt(m.get(), ZVASS_REACH, "q:0", "q:4", &a) == ZVASS_OK);
  REQUIRE(zvass_emit_smt(m.get(), ZVASS_REACH, "q:0", "q:4", &b) == ZVASS_OK);
  const std::string sa = take(a), sb = take(b);
  CHECK(sa == sb);
  CHECK(sa.find("(check-sat)") != std::string::npos);
  auto one = parse(kOne);
  REQUIRE(zvass_emit_smt_inclusion(one.get(), "q:0", m.get(), "q:0", &a) == ZVASS_OK);
  CHECK(take(a).find("forall") != std::string::npos);
}

TEST_CASE("solver-backed checks" * doctest::skip(!have_z3())) {
  auto two = parse(kTwo);
  auto one = parse(kOne);
  zvass_result* raw = nullptr;
  REQUIRE(zvass_check(two.get(), ZVASS_REACH, "q:0", "q:4", nullptr, &raw) == ZVASS_OK);
  ResultPtr yes(raw);
  CHECK(zvass_result_answer(yes.get()) == ZVASS_YES);
  CHECK(zvass_result_witness_length(yes.get()) == 2);

  REQUIRE(zvass_check(two.get(), ZVASS_REACH, "q:0", "q:3", nullptr, &raw) == ZVASS_OK);
  ResultPtr no(raw);
  CHECK(zvass_result_answer(no.get()) == ZVASS_NO);
  CHECK(render(no.get(), ZVASS_TEXT).rfind("no", 0) == 0);

  REQUIRE(zvass_check_inclusion(one.get(), "q:0", two.get(), "q:0", nullptr, &raw) == ZVASS_OK);
  ResultPtr incl(raw);
  CHECK(zvass_result_answer(incl.get()) == ZVASS_NO);
  const auto j = nlohmann::json::parse(render(incl.get(), ZVASS_JSON));
  CHECK(j["counterexample"].is_array());

  zvass_solver_options broken{"echo garbage", 1000};
  CHECK(zvass_check(two.get(), ZVASS_REACH, "q:0", "q:4", &broken, &raw) == ZVASS_E_SOLVER);
  zvass_solver_options slow{"sleep 5", 100};
  REQUIRE(zvass_check(two.get(), ZVASS_REACH, "q:0", "q:4", &slow, &raw) == ZVASS_OK);
  ResultPtr unknown(raw);
  CHECK(zvass_result_answer(unknown.get()) == ZVASS_UNKNOWN);

  REQUIRE(zvass_oracle_inclusion(one.get(), "q:0", two.get(), "q:0", 6, nullptr, &raw) == ZVASS_OK);
  ResultPtr unconfirmed(raw);
  CHECK(zvass_result_answer(unconfirmed.get()) == ZVASS_UNKNOWN);
  zvass_solver_options z3{nullptr, 0};
  REQUIRE(zvass_oracle_inclusion(one.get(), "q:0", two.get(), "q:0", 6, &z3, &raw) == ZVASS_OK);
  ResultPtr confirmed(raw);
  CHECK(zvass_result_answer(confirmed.get()) == ZVASS_NO);
}

TEST_CASE("generators return bundles") {
  for (const char* kind : {"diophantine", "pi2pa", "qsos2-qslde", "qbf-qsos", "pcp", "random"}) {
    CAPTURE(kind);
    char* out = nullptr;
    REQUIRE(zvass_generate(kind, nullptr, 7, &out) == ZVASS_OK);
    const auto j = nlohmann::json::parse(take(out));
    CHECK(j["kind"] == kind);
    CHECK(j["files"].is_object());
    CHECK(j.contains("query"));
    CHECK(j["note"].is_string());
    char* again = nullptr;
    REQUIRE(zvass_generate(kind, "{}", 7, &again) == ZVASS_OK);
    CHECK(nlohmann::json::parse(take(again)) == j);
  }
  char* out = nullptr;
  CHECK(zvass_generate("nope", nullptr, 1, &out) == ZVASS_E_ARGUMENT);
  REQUIRE(zvass_generate("diophantine", R"({"matrix":[[2]],"rhs":[3]})", 0, &out) == ZVASS_OK);
  CHECK(nlohmann::json::parse(take(out))["expected"].is_null());
  REQUIRE(zvass_generate("pcp", nullptr, 0, &out) == ZVASS_OK);
  const auto pcp = nlohmann::json::parse(take(out));
  CHECK(pcp["expected"] == "qf:0,0");
  REQUIRE(zvass_generate("qbf-qsos", R"({"blocks":[1],"clauses":[[1,-1,1]]})", 0, &out) == ZVASS_OK);
  CHECK(nlohmann::json::parse(take(out))["expected"] == "yes");
}

TEST_CASE("psi size table") {
  auto m = parse(kTwo);
  char* out = nullptr;
  REQUIRE(zvass_psi_size(m.get(), 3, ZVASS_JSON, &out) == ZVASS_OK);
  const auto j = nlohmann::json::parse(take(out));
  CHECK(j.dump().find("unary") != std::string::npos);
}

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
#include <random>

#include "backend.hpp"
#include "gen.hpp"
#include "oracle.hpp"
#include "support/oracles.hpp"

using namespace zvass;
using namespace zvass::gen;

namespace {

bool no_z3() { return std::system("command -v z3 >/dev/null 2>&1") != 0; }

const PcpInstance kClassic{{{"0", "100"}, {"01", "00"}, {"110", "11"}}};

Pi2Formula single(Vector a, Int z, Vector b) {
  Pi2Formula f;
  f.nx = a.size();
  f.ny = b.size();
  f.terms = {{std::move(a), z, std::move(b)}};
  f.matrix = PosBool::leaf(0);
  return f;
}

backend::Answer inclusion_answer(const Pi2Formula& phi) {
  const InclusionInstance inst = pi2pa_to_inclusion(phi);
  return backend::decide_inclusion(inst.a, inst.source_a, inst.b, inst.source_b, {}).answer;
}

}  // namespace

TEST_CASE("Diophantine systems become single-state machines") {
  const ReachInstance zero = diophantine_to_zvas({{1}}, {0});
  CHECK(zero.machine.state_count() == 1);
  CHECK(oracle::bfs(zero.machine, zero.source, zero.target, encode::Mode::kReach, 0).found());

  const ReachInstance odd = diophantine_to_zvas({{2}}, {3});
  CHECK_FALSE(oracle::bfs(odd.machine, odd.source, odd.target, encode::Mode::kReach, 10).found());
  CHECK_FALSE(ilp_bounded({{2}}, {3}, 10).has_value());

  const ReachInstance two = diophantine_to_zvas({{1, 2}}, {4});
  CHECK(two.machine.transitions().size() == 2);
  CHECK(oracle::bfs(two.machine, two.source, two.target, encode::Mode::kReach, 4).found());
  const auto x = ilp_bounded({{1, 2}}, {4}, 10);
  REQUIRE(x);
  CHECK((*x)[0] + 2 * (*x)[1] == 4);
}

TEST_CASE("ILP brute force matches the reference") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t rows = 1 + rng() % 2, cols = 1 + rng() % 2;
    Matrix a(rows, Vector(cols));
    Vector b(rows);
    for (auto& r : a) {
      for (auto& v : r) v = static_cast<Int>(rng() % 7) - 3;
    }
    for (auto& v : b) v = static_cast<Int>(rng() % 9) - 4;
    CHECK(ilp_bounded(a, b, 6).has_value() == ref::ilp_feasible(a, b, 6));
  }
}

TEST_CASE("system validation and formula shape") {
  DiophantineSystem s{{{{{1, 0}}, true}, {{{0, 1}}, false}}, {0}};
  CHECK_NOTHROW(s.validate());
  CHECK(s.columns(1) == 2);
  const pa::Formula f = to_formula(s);
  CHECK(pa::free_variables(f).empty());
  CHECK(f.op() == pa::Op::kForall);
  DiophantineSystem bad{{{{{1, 0}}, true}}, {0, 1}};
  CHECK_THROWS_AS(bad.validate(), Error);
  CHECK(system_var(0, 2).name == "x1_3");
}

TEST_CASE("Pi2 formulas validate and convert to CNF") {
  Pi2Formula f = single({1}, 0, {1});
  CHECK_NOTHROW(f.validate());
  f.matrix = PosBool::leaf(3);
  CHECK_THROWS_AS(f.validate(), Error);

  const PosBool g = PosBool::all({PosBool::any({PosBool::leaf(0), PosBool::leaf(1)}), PosBool::leaf(2)});
  const auto cnf = to_cnf(g);
  CHECK(cnf == std::vector<std::vector<std::size_t>>{{0, 1}, {2}});
  std::vector<PosBool> wide;
  for (int i = 0; i < 14; ++i) wide.push_back(PosBool::all({PosBool::leaf(0), PosBool::leaf(1)}));
  CHECK_THROWS_AS(to_cnf(PosBool::any(wide), 4096), Error);
}

TEST_CASE("Pi2 to inclusion on the basic examples" * doctest::skip(no_z3())) {
  CHECK(inclusion_answer(single({0}, 0, {0})) == backend::Answer::kYes);
  CHECK(backend::decide_sentence(to_formula(single({1}, 0, {1})), {}) == backend::Answer::kYes);
  CHECK(inclusion_answer(single({1}, 0, {1})) == backend::Answer::kYes);
  CHECK(backend::decide_sentence(to_formula(single({0}, -1, {0})), {}) == backend::Answer::kNo);
  const InclusionInstance inst = pi2pa_to_inclusion(single({0}, -1, {0}));
  const auto v = backend::decide_inclusion(inst.a, inst.source_a, inst.b, inst.source_b, {});
  CHECK(v.answer == backend::Answer::kNo);
  CHECK(v.counterexample.has_value());
}

TEST_CASE("Pi2 to inclusion: bounded reach sets for a false formula") {
  // forall x exists y. 0 >= y + 1 is false at every x
  const InclusionInstance inst = pi2pa_to_inclusion(single({0}, -1, {1}));
  const auto cx = oracle::incl_counterexample_bounded(inst.a, inst.source_a, inst.b, inst.source_b, 4, 6);
  CHECK(cx.found());
}

TEST_CASE("QSOS semantics") {
  CHECK(qsos_holds({{{1}, {1}}, 1}));
  CHECK_FALSE(qsos_holds({{{2}, {}}, 1}));
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const QsosInstance q = random_qsos2(rng, 3, 5);
    REQUIRE(q.sets.size() == 2);
    CHECK(qsos_holds(q) == ref::qsos2(q.sets[0], q.sets[1], q.target));
  }
}

TEST_CASE("QSOS2 to quantified Diophantine systems" * doctest::skip(no_z3())) {
  const std::vector<QsosInstance> cases{{{{1}, {1}}, 1}, {{{2}, {}}, 1}, {{{1, 2}, {3, 1, 2}}, 4},
                                        {{{3}, {1, 1}}, 3}, {{{}, {7, 1, 7}}, 8}, {{{}, {4}}, 1},
                                        {{{1}, {6, 2}}, 3}};
  for (const auto& q : cases) {
    const bool truth = qsos_holds(q);
    for (auto enc : {QsldeEncoding::kBinary, QsldeEncoding::kUnary}) {
      const DiophantineSystem s = qsos2_to_qslde(q, enc);
      CHECK_NOTHROW(s.validate());
      const auto a = backend::decide_sentence(to_formula(s), {});
      CHECK(a == (truth ? backend::Answer::kYes : backend::Answer::kNo));
    }
  }
}

TEST_CASE("unary layout has complement and digit rows") {
  const DiophantineSystem s = qsos2_to_qslde({{{1}, {1}}, 1}, QsldeEncoding::kUnary);
  REQUIRE(s.blocks.size() == 2);
  CHECK(s.blocks[0].universal);
  CHECK_FALSE(s.blocks[1].universal);
  CHECK(s.rows() > 1);
  // value 6 = 110b: x_i0 = 2 x_i1, x_i1 = 2 x_i2 + x_i, x_i2 = x_i
  const DiophantineSystem six = qsos2_to_qslde({{{}, {6}}, 6}, QsldeEncoding::kUnary);
  const auto& b = six.blocks[1].a;
  CHECK(b[2] == Vector{0, 0, 1, -2, 0});
  CHECK(b[3] == Vector{-1, 0, 0, 1, -2});
  CHECK(b[4] == Vector{-1, 0, 0, 0, 1});
}

TEST_CASE("QBF semantics and the QSOS reduction") {
  const Qbf yes{{1, 1}, {{1, 2, 2}, {-1, 2, 2}}};
  const Qbf no{{1, 1}, {{1, 1, 1}}};
  const Qbf taut{{1}, {{1, -1, 1}}};
  CHECK(qbf_holds(yes));
  CHECK_FALSE(qbf_holds(no));
  CHECK(qbf_holds(taut));
  CHECK(qsos_holds(qbf_to_qsos(yes)));
  CHECK_FALSE(qsos_holds(qbf_to_qsos(no)));
  CHECK(qsos_holds(qbf_to_qsos(taut)));
  CHECK_THROWS_AS(qbf_to_qsos(Qbf{{1}, {{1, 1}}}), Error);

  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    Qbf q;
    const std::size_t nblocks = 1 + rng() % 3;
    int n = 0;
    for (std::size_t b = 0; b < nblocks; ++b) {
      q.blocks.push_back(1 + rng() % 2);
      n += static_cast<int>(q.blocks.back());
    }
    const std::size_t m = 1 + rng() % 3;
    for (std::size_t c = 0; c < m; ++c) {
      std::vector<int> clause;
      for (int l = 0; l < 3; ++l) {
        const int v = 1 + static_cast<int>(rng() % n);
        clause.push_back(rng() % 2 ? v : -v);
      }
      q.clauses.push_back(clause);
    }
    const bool truth = ref::qbf(q.blocks, q.clauses);
    CHECK(qbf_holds(q) == truth);
    CHECK(qsos_holds(qbf_to_qsos(q)) == truth);
  }
}

TEST_CASE("PCP machine") {
  CHECK(pcp_is_solution(kClassic, {3, 2, 3, 1}));
  CHECK_FALSE(pcp_is_solution(kClassic, {1, 1}));
  CHECK_FALSE(pcp_is_solution(kClassic, {}));
  const Machine m = pcp_to_affine_rm(kClassic);
  CHECK(m.machine_class() == MachineClass::kZRM);
  const LetterId sep = *m.find_letter("sep");
  const StateId qf = *m.find_state("qf");

  const auto after_sep = run(m, {0, {0, 0}}, {sep});
  CHECK(after_sep == std::vector<Configuration>{{qf, {-1, -1}}});

  auto word = pcp_word(m, kClassic, {3, 2, 3, 1});
  const auto loops = run(m, {0, {0, 0}}, word);
  REQUIRE(loops.size() == 1);
  CHECK(loops[0].state == 0);
  CHECK(loops[0].counters[0] == loops[0].counters[1]);
  const Int value = loops[0].counters[0];
  CHECK(value > 0);
  for (Int i = 0; i < value; ++i) word.push_back(sep);
  CHECK(run(m, {0, {0, 0}}, word) == std::vector<Configuration>{{qf, {0, 0}}});

  const auto bad = run(m, {0, {0, 0}}, pcp_word(m, kClassic, {1, 1}));
  REQUIRE(bad.size() == 1);
  CHECK(bad[0].counters[0] != bad[0].counters[1]);
  CHECK_THROWS_AS(pcp_word(m, kClassic, {4}), Error);
}

TEST_CASE("random generators are deterministic and valid") {
  std::mt19937_64 r1(99), r2(99);
  for (int i = 0; i < 20; ++i) {
    const auto a = random_instance(r1, {});
    const auto b = random_instance(r2, {});
    CHECK(a.machine.transitions() == b.machine.transitions());
    CHECK(a.target == b.target);
    CHECK(random_normal_form(r1, 2, 2, 2).is_normal_form());
    random_normal_form(r2, 2, 2, 2);
    CHECK_NOTHROW(random_pi2(r1).validate());
    random_pi2(r2);
  }
}

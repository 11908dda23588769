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

#include "pa.hpp"

using namespace zvass;
using namespace zvass::pa;

namespace {

const Var x = nat("x"), y = nat("y"), z = integer("z");

// Independent evaluation of the atoms used below.
bool holds(Int xv, Int yv, Int zv, int which) {
  switch (which) {
    case 0: return xv - 2 * yv >= 3;
    case 1: return xv + zv == 4;
    case 2: return !(yv <= 1) || zv != 0;
    default: return xv > yv && zv < 2;
  }
}

Formula sample(int which) {
  switch (which) {
    case 0: return ge(LinExpr(x) - 2 * LinExpr(y), 3);
    case 1: return eq(LinExpr(x) + z, 4);
    case 2: return lor({lnot(le(y, 1)), ne(z, 0)});
    default: return land({gt(x, y), lt(z, 2)});
  }
}

}  // namespace

TEST_CASE("linear expressions merge and drop zero terms") {
  LinExpr e = LinExpr(x) + 2 * LinExpr(y) - LinExpr(x) + 5;
  REQUIRE(e.terms().size() == 1);
  CHECK(e.terms()[0].first == y);
  CHECK(e.terms()[0].second == 2);
  CHECK(e.constant() == 5);
  CHECK_THROWS_AS(LinExpr(nat("v")) + LinExpr(integer("v")), Error);
}

TEST_CASE("constant atoms and connectives fold") {
  CHECK(compare(3, Cmp::kGe, 2).op() == Op::kTrue);
  CHECK(compare(1, Cmp::kEq, 2).op() == Op::kFalse);
  CHECK(land({top(), sample(0)}).op() == Op::kAtom);
  CHECK(land({bottom(), sample(0)}).op() == Op::kFalse);
  CHECK(lor({top(), sample(0)}).op() == Op::kTrue);
  CHECK(land({}).op() == Op::kTrue);
  CHECK(lor({}).op() == Op::kFalse);
}

TEST_CASE("evaluate agrees with direct arithmetic") {
  for (int which = 0; which < 4; ++which) {
    for (Int xv = 0; xv <= 6; ++xv) {
      for (Int yv = 0; yv <= 3; ++yv) {
        for (Int zv = -2; zv <= 4; ++zv) {
          const Assignment a{{"x", xv}, {"y", yv}, {"z", zv}};
          CHECK(evaluate(sample(which), a) == holds(xv, yv, zv, which));
          CHECK(evaluate(to_ge_canonical(sample(which)), a) == holds(xv, yv, zv, which));
        }
      }
    }
  }
}

TEST_CASE("evaluate rejects bad input") {
  CHECK_THROWS_AS(evaluate(sample(0), {{"x", 1}}), Error);
  CHECK_THROWS_AS(evaluate(sample(0), {{"x", -1}, {"y", 0}}), Error);
  CHECK_THROWS_AS(evaluate(exists({x}, sample(0)), {{"y", 0}}), Error);
}

TEST_CASE("canonical form only uses >=") {
  std::function<void(const Formula&)> walk = [&](const Formula& f) {
    if (f.op() == Op::kAtom) CHECK(f.atom().cmp == Cmp::kGe);
    for (const auto& c : f.children()) walk(c);
  };
  for (int which = 0; which < 4; ++which) walk(to_ge_canonical(sample(which)));
}

TEST_CASE("free variables and quantifier classes") {
  const Formula f = exists({y}, land({sample(0), sample(1)}));
  CHECK(free_variables(f) == std::set<Var>{x, z});
  CHECK(is_existential(f));
  CHECK_FALSE(is_existential(lnot(f)));
  CHECK(is_existential(lnot(forall({y}, sample(0)))));
  CHECK(is_quantifier_free(sample(2)));
  CHECK_FALSE(is_quantifier_free(f));
  CHECK(is_pi2_prenex(forall({x}, exists({y}, sample(0)))));
  CHECK_FALSE(is_pi2_prenex(exists({y}, forall({x}, sample(0)))));
}

TEST_CASE("hoisting renames clashing variables") {
  std::set<std::string> taken{"y"};
  const Hoisted h = hoist_existentials(land({exists({y}, sample(0)), sample(1)}), taken);
  REQUIRE(h.vars.size() == 1);
  CHECK(h.vars[0].name != "y");
  CHECK(is_quantifier_free(h.matrix));
  CHECK(taken.count(h.vars[0].name) == 1);
  CHECK_THROWS_AS(hoist_existentials(forall({y}, sample(0)), taken), Error);
}

TEST_CASE("prenex conversion of not(exists. a and not b)") {
  const Formula a = exists({y}, ge(LinExpr(x) - y, 0));
  const Formula b = exists({y}, eq(LinExpr(x), 2 * LinExpr(y)));
  const Formula f = lnot(exists({x}, land({a, lnot(b)})));
  const Formula p = to_prenex_pi2(f);
  CHECK(is_pi2_prenex(p));
  std::set<std::string> names;
  for (const auto& v : p.bound()) names.insert(v.name);
  CHECK(names.count("x") == 1);
}

TEST_CASE("size conventions") {
  const Formula f = ge(LinExpr(x) - 2 * LinExpr(y), 3);
  CHECK(size(f, SizeConvention::kNodes) == 4);
  CHECK(size(f, SizeConvention::kUnary) == 1 + 2 + 4 + 1);
  CHECK(size(lnot(f), SizeConvention::kNodes) == 5);
  CHECK(size(exists({x, y}, f), SizeConvention::kNodes) == 7);
}

TEST_CASE("printing is deterministic") {
  CHECK(to_string(ge(LinExpr(x) - 2 * LinExpr(y), 3)) == "(x - 2*y >= 3)");
  CHECK(to_string(exists({x}, sample(0))) == to_string(exists({x}, sample(0))));
  CHECK(to_string(exists({x}, top())).find("exists x:nat") != std::string::npos);
}

TEST_CASE("bounded search finds and enumerates") {
  const Formula f = land({eq(LinExpr(x) + y, 3), ge(x, 1)});
  const auto r = sat_bounded(f, 5);
  REQUIRE(r.found());
  CHECK(evaluate(f, r.assignment));
  const auto all = enumerate_bounded(f, 5, {x});
  CHECK(all.size() == 3);
  CHECK_FALSE(sat_bounded(land({eq(2 * LinExpr(x), 3)}), 10).found());
  CHECK(sat_bounded(exists({y}, eq(LinExpr(z) + y, -1)), 3).found());
  const auto ints = enumerate_bounded(land({lt(z, 0), ge(LinExpr(z), -2)}), 4, {z});
  CHECK(ints.size() == 2);
}

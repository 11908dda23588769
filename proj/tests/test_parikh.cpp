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

#include <random>

#include "gen.hpp"
#include "model.hpp"
#include "parikh.hpp"
#include "support/oracles.hpp"

using namespace zvass;
using namespace zvass::parikh;

namespace {

// a=0, b=1, r_i = 1 + i
const MonitoredAlphabet kAb4{2, 4};
const MonitoredWord kRunning{0, 0, 1, 2, 1, 4, 0, 1, 4, 0, 2};  // a a b r1 b r3 a b r3 a r1

std::vector<MonitoredWord> all_words(std::size_t letters, std::size_t max_len) {
  std::vector<MonitoredWord> out{{}};
  std::vector<MonitoredWord> layer{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<MonitoredWord> next;
    for (const auto& w : layer) {
      for (LetterId a = 0; a < letters; ++a) {
        auto x = w;
        x.push_back(a);
        next.push_back(x);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

std::size_t factorial(std::size_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

}  // namespace

TEST_CASE("decompose the running example") {
  const Decomposition d = decompose(kAb4, kRunning);
  CHECK(d.p == 2);
  CHECK(d.sigma[2] == 3);
  CHECK(d.sigma[3] == 1);
  CHECK(d.sigma[0] == 2);
  CHECK(d.sigma[1] == 4);
  CHECK(d.segments[2] == MonitoredWord{0, 0, 1, 2, 1, 4, 0, 1});
  CHECK(d.segments[3] == MonitoredWord{0});
  CHECK(d.segments[4].empty());
}

TEST_CASE("decompose trivial words") {
  const Decomposition e = decompose({0, 2}, {});
  CHECK(e.p == 2);
  for (const auto& s : e.segments) CHECK(s.empty());
  const Decomposition r = decompose({0, 1}, {0});
  CHECK(r.p == 0);
  CHECK(r.sigma == std::vector<std::size_t>{1});
  CHECK(r.segments[0].empty());
  CHECK(r.segments[1].empty());
}

TEST_CASE("gpi_set of the running example") {
  const auto set = gpi_set(kAb4, kRunning);
  REQUIRE(set.size() == 2);
  for (const auto& g : set) {
    CHECK(g.alpha[0] == std::vector<Int>{0, 0});
    CHECK(g.alpha[1] == std::vector<Int>{0, 0});
    CHECK(g.alpha[2] == std::vector<Int>{3, 3});
    CHECK(g.alpha[3] == std::vector<Int>{1, 0});
    CHECK(g.alpha[4] == std::vector<Int>{0, 0});
    CHECK(g.sigma[2] == 3);
    CHECK(g.sigma[3] == 1);
    CHECK(is_gpi(kAb4, kRunning, g));
  }
  CHECK(set[0].sigma != set[1].sigma);
  auto swapped = set[0];
  std::swap(swapped.alpha[2], swapped.alpha[3]);
  CHECK_FALSE(is_gpi(kAb4, kRunning, swapped));
}

TEST_CASE("plain Parikh image when k = 0") {
  const auto set = gpi_set({2, 0}, {0, 1});
  REQUIRE(set.size() == 1);
  CHECK(set[0].alpha[0] == std::vector<Int>{1, 1});
  CHECK(set[0].sigma.empty());
}

TEST_CASE("empty word has every all-zero image") {
  GeneralizedParikhImage g{{{0}, {0}, {0}}, {2, 1}};
  CHECK(is_gpi({1, 2}, {}, g));
}

TEST_CASE("gpi_set refuses large k") {
  CHECK_THROWS_AS(gpi_set({1, 7}, {}), Error);
}

TEST_CASE("gpi_set, is_gpi and the reference agree on short words") {
  const MonitoredAlphabet sr{2, 2};
  for (const auto& w : all_words(4, 5)) {
    const auto set = gpi_set(sr, w);
    const Decomposition d = decompose(sr, w);
    CHECK(set.size() == factorial(d.p));
    CHECK(is_gpi(sr, w, image_of(sr, d)));
    std::set<GeneralizedParikhImage> members(set.begin(), set.end());
    // Candidates: each letter count split over the three segments, any sigma.
    Int ca = 0, cb = 0;
    for (auto x : w) {
      ca += x == 0;
      cb += x == 1;
    }
    for (Int a0 = 0; a0 <= ca; ++a0) {
      for (Int a1 = 0; a0 + a1 <= ca; ++a1) {
        for (Int b0 = 0; b0 <= cb; ++b0) {
          for (Int b1 = 0; b0 + b1 <= cb; ++b1) {
            for (const auto& sigma : {std::vector<std::size_t>{1, 2}, std::vector<std::size_t>{2, 1}}) {
              GeneralizedParikhImage g{{{a0, b0}, {a1, b1}, {ca - a0 - a1, cb - b0 - b1}}, sigma};
              const bool expected = ref::is_gpi(2, 2, w, g.alpha, g.sigma);
              CHECK(is_gpi(sr, w, g) == expected);
              CHECK(members.count(g) == static_cast<std::size_t>(expected));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("effect examples") {
  Machine one("m", MachineClass::kZVASSR, 1, {"q"},
              {{"a", Add{{1}}, false}, {"r1", Reset{0}, true}}, {{0, 0, 0}, {0, 1, 0}});
  const auto b1 = effect_matrix(one);
  CHECK(effect({{{1}, {1}}, {1}}, b1) == Vector{1});
  CHECK(effect({{{0}, {0}}, {1}}, b1) == Vector{0});

  Machine two("m", MachineClass::kZVASSR, 2, {"q"},
              {{"a", Add{{1, 0}}, false},
               {"b", Add{{0, 1}}, false},
               {"r1", Reset{0}, true},
               {"r2", Reset{1}, true}},
              {});
  const auto b2 = effect_matrix(two);
  CHECK(effect({{{1, 1}, {1, 0}, {0, 0}}, {1, 2}}, b2) == Vector{1, 0});
  CHECK_THROWS_AS(effect({{{1}, {1}}, {1}}, b2), Error);
}

TEST_CASE("effect equals simulation") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = 1 + rng() % 2, n = 1 + rng() % 2;
    Machine m = gen::random_normal_form(rng, d, n, 2);
    const auto b = effect_matrix(m);
    MonitoredWord w;
    const std::size_t len = rng() % 7;
    for (std::size_t i = 0; i < len; ++i) w.push_back(rng() % (n + d));
    const auto sim = ref::read_word(m, {0, Vector(d, 0)}, w);
    REQUIRE(sim.size() == 1);
    for (const auto& g : gpi_set(alphabet_of(m), w)) CHECK(effect(g, b) == sim.begin()->second);
  }
}

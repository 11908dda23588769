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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any of them fails. Pass criterion numbers as arguments to
// run a subset; --seed N shifts every random stream.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "backend.hpp"
#include "encode.hpp"
#include "gen.hpp"
#include "machine_io.hpp"
#include "oracle.hpp"
#include "parikh.hpp"
#include "support/oracles.hpp"

using namespace zvass;
using parikh::MonitoredWord;

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t g_seed = 0;

std::mt19937_64 stream(std::uint64_t base) { return std::mt19937_64(base + g_seed); }

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool ok = true;
  std::string detail;
  std::string first_failure;

  void fail(const std::string& why) {
    if (ok) first_failure = why;
    ok = false;
  }
};

std::string fmt(const Vector& v) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << ")";
  return out.str();
}

backend::SolverConfig solver() { return backend::SolverConfig::from_env(); }

// 1
Outcome generalized_parikh() {
  const auto t0 = Clock::now();
  Outcome o;
  const parikh::MonitoredAlphabet sr{2, 2};
  const encode::Naming nm;
  std::vector<pa::Var> projection;
  for (std::size_t i = 0; i <= 2; ++i) {
    for (std::size_t a = 1; a <= 2; ++a) projection.push_back(nm.alpha(i, a));
  }
  for (std::size_t i = 1; i <= 2; ++i) projection.push_back(nm.sigma(i));

  std::vector<MonitoredWord> layer{{}};
  std::size_t words = 0, members = 0, candidates = 0;
  for (std::size_t len = 0; len <= 6; ++len) {
    for (const auto& w : layer) {
      ++words;
      const auto listed = parikh::gpi_set(sr, w);
      const std::set<parikh::GeneralizedParikhImage> set(listed.begin(), listed.end());
      members += set.size();
      for (const auto& g : set) {
        if (!parikh::is_gpi(sr, w, g)) o.fail("is_gpi rejects a member of gpi_set");
      }

      // every split of the letter counts over the three segments
      Int ca = 0, cb = 0;
      for (auto x : w) ca += x == 0, cb += x == 1;
      for (Int a0 = 0; a0 <= ca; ++a0) {
        for (Int a1 = 0; a0 + a1 <= ca; ++a1) {
          for (Int b0 = 0; b0 <= cb; ++b0) {
            for (Int b1 = 0; b0 + b1 <= cb; ++b1) {
              for (const auto& sigma : {std::vector<std::size_t>{1, 2}, std::vector<std::size_t>{2, 1}}) {
                const parikh::GeneralizedParikhImage g{
                    {{a0, b0}, {a1, b1}, {ca - a0 - a1, cb - b0 - b1}}, sigma};
                ++candidates;
                if (parikh::is_gpi(sr, w, g) != (set.count(g) == 1)) {
                  o.fail("is_gpi and gpi_set disagree");
                }
              }
            }
          }
        }
      }

      encode::Nfa nfa;
      nfa.states = w.size() + 1;
      nfa.plain = 2;
      nfa.monitored = 2;
      for (std::size_t i = 0; i < w.size(); ++i) nfa.edges.push_back({i + 1, w[i] + 1, i + 2});
      nfa.initial = 1;
      nfa.finals = {w.size() + 1};
      const Int bound = static_cast<Int>(std::max<std::size_t>(w.size() + 1, 2));
      std::set<parikh::GeneralizedParikhImage> solved;
      for (const auto& a : pa::enumerate_bounded(encode::psi_gpi(nfa), bound, projection)) {
        parikh::GeneralizedParikhImage g;
        for (std::size_t i = 0; i <= 2; ++i) {
          g.alpha.push_back({a.at(nm.alpha(i, 1).name), a.at(nm.alpha(i, 2).name)});
        }
        for (std::size_t i = 1; i <= 2; ++i) {
          g.sigma.push_back(static_cast<std::size_t>(a.at(nm.sigma(i).name)));
        }
        solved.insert(g);
      }
      if (solved != set) o.fail("Psi_B solutions differ from gpi_set");
    }
    std::vector<MonitoredWord> next;
    for (const auto& w : layer) {
      for (LetterId a = 0; a < 4; ++a) {
        auto x = w;
        x.push_back(a);
        next.push_back(std::move(x));
      }
    }
    layer = std::move(next);
  }
  const double secs = seconds_since(t0);
  if (secs >= 120) o.fail("took " + std::to_string(secs) + "s");
  std::ostringstream d;
  d << words << " words, " << members << " images, " << candidates << " candidates, "
    << static_cast<int>(secs) << "s";
  o.detail = d.str();
  return o;
}

// 2
Outcome effect_lemma() {
  const auto t0 = Clock::now();
  Outcome o;
  auto rng = stream(2024);
  std::size_t checks = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 1 + rng() % 3, n = 1 + rng() % 3;
    const Machine m = gen::random_normal_form(rng, d, n, 2);
    const auto b = parikh::effect_matrix(m);
    for (int rep = 0; rep < 10; ++rep) {
      MonitoredWord w;
      const std::size_t len = rng() % 11;
      for (std::size_t i = 0; i < len; ++i) w.push_back(rng() % (n + d));
      const auto sim = ref::read_word(m, {0, Vector(d, 0)}, w);
      if (sim.size() != 1) {
        o.fail("simulation is not deterministic");
        continue;
      }
      for (const auto& g : parikh::gpi_set(parikh::alphabet_of(m), w)) {
        ++checks;
        if (parikh::effect(g, b) != sim.begin()->second) o.fail("effect differs from simulation");
      }
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= 60) o.fail("took " + std::to_string(secs) + "s");
  o.detail = "200 machines, " + std::to_string(checks) + " image checks, " +
             std::to_string(static_cast<int>(secs)) + "s";
  return o;
}

// 3
Outcome end_to_end() {
  const auto t0 = Clock::now();
  Outcome o;
  auto rng = stream(77);
  const auto cfg = solver();
  std::size_t yes = 0, no = 0, unknown = 0, oracle_hits = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto inst = gen::random_instance(rng, {3, 2, 3, 6, 2, true});
    const auto mode = trial % 2 == 0 ? encode::Mode::kReach : encode::Mode::kCover;
    const auto v = backend::decide(inst.machine, inst.source, inst.target, mode, cfg);
    const auto bfs = oracle::bfs(inst.machine, inst.source, inst.target, mode, 8);
    oracle_hits += bfs.found();
    switch (v.answer) {
      case backend::Answer::kYes: {
        ++yes;
        if (!v.witness || !validate_run(inst.machine, *v.witness)) {
          o.fail("witness does not simulate");
          break;
        }
        const auto& end = v.witness->end();
        bool hit = end.state == inst.target.state;
        for (std::size_t i = 0; i < end.counters.size(); ++i) {
          hit = hit && (mode == encode::Mode::kReach ? end.counters[i] == inst.target.counters[i]
                                                     : end.counters[i] >= inst.target.counters[i]);
        }
        if (!hit) o.fail("witness misses the target");
        break;
      }
      case backend::Answer::kNo: ++no; break;
      case backend::Answer::kUnknown: ++unknown; break;
    }
    if (bfs.found() && v.answer != backend::Answer::kYes) {
      o.fail("oracle found a run but the solver answered " +
             std::string(backend::answer_name(v.answer)));
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= 600) o.fail("took " + std::to_string(secs) + "s");
  std::ostringstream d;
  d << "300 instances: " << yes << " yes, " << no << " no, " << unknown << " unknown, "
    << oracle_hits << " oracle hits, " << static_cast<int>(secs) << "s";
  o.detail = d.str();
  return o;
}

// 4
Outcome dual_pipeline() {
  const auto t0 = Clock::now();
  Outcome o;
  auto rng = stream(404);
  const auto cfg = solver();
  std::size_t agree = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = gen::random_instance(rng, {3, 2, 3, 6, 2, true});
    const auto reach = backend::decide(inst.machine, inst.source, inst.target, encode::Mode::kReach, cfg);
    const auto cover = backend::decide(inst.machine, inst.source, inst.target, encode::Mode::kCover, cfg);
    const auto doubled = encode::reduce(inst.machine, inst.source, inst.target,
                                        encode::Direction::kReachToCover);
    const auto folk = encode::reduce(inst.machine, inst.source, inst.target,
                                     encode::Direction::kCoverToReach);
    const auto cover_doubled =
        backend::decide(doubled.machine, doubled.src, doubled.dst, encode::Mode::kCover, cfg);
    const auto reach_folk =
        backend::decide(folk.machine, folk.src, folk.dst, encode::Mode::kReach, cfg);
    const bool known = reach.answer != backend::Answer::kUnknown &&
                       cover.answer != backend::Answer::kUnknown;
    if (!known || reach.answer != cover_doubled.answer) {
      o.fail("reach differs from cover on the doubled machine (instance " + std::to_string(trial) + ")");
    } else if (cover.answer != reach_folk.answer) {
      o.fail("cover differs from reach with decrement loops (instance " + std::to_string(trial) + ")");
    } else {
      ++agree;
    }
  }
  o.detail = std::to_string(agree) + "/100 agree, " +
             std::to_string(static_cast<int>(seconds_since(t0))) + "s";
  return o;
}

// 5
Outcome size_bound() {
  Outcome o;
  const Machine m = parse_machine(R"(machine sized
class zvassr
dim 2
states p q
letters a b
effect a add 1 -1
effect b add 0 2
transition p a q
transition q b p
transition q a q
transition p r1 p
transition q r2 p
)");
  const auto rows = encode::psi_size_sweep(m, 6);
  const double b = static_cast<double>(rows[0].automaton_size);
  const double c = static_cast<double>(rows[0].unary_size) / (1.0 * b);
  std::ostringstream d;
  d << "|B|=" << rows[0].automaton_size << " C=" << c << " sizes";
  for (const auto& r : rows) {
    d << " " << r.unary_size;
    const double limit = 1.25 * c * static_cast<double>(r.k * r.k) * b;
    if (static_cast<double>(r.unary_size) > limit) {
      o.fail("k=" + std::to_string(r.k) + " exceeds the quadratic bound");
    }
  }
  o.detail = d.str();
  return o;
}

// 6
Outcome generators() {
  const auto t0 = Clock::now();
  Outcome o;
  const auto cfg = solver();
  auto rng = stream(606);

  std::size_t feasible = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t rows = 1 + rng() % 2, cols = 1 + rng() % 3;
    gen::Matrix a(rows, Vector(cols));
    Vector b(rows);
    for (auto& r : a) {
      for (auto& x : r) x = static_cast<Int>(rng() % 7) - 3;
    }
    for (auto& x : b) x = static_cast<Int>(rng() % 9) - 4;
    const bool brute = ref::ilp_feasible(a, b, 10);
    feasible += brute;
    const auto inst = gen::diophantine_to_zvas(a, b);
    const auto v = backend::decide(inst.machine, inst.source, inst.target, encode::Mode::kReach, cfg);
    if (brute && v.answer != backend::Answer::kYes) o.fail("6a: feasible system not reachable");
    if (v.answer == backend::Answer::kNo && brute) o.fail("6a: solver no but brute force found x");
    if (v.answer == backend::Answer::kUnknown) o.fail("6a: solver unknown");
  }

  std::size_t qsos_true = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto q = gen::random_qsos2(rng, 3, 7);
    const bool truth = ref::qsos2(q.sets[0], q.sets[1], q.target);
    qsos_true += truth;
    const auto bin = backend::decide_sentence(
        gen::to_formula(gen::qsos2_to_qslde(q, gen::QsldeEncoding::kBinary)), cfg);
    const auto un = backend::decide_sentence(
        gen::to_formula(gen::qsos2_to_qslde(q, gen::QsldeEncoding::kUnary)), cfg);
    const auto expect = truth ? backend::Answer::kYes : backend::Answer::kNo;
    if (bin != expect) o.fail("6b: binary encoding disagrees with brute force");
    if (un != expect) o.fail("6b: unary encoding disagrees with brute force");
  }

  std::size_t valid = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto phi = gen::random_pi2(rng);
    const auto direct = backend::decide_sentence(gen::to_formula(phi), cfg);
    const auto inst = gen::pi2pa_to_inclusion(phi);
    const auto incl = backend::decide_inclusion(inst.a, inst.source_a, inst.b, inst.source_b, cfg);
    valid += direct == backend::Answer::kYes;
    if (direct == backend::Answer::kUnknown || direct != incl.answer) {
      o.fail("6c: formula " + std::string(backend::answer_name(direct)) + ", inclusion " +
             std::string(backend::answer_name(incl.answer)) + " (formula " + std::to_string(trial) + ")");
    }
  }
  std::ostringstream d;
  d << "(a) 50 systems, " << feasible << " feasible; (b) 30 QSOS, " << qsos_true
    << " true; (c) 20 formulas, " << valid << " valid; " << static_cast<int>(seconds_since(t0)) << "s";
  o.detail = d.str();
  return o;
}

// 7
Outcome pcp_demo() {
  Outcome o;
  const gen::PcpInstance p{{{"0", "100"}, {"01", "00"}, {"110", "11"}}};
  std::string top, bottom;
  for (std::size_t i : {3, 2, 3, 1}) top += p.pairs[i - 1].first, bottom += p.pairs[i - 1].second;
  if (top != bottom) o.fail("the index sequence is not a solution as strings");

  const Machine m = gen::pcp_to_affine_rm(p);
  const LetterId sep = *m.find_letter("sep");
  const StateId qf = *m.find_state("qf");
  const Configuration goal{qf, {0, 0}};
  auto reaches_goal = [&](std::vector<LetterId> word, Int max_sep) {
    for (Int j = 0; j <= max_sep; ++j) {
      const auto ends = run(m, {0, {0, 0}}, word);
      if (std::find(ends.begin(), ends.end(), goal) != ends.end()) return j;
      word.push_back(sep);
    }
    return Int{-1};
  };
  const Int seps = reaches_goal(gen::pcp_word(m, p, {3, 2, 3, 1}), 5000);
  if (seps <= 0) o.fail("solution word does not reach qf(0,0)");
  if (reaches_goal(gen::pcp_word(m, p, {1, 1}), 5000) >= 0) o.fail("mismatched sequence reaches qf(0,0)");
  o.detail = "solution " + top + " reaches qf(0,0) after " + std::to_string(seps) +
             " sep steps; (1,1) never does";
  return o;
}

// 8
Outcome crafted_inclusion() {
  Outcome o;
  const auto cfg = solver();
  const Machine one = parse_machine(
      "machine one\nclass zvass\ndim 1\nstates q\nletters a\neffect a add 1\ntransition q a q\n");
  const Machine two = parse_machine(
      "machine two\nclass zvass\ndim 1\nstates q\nletters a\neffect a add 2\ntransition q a q\n");
  if (backend::decide_inclusion(one, {0, {0}}, one, {0, {0}}, cfg).answer != backend::Answer::kYes) {
    o.fail("A in A not proved");
  }
  const auto no = backend::decide_inclusion(one, {0, {0}}, two, {0, {0}}, cfg);
  if (no.answer != backend::Answer::kNo || !no.counterexample) {
    o.fail("{+1} in {+2} not refuted with a counterexample");
    return o;
  }
  if (backend::confirm_non_membership(two, {0, {0}}, *no.counterexample, cfg) != backend::Answer::kYes) {
    o.fail("solver counterexample not confirmed");
  }
  const auto minimal = oracle::incl_counterexample_bounded(one, {0, {0}}, two, {0, {0}}, 3, 6, &cfg);
  if (!minimal.found() || !minimal.confirmed || *minimal.vector != Vector{1}) {
    o.fail("smallest confirmed counterexample is not (1)");
  }
  o.detail = "A in A yes; {+1} in {+2} no, counterexample " + fmt(*no.counterexample) +
             ", smallest confirmed " + (minimal.vector ? fmt(*minimal.vector) : "none");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
  };
  const std::vector<Criterion> all{
      {1, "generalized Parikh images", generalized_parikh},
      {2, "effect lemma", effect_lemma},
      {3, "end-to-end reach/cover vs oracle", end_to_end},
      {4, "reach/cover dual pipeline", dual_pipeline},
      {5, "quadratic size bound", size_bound},
      {6, "generator ground truth", generators},
      {7, "PCP demo", pcp_demo},
      {8, "crafted inclusion", crafted_inclusion},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--seed" && i + 1 < argc) {
      g_seed = std::strtoull(argv[++i], nullptr, 10);
    } else {
      selected.insert(std::atoi(argv[i]));
    }
  }
  int failures = 0;
  for (const auto& c : all) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failures += !o.ok;
    std::printf("%s [%d] %s: %s%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                o.ok ? "" : " -- ", o.ok ? "" : o.first_failure.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}

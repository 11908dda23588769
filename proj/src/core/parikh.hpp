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

// Generalized Parikh images over a monitored alphabet.
//
// Letter ids follow the machine convention: 0..n-1 are the plain letters,
// n..n+k-1 the monitored letters r_1..r_k. Permutations are stored 1-based
// (sigma[i-1] is the image of i) to keep them readable next to the logic
// encoding, where sigma variables range over 1..k.

#ifndef ZVASS_CORE_PARIKH_HPP_
#define ZVASS_CORE_PARIKH_HPP_

#include <compare>
#include <cstddef>
#include <vector>

#include "model.hpp"

namespace zvass::parikh {

struct MonitoredAlphabet {
  std::size_t plain = 0;      // n
  std::size_t monitored = 0;  // k
};

MonitoredAlphabet alphabet_of(const Machine& m);

using MonitoredWord = std::vector<LetterId>;

struct Decomposition {
  std::size_t p = 0;
  std::vector<std::size_t> sigma;          // size k, values 1..k
  std::vector<MonitoredWord> segments;     // size k+1; empty below p
};

struct GeneralizedParikhImage {
  std::vector<std::vector<Int>> alpha;  // k+1 vectors of length n
  std::vector<std::size_t> sigma;       // size k, values 1..k
  auto operator<=>(const GeneralizedParikhImage&) const = default;
};

// Canonical decomposition: the real monitored letters are the last
// occurrences, in order of position; the dummy positions 1..p get the absent
// monitored letters in ascending order.
Decomposition decompose(const MonitoredAlphabet& sigma_r, const MonitoredWord& w);

// The image induced by a decomposition.
GeneralizedParikhImage image_of(const MonitoredAlphabet& sigma_r,
                                const Decomposition& dec);

// All generalized Parikh images of w, sorted. Members differ only in the
// order of the dummy letters, so there are exactly p! of them.
// Throws Error{kBound} when k > max_k.
std::vector<GeneralizedParikhImage> gpi_set(const MonitoredAlphabet& sigma_r,
                                            const MonitoredWord& w,
                                            std::size_t max_k = 6);

// Direct check of the definition: searches every p and every split of w.
bool is_gpi(const MonitoredAlphabet& sigma_r, const MonitoredWord& w,
            const GeneralizedParikhImage& g);

// d x n matrix whose column a is the Add vector of plain letter a.
struct EffectMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Int> entries;  // row-major
  Int at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

// Throws Error{kClass} unless m is in normal form.
EffectMatrix effect_matrix(const Machine& m);

// Counter value reached from the zero vector by any word with image g:
//   sum_{i=1..d} (B alpha_{i-1} with coordinates sigma(i..d) zeroed)
//   + B alpha_d.
// Requires k = d. Throws Error{kDimension} otherwise.
Vector effect(const GeneralizedParikhImage& g, const EffectMatrix& b);

}  // namespace zvass::parikh

#endif  // ZVASS_CORE_PARIKH_HPP_

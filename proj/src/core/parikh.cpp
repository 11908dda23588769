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

#include "parikh.hpp"

#include <algorithm>
#include <numeric>

namespace zvass::parikh {
namespace {

void check_word(const MonitoredAlphabet& a, const MonitoredWord& w) {
  for (LetterId x : w) {
    if (x >= a.plain + a.monitored) {
      throw Error(ErrorKind::kArgument, "letter id out of alphabet");
    }
  }
}

std::vector<Int> parikh_of(const MonitoredAlphabet& a, const MonitoredWord& w,
                           std::size_t from, std::size_t to) {
  std::vector<Int> v(a.plain, 0);
  for (std::size_t i = from; i < to; ++i) {
    if (w[i] < a.plain) ++v[w[i]];
  }
  return v;
}

}  // namespace

MonitoredAlphabet alphabet_of(const Machine& m) {
  return {m.plain_letter_count(), m.monitored_letter_count()};
}

Decomposition decompose(const MonitoredAlphabet& a, const MonitoredWord& w) {
  check_word(a, w);
  const std::size_t k = a.monitored;
  std::vector<std::pair<std::size_t, std::size_t>> last;  // (position, r index)
  std::vector<bool> occurs(k, false);
  for (std::size_t pos = w.size(); pos-- > 0;) {
    if (w[pos] >= a.plain) {
      const std::size_t r = w[pos] - a.plain;
      if (!occurs[r]) {
        occurs[r] = true;
        last.emplace_back(pos, r);
      }
    }
  }
  std::reverse(last.begin(), last.end());

  Decomposition dec;
  dec.p = k - last.size();
  for (std::size_t r = 0; r < k; ++r) {
    if (!occurs[r]) dec.sigma.push_back(r + 1);
  }
  for (const auto& [pos, r] : last) dec.sigma.push_back(r + 1);

  dec.segments.assign(k + 1, {});
  std::size_t start = 0;
  for (std::size_t j = 0; j < last.size(); ++j) {
    const std::size_t pos = last[j].first;
    dec.segments[dec.p + j].assign(w.begin() + start, w.begin() + pos);
    start = pos + 1;
  }
  dec.segments[k].assign(w.begin() + start, w.end());
  return dec;
}

GeneralizedParikhImage image_of(const MonitoredAlphabet& a, const Decomposition& dec) {
  GeneralizedParikhImage g;
  g.sigma = dec.sigma;
  for (std::size_t i = 0; i < dec.segments.size(); ++i) {
    const auto& seg = dec.segments[i];
    g.alpha.push_back(i < dec.p ? std::vector<Int>(a.plain, 0)
                                : parikh_of(a, seg, 0, seg.size()));
  }
  return g;
}

std::vector<GeneralizedParikhImage> gpi_set(const MonitoredAlphabet& a,
                                            const MonitoredWord& w, std::size_t max_k) {
  if (a.monitored > max_k) {
    throw Error(ErrorKind::kBound, "gpi_set: k = " + std::to_string(a.monitored) +
                                       " exceeds bound " + std::to_string(max_k));
  }
  const Decomposition dec = decompose(a, w);
  GeneralizedParikhImage base = image_of(a, dec);
  std::vector<std::size_t> dummies(base.sigma.begin(), base.sigma.begin() + dec.p);
  std::sort(dummies.begin(), dummies.end());
  std::vector<GeneralizedParikhImage> out;
  do {
    std::copy(dummies.begin(), dummies.end(), base.sigma.begin());
    out.push_back(base);
  } while (std::next_permutation(dummies.begin(), dummies.end()));
  std::sort(out.begin(), out.end());
  return out;
}

bool is_gpi(const MonitoredAlphabet& a, const MonitoredWord& w,
            const GeneralizedParikhImage& g) {
  check_word(a, w);
  const std::size_t n = a.plain;
  const std::size_t k = a.monitored;
  if (g.alpha.size() != k + 1 || g.sigma.size() != k) return false;
  for (const auto& v : g.alpha) {
    if (v.size() != n) return false;
    for (Int x : v) {
      if (x < 0) return false;
    }
  }
  {
    std::vector<std::size_t> s = g.sigma;
    std::sort(s.begin(), s.end());
    for (std::size_t i = 0; i < k; ++i) {
      if (s[i] != i + 1) return false;
    }
  }

  // allowed[i][r]: r_{r+1} may occur in segment i, i.e. r+1 in sigma(i+1..k).
  std::vector<std::vector<bool>> allowed(k + 1, std::vector<bool>(k, false));
  for (std::size_t i = 0; i <= k; ++i) {
    for (std::size_t j = i + 1; j <= k; ++j) allowed[i][g.sigma[j - 1] - 1] = true;
  }
  auto segment_ok = [&](std::size_t i, std::size_t from, std::size_t to) {
    for (std::size_t pos = from; pos < to; ++pos) {
      if (w[pos] >= n && !allowed[i][w[pos] - n]) return false;
    }
    return parikh_of(a, w, from, to) == g.alpha[i];
  };
  // Segment i starts at `from`; it ends right before an occurrence of
  // r_{sigma(i+1)}, or at the end of w when i = k.
  auto match = [&](auto&& self, std::size_t i, std::size_t from) -> bool {
    if (i == k) return segment_ok(k, from, w.size());
    const LetterId next = n + g.sigma[i] - 1;
    for (std::size_t pos = from; pos < w.size(); ++pos) {
      if (w[pos] == next && segment_ok(i, from, pos) && self(self, i + 1, pos + 1)) {
        return true;
      }
    }
    return false;
  };
  for (std::size_t p = 0; p <= k; ++p) {
    bool dummies_zero = true;
    for (std::size_t i = 0; i < p; ++i) {
      dummies_zero = dummies_zero && std::all_of(g.alpha[i].begin(), g.alpha[i].end(),
                                                 [](Int x) { return x == 0; });
    }
    if (dummies_zero && match(match, p, 0)) return true;
  }
  return false;
}

EffectMatrix effect_matrix(const Machine& m) {
  if (!m.is_normal_form()) {
    throw Error(ErrorKind::kClass, "effect_matrix: machine is not in normal form");
  }
  EffectMatrix b{m.dimension(), m.plain_letter_count(), {}};
  b.entries.assign(b.rows * b.cols, 0);
  for (std::size_t a = 0; a < b.cols; ++a) {
    const auto& off = std::get<Add>(m.letter(a).effect).offset;
    for (std::size_t r = 0; r < b.rows; ++r) b.entries[r * b.cols + a] = off[r];
  }
  return b;
}

Vector effect(const GeneralizedParikhImage& g, const EffectMatrix& b) {
  const std::size_t d = b.rows;
  if (g.sigma.size() != d || g.alpha.size() != d + 1) {
    throw Error(ErrorKind::kDimension, "effect: requires k = d");
  }
  auto times = [&](const std::vector<Int>& alpha) {
    if (alpha.size() != b.cols) {
      throw Error(ErrorKind::kDimension, "effect: alpha length differs from n");
    }
    Vector out(d, 0);
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < b.cols; ++c) out[r] += b.at(r, c) * alpha[c];
    }
    return out;
  };
  Vector total = times(g.alpha[d]);
  for (std::size_t i = 1; i <= d; ++i) {
    Vector part = times(g.alpha[i - 1]);
    for (std::size_t j = i; j <= d; ++j) part[g.sigma[j - 1] - 1] = 0;
    for (std::size_t r = 0; r < d; ++r) total[r] += part[r];
  }
  return total;
}

}  // namespace zvass::parikh

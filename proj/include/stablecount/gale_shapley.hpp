// Copyright 2026 The stablecount Authors.
//
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

#pragma once

#include <algorithm>
#include <deque>
#include <span>
#include <utility>
#include <vector>

#include "stablecount/core_types.hpp"

namespace stablecount {

enum class Side { MenPropose, WomenPropose };

using PairList = std::vector<std::pair<int, int>>;  // (man, woman), 1-based

/// Deferred acceptance. Free proposers are served from a FIFO queue, seeded
/// in `order` (default: ascending index). The result does not depend on the
/// order; the parameter exists so tests can check that.
inline Matching propose_optimal(const Instance& inst, Side side,
                                std::span<const int> order = {}) {
  const int n = inst.size();
  const bool men = side == Side::MenPropose;
  const Gender proposer_side = men ? Gender::Man : Gender::Woman;
  const Gender receiver_side = men ? Gender::Woman : Gender::Man;

  std::vector<int> next(n + 1, 0);     // next list position per proposer
  std::vector<int> engaged(n + 1, 0);  // receiver -> proposer
  std::deque<int> free;
  if (order.empty()) {
    for (int p = 1; p <= n; ++p) free.push_back(p);
  } else {
    free.assign(order.begin(), order.end());
  }

  while (!free.empty()) {
    const int p = free.front();
    free.pop_front();
    const auto list = inst.list({proposer_side, p});
    const int r = list[next[p]++];
    const int current = engaged[r];
    if (current == 0) {
      engaged[r] = p;
    } else if (inst.rank_unchecked(receiver_side, r, p) <
               inst.rank_unchecked(receiver_side, r, current)) {
      engaged[r] = p;
      free.push_back(current);
    } else {
      free.push_back(p);
    }
  }

  std::vector<int> wives(n, 0);
  for (int r = 1; r <= n; ++r) {
    if (men) {
      wives[engaged[r] - 1] = r;
    } else {
      wives[r - 1] = engaged[r];
    }
  }
  return Matching(std::move(wives));
}

/// All (M, w) that strictly prefer each other to their partners, sorted.
inline PairList blocking_pairs(const Instance& inst, const Matching& matching) {
  const int n = inst.size();
  if (matching.size() != n) throw InvalidInput("matching size differs from n");
  PairList out;
  for (int m = 1; m <= n; ++m) {
    const int wife = matching.wife_of(m);
    // Only women above his wife can block with m.
    for (int w : inst.man_list(m)) {
      if (w == wife) break;
      if (inst.woman_prefers(w, m, matching.husband_of(w))) {
        out.emplace_back(m, w);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_stable(const Instance& inst, const Matching& matching) {
  return blocking_pairs(inst, matching).empty();
}

/// Lattice join and meet: (max, min) where max gives every woman the better
/// of her two partners and min the worse. Throws InvalidInput unless both
/// inputs are stable.
inline std::pair<Matching, Matching> lattice_meet_join(const Instance& inst,
                                                       const Matching& a,
                                                       const Matching& b) {
  if (!is_stable(inst, a) || !is_stable(inst, b)) {
    throw InvalidInput("lattice_meet_join: input not stable");
  }
  const int n = inst.size();
  std::vector<int> hi(n, 0), lo(n, 0);
  for (int w = 1; w <= n; ++w) {
    const int ma = a.husband_of(w);
    const int mb = b.husband_of(w);
    const bool a_better = ma == mb || inst.woman_prefers(w, ma, mb);
    hi[(a_better ? ma : mb) - 1] = w;
    lo[(a_better ? mb : ma) - 1] = w;
  }
  return {Matching(std::move(hi)), Matching(std::move(lo))};
}

}  // namespace stablecount

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
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "stablecount/core_types.hpp"
#include "stablecount/gale_shapley.hpp"
#include "stablecount/poset.hpp"

namespace stablecount {

/// An ordered cyclic list of matched pairs (M_0,w_0) ... (M_{k-1},w_{k-1}).
/// Applying it pairs M_i with w_{i+1 mod k}.
///
/// Rotations built by this library are canonical: the cycle starts at its
/// smallest man, so cyclic shifts of the same rotation compare equal.
class Rotation {
 public:
  Rotation() = default;

  /// Throws InvalidInput if k < 2 or a man or woman repeats.
  explicit Rotation(PairList pairs) : pairs_(std::move(pairs)) {
    if (pairs_.size() < 2) throw InvalidInput("rotation needs at least 2 pairs");
    std::vector<int> men, women;
    for (auto [m, w] : pairs_) {
      men.push_back(m);
      women.push_back(w);
    }
    std::sort(men.begin(), men.end());
    std::sort(women.begin(), women.end());
    if (std::adjacent_find(men.begin(), men.end()) != men.end() ||
        std::adjacent_find(women.begin(), women.end()) != women.end()) {
      throw InvalidInput("rotation repeats a man or a woman");
    }
    auto first = std::min_element(
        pairs_.begin(), pairs_.end(),
        [](const auto& a, const auto& b) { return a.first < b.first; });
    std::rotate(pairs_.begin(), first, pairs_.end());
  }

  const PairList& pairs() const { return pairs_; }
  int size() const { return static_cast<int>(pairs_.size()); }

  bool contains_man(int m) const {
    return std::any_of(pairs_.begin(), pairs_.end(),
                       [m](const auto& p) { return p.first == m; });
  }

  /// Woman that man `pairs()[i].first` is moved to.
  int new_partner_at(int i) const {
    return pairs_[(i + 1) % pairs_.size()].second;
  }

  /// Unordered view, for comparisons that ignore the cyclic order.
  PairList sorted_pairs() const {
    PairList s = pairs_;
    std::sort(s.begin(), s.end());
    return s;
  }

  friend bool operator==(const Rotation&, const Rotation&) = default;
  friend bool operator<(const Rotation& a, const Rotation& b) {
    return a.pairs_ < b.pairs_;
  }

 private:
  PairList pairs_;
};

inline std::string to_string(const Rotation& r) {
  std::ostringstream os;
  bool first = true;
  for (auto [m, w] : r.pairs()) {
    if (!first) os << ' ';
    os << '(' << m << ',' << w << ')';
    first = false;
  }
  return os.str();
}

/// The two extreme stable matchings. Suitors are taken from each person's
/// list between these partners: on the full lists a man can still have a
/// "suitor" in the female-optimal matching (some woman ranks him above her
/// spouse there, yet below her own best stable partner), and such a woman
/// never leads to a rotation.
struct LatticeBounds {
  Matching male_optimal;
  Matching female_optimal;

  explicit LatticeBounds(const Instance& inst)
      : male_optimal(propose_optimal(inst, Side::MenPropose)),
        female_optimal(propose_optimal(inst, Side::WomenPropose)) {}
};

namespace detail {

// w is a candidate suitor for m: w ranks m above her spouse but not above
// her best stable partner.
inline bool suitor_candidate(const Instance& inst, const Matching& matching,
                             const LatticeBounds& bounds, int m, int w) {
  return inst.woman_prefers(w, m, matching.husband_of(w)) &&
         !inst.woman_prefers(w, m, bounds.female_optimal.husband_of(w));
}

}  // namespace detail

/// First woman w on m's truncated list such that m prefers his wife to w and
/// w prefers m to her husband; nullopt if none exists.
inline std::optional<int> suitor(const Instance& inst, const Matching& matching,
                                 int man, const LatticeBounds& bounds) {
  const auto list = inst.man_list(man);
  const int wife = matching.wife_of(man);
  const int last = inst.rank_unchecked(Gender::Man, man,
                                       bounds.female_optimal.wife_of(man));
  // rank is 1-based, so `pos` starts at the entry after his wife.
  for (int pos = inst.rank_unchecked(Gender::Man, man, wife); pos < last; ++pos) {
    if (detail::suitor_candidate(inst, matching, bounds, man, list[pos])) {
      return list[pos];
    }
  }
  return std::nullopt;
}

inline std::optional<int> suitor(const Instance& inst, const Matching& matching,
                                 int man) {
  return suitor(inst, matching, man, LatticeBounds(inst));
}

namespace detail {

// Follows spouse/suitor links from `start` until a woman repeats and returns
// the cycle. `suitor_of` must return the suitor of any man it is asked about.
template <typename SuitorFn>
Rotation trace_rotation(const Matching& matching, int start,
                        SuitorFn&& suitor_of) {
  PairList seq;
  std::vector<int> seen_at(matching.size() + 1, -1);  // woman -> seq index
  int man = start;
  int woman = matching.wife_of(man);
  while (true) {
    seen_at[woman] = static_cast<int>(seq.size());
    seq.emplace_back(man, woman);
    const std::optional<int> next = suitor_of(man);
    if (!next) {
      throw InternalInconsistency("man " + std::to_string(man) +
                                  " on a suitor chain has no suitor");
    }
    woman = *next;
    if (seen_at[woman] >= 0) {
      return Rotation(PairList(seq.begin() + seen_at[woman], seq.end()));
    }
    man = matching.husband_of(woman);
  }
}

}  // namespace detail

/// The rotation reached by following spouse/suitor links from `man`.
/// Throws InvalidInput if `man` has no suitor in `matching`.
inline Rotation exposed_rotation_from(const Instance& inst,
                                      const Matching& matching, int man) {
  const LatticeBounds bounds(inst);
  if (!suitor(inst, matching, man, bounds)) {
    throw InvalidInput("man " + std::to_string(man) + " has no suitor");
  }
  return detail::trace_rotation(
      matching, man, [&](int m) { return suitor(inst, matching, m, bounds); });
}

/// Pairs every M_i of the rotation with w_{i+1}. Throws InvalidInput if a
/// pair of the rotation is not in `matching`.
inline Matching apply_rotation(const Matching& matching,
                               const Rotation& rotation) {
  for (auto [m, w] : rotation.pairs()) {
    if (m < 1 || m > matching.size() || matching.wife_of(m) != w) {
      throw InvalidInput("rotation pair (" + std::to_string(m) + "," +
                         std::to_string(w) + ") not in matching");
    }
  }
  Matching out = matching;
  for (int i = 0; i < rotation.size(); ++i) {
    out.assign(rotation.pairs()[i].first, rotation.new_partner_at(i));
  }
  return out;
}

/// Output of find_all_rotations: the path male-optimal -> female-optimal.
/// `matchings[t + 1] == apply_rotation(matchings[t], rotations[t])`.
struct RotationPath {
  std::vector<Rotation> rotations;
  std::vector<Matching> matchings;  // empty when not recorded
};

/// Find-all-rotations: repeatedly take the first man (in `order`, default
/// ascending index) with a suitor, trace the exposed rotation, apply it.
///
/// Suitor scans are amortised: a man's candidate pointer only moves forward
/// because women only improve along the path, and a man without a suitor is
/// at his female-optimal partner for good. The whole search costs O(n^2)
/// list steps.
inline RotationPath find_all_rotations(const Instance& inst,
                                       std::span<const int> order = {},
                                       bool record_matchings = true) {
  const int n = inst.size();
  std::vector<int> men_order;
  if (order.empty()) {
    for (int m = 1; m <= n; ++m) men_order.push_back(m);
  } else {
    men_order.assign(order.begin(), order.end());
    std::vector<int> check = men_order;
    std::sort(check.begin(), check.end());
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(check.size()) != n || check[i] != i + 1) {
        throw InvalidInput("man order is not a permutation of [1, n]");
      }
    }
  }

  const LatticeBounds bounds(inst);
  Matching current = bounds.male_optimal;
  // cursor[m]: 0-based list position of m's next suitor candidate; last[m]:
  // position of his female-optimal partner.
  std::vector<int> cursor(n + 1, 0), last(n + 1, 0);
  for (int m = 1; m <= n; ++m) {
    cursor[m] = inst.rank_unchecked(Gender::Man, m, current.wife_of(m));
    last[m] = inst.rank_unchecked(Gender::Man, m, bounds.female_optimal.wife_of(m));
  }
  auto suitor_of = [&](int m) -> std::optional<int> {
    const auto list = inst.man_list(m);
    while (cursor[m] < last[m]) {
      const int w = list[cursor[m]];
      if (detail::suitor_candidate(inst, current, bounds, m, w)) return w;
      ++cursor[m];
    }
    return std::nullopt;
  };

  RotationPath path;
  if (record_matchings) path.matchings.push_back(current);
  std::size_t next_man = 0;  // men before this index never regain a suitor
  while (true) {
    while (next_man < men_order.size() && !suitor_of(men_order[next_man])) {
      ++next_man;
    }
    if (next_man == men_order.size()) break;
    Rotation rot = detail::trace_rotation(current, men_order[next_man], suitor_of);
    for (int i = 0; i < rot.size(); ++i) {
      const int m = rot.pairs()[i].first;
      const int w = rot.new_partner_at(i);
      current.assign(m, w);
      cursor[m] = inst.rank_unchecked(Gender::Man, m, w);
    }
    path.rotations.push_back(std::move(rot));
    if (record_matchings) path.matchings.push_back(current);
  }
  return path;
}

/// Pairs (M, w) the rotation eliminates: w moves from a man at or below M to
/// a man strictly above M. Derived from the rotation and the lists alone.
inline PairList eliminated_pairs(const Instance& inst, const Rotation& rotation) {
  PairList out;
  const int k = rotation.size();
  for (int j = 0; j < k; ++j) {
    const int w = rotation.pairs()[j].second;
    const int old_man = rotation.pairs()[j].first;
    const int new_man = rotation.pairs()[(j + k - 1) % k].first;
    const int r_old = inst.rank_unchecked(Gender::Woman, w, old_man);
    const int r_new = inst.rank_unchecked(Gender::Woman, w, new_man);
    const auto list = inst.woman_list(w);
    for (int pos = r_new; pos < r_old; ++pos) out.emplace_back(list[pos], w);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// r eliminates some (M, w) and r2 moves M to a woman he likes less than w.
inline bool explicitly_precedes(const Instance& inst, const Rotation& r,
                                const Rotation& r2) {
  if (r == r2) return false;
  const auto elim = eliminated_pairs(inst, r);
  for (int i = 0; i < r2.size(); ++i) {
    const int m = r2.pairs()[i].first;
    const int moved_to = r2.new_partner_at(i);
    for (auto [em, ew] : elim) {
      if (em == m && ew != moved_to && inst.man_prefers(m, ew, moved_to)) {
        return true;
      }
    }
  }
  return false;
}

/// Rotations in discovery order plus the precedence order on their indices.
struct RotationPoset {
  std::vector<Rotation> rotations;
  Poset order;
};

inline RotationPoset rotation_poset_from(const Instance& inst,
                                         std::vector<Rotation> rotations) {
  const int k = static_cast<int>(rotations.size());
  // Index men -> rotations containing them, and precompute elimination sets.
  std::vector<std::vector<std::pair<int, int>>> moves(inst.size() + 1);
  for (int r = 0; r < k; ++r) {
    for (int i = 0; i < rotations[r].size(); ++i) {
      moves[rotations[r].pairs()[i].first].emplace_back(
          r, rotations[r].new_partner_at(i));
    }
  }
  std::vector<std::pair<int, int>> generators;
  for (int r = 0; r < k; ++r) {
    std::vector<char> hit(k, 0);
    for (auto [m, w] : eliminated_pairs(inst, rotations[r])) {
      for (auto [r2, moved_to] : moves[m]) {
        if (r2 != r && !hit[r2] && moved_to != w &&
            inst.man_prefers(m, w, moved_to)) {
          hit[r2] = 1;
          generators.emplace_back(r, r2);
        }
      }
    }
  }
  RotationPoset out;
  out.order = Poset::from_generators(k, generators);
  out.rotations = std::move(rotations);
  return out;
}

inline RotationPoset rotation_poset(const Instance& inst,
                                    std::span<const int> order = {}) {
  return rotation_poset_from(inst,
                             find_all_rotations(inst, order, false).rotations);
}

/// Transitive reduction of the precedence order, as (lower, upper) indices.
inline std::vector<std::pair<int, int>> hasse_diagram(const RotationPoset& poset) {
  return poset.order.hasse_edges();
}

/// "rot k: (m1,w1) (m2,w2) ..." per rotation, k 1-based in discovery order.
inline void write_rotations(std::ostream& out,
                            const std::vector<Rotation>& rotations) {
  for (std::size_t i = 0; i < rotations.size(); ++i) {
    out << "rot " << (i + 1) << ": " << to_string(rotations[i]) << '\n';
  }
}

/// DOT export of the Hasse diagram; node labels are canonical rotations.
inline void write_dot(std::ostream& out, const RotationPoset& poset) {
  out << "digraph rotation_poset {\n";
  for (std::size_t i = 0; i < poset.rotations.size(); ++i) {
    out << "  r" << (i + 1) << " [label=\"" << to_string(poset.rotations[i])
        << "\"];\n";
  }
  for (auto [a, b] : hasse_diagram(poset)) {
    out << "  r" << (a + 1) << " -> r" << (b + 1) << ";\n";
  }
  out << "}\n";
}

/// Each person's list clipped to the segment between their two extreme
/// stable partners (inclusive). `men[m-1]`, `women[w-1]`.
struct TruncatedLists {
  std::vector<std::vector<int>> men;
  std::vector<std::vector<int>> women;

  friend bool operator==(const TruncatedLists&, const TruncatedLists&) = default;
};

inline TruncatedLists truncated_lists(const Instance& inst) {
  const int n = inst.size();
  const Matching best_for_men = propose_optimal(inst, Side::MenPropose);
  const Matching best_for_women = propose_optimal(inst, Side::WomenPropose);
  TruncatedLists out;
  for (int m = 1; m <= n; ++m) {
    const auto list = inst.man_list(m);
    const int from = inst.rank_unchecked(Gender::Man, m, best_for_men.wife_of(m));
    const int to = inst.rank_unchecked(Gender::Man, m, best_for_women.wife_of(m));
    out.men.emplace_back(list.begin() + (from - 1), list.begin() + to);
  }
  for (int w = 1; w <= n; ++w) {
    const auto list = inst.woman_list(w);
    const int from =
        inst.rank_unchecked(Gender::Woman, w, best_for_women.husband_of(w));
    const int to =
        inst.rank_unchecked(Gender::Woman, w, best_for_men.husband_of(w));
    out.women.emplace_back(list.begin() + (from - 1), list.begin() + to);
  }
  return out;
}

}  // namespace stablecount

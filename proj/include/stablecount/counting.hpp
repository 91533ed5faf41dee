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

#include <gmpxx.h>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <future>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "stablecount/core_types.hpp"
#include "stablecount/error.hpp"
#include "stablecount/gale_shapley.hpp"
#include "stablecount/poset.hpp"
#include "stablecount/rotations.hpp"
#include "stablecount/text.hpp"

namespace stablecount {

using Count = mpz_class;

inline constexpr int kMaxDownsetElements = 64;
inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

namespace detail {

using Mask = std::uint64_t;

inline Mask bit(int i) { return Mask{1} << i; }

// up[x]: x and everything above it; below[x]: everything strictly below x.
struct PosetMasks {
  std::vector<Mask> up;
  std::vector<Mask> below;
  Mask all = 0;
};

inline PosetMasks poset_masks(const Poset& p, int max_elements) {
  const int k = p.size();
  if (k > max_elements || k > kMaxDownsetElements) {
    throw BoundExceeded("poset has " + std::to_string(k) +
                        " elements; limit is " +
                        std::to_string(std::min(max_elements,
                                                kMaxDownsetElements)));
  }
  PosetMasks m;
  m.up.assign(k, 0);
  m.below.assign(k, 0);
  for (int a = 0; a < k; ++a) {
    m.all |= bit(a);
    m.up[a] |= bit(a);
    for (int b = 0; b < k; ++b) {
      if (p.less(a, b)) {
        m.up[a] |= bit(b);
        m.below[b] |= bit(a);
      }
    }
  }
  return m;
}

inline int lowest_minimal(const PosetMasks& m, Mask s) {
  for (Mask rest = s; rest != 0; rest &= rest - 1) {
    const int x = std::countr_zero(rest);
    if ((m.below[x] & s) == 0) return x;
  }
  return -1;  // unreachable for a non-empty subset of a partial order
}

class DownsetCounter {
 public:
  explicit DownsetCounter(PosetMasks masks) : m_(std::move(masks)) {}

  Count count(Mask s) {
    if (s == 0) return 1;
    if (auto it = memo_.find(s); it != memo_.end()) return it->second;
    Count result;
    bool free_only = true;
    for (Mask rest = s; rest != 0 && free_only; rest &= rest - 1) {
      const int x = std::countr_zero(rest);
      if (((m_.up[x] & ~bit(x)) | m_.below[x]) & s) free_only = false;
    }
    if (free_only) {
      mpz_ui_pow_ui(result.get_mpz_t(), 2, std::popcount(s));
    } else {
      const int x = lowest_minimal(m_, s);
      result = count(s & ~m_.up[x]) + count(s & ~bit(x));
    }
    memo_.emplace(s, result);
    return result;
  }

 private:
  PosetMasks m_;
  std::unordered_map<Mask, Count> memo_;
};

// Visits downsets of the subposet `s`, each extended by `taken`. The visitor
// returns false to stop; so does this function.
template <typename Fn>
bool visit_downsets(const PosetMasks& m, Mask s, Mask taken, Fn& fn) {
  if (s == 0) return fn(taken);
  const int x = lowest_minimal(m, s);
  if (!visit_downsets(m, s & ~m.up[x], taken, fn)) return false;
  return visit_downsets(m, s & ~bit(x), taken | bit(x), fn);
}

inline std::vector<int> mask_elements(Mask s) {
  std::vector<int> out;
  for (; s != 0; s &= s - 1) out.push_back(std::countr_zero(s));
  return out;
}

}  // namespace detail

/// Number of downsets (order ideals) of `poset`, exact.
inline Count count_downsets(const Poset& poset,
                            int max_elements = kMaxDownsetElements) {
  auto masks = detail::poset_masks(poset, max_elements);
  const detail::Mask all = masks.all;
  detail::DownsetCounter counter(std::move(masks));
  return counter.count(all);
}

/// Calls `fn(elements)` for every downset, elements sorted ascending, until
/// it returns false. The empty downset comes first and the full poset last.
inline void for_each_downset(
    const Poset& poset,
    const std::function<bool(const std::vector<int>&)>& fn,
    int max_elements = kMaxDownsetElements) {
  const auto masks = detail::poset_masks(poset, max_elements);
  auto visit = [&](detail::Mask d) { return fn(detail::mask_elements(d)); };
  detail::visit_downsets(masks, masks.all, 0, visit);
}

/// All downsets; throws BoundExceeded if there are more than `cap`.
inline std::vector<std::vector<int>> enumerate_downsets(
    const Poset& poset, std::size_t cap = kDefaultEnumerationCap) {
  const Count total = count_downsets(poset);
  if (total > Count(std::to_string(cap))) {
    throw BoundExceeded("poset has " + total.get_str() +
                        " downsets; enumeration cap is " + std::to_string(cap));
  }
  std::vector<std::vector<int>> out;
  for_each_downset(poset, [&](const std::vector<int>& d) {
    out.push_back(d);
    return true;
  });
  return out;
}

/// Number of stable matchings: downsets of the rotation poset.
inline Count count_stable_matchings(const Instance& inst) {
  return count_downsets(rotation_poset(inst).order);
}

/// Visits every stable matching once: for each downset, its rotations are
/// applied to the male-optimal matching in discovery order. Returns the total
/// number of stable matchings even if `fn` stops early.
inline Count for_each_stable_matching(
    const Instance& inst, const std::function<bool(const Matching&)>& fn) {
  const RotationPoset poset = rotation_poset(inst);
  const Count total = count_downsets(poset.order);
  const Matching base = propose_optimal(inst, Side::MenPropose);
  for_each_downset(poset.order, [&](const std::vector<int>& d) {
    Matching m = base;
    for (int r : d) m = apply_rotation(m, poset.rotations[r]);
    return fn(m);
  });
  return total;
}

/// Every stable matching; throws BoundExceeded above `cap`.
inline std::vector<Matching> enumerate_stable_matchings(
    const Instance& inst, std::size_t cap = kDefaultEnumerationCap) {
  const Count total = count_stable_matchings(inst);
  if (total > Count(std::to_string(cap))) {
    throw BoundExceeded("instance has " + total.get_str() +
                        " stable matchings; enumeration cap is " +
                        std::to_string(cap));
  }
  std::vector<Matching> out;
  for_each_stable_matching(inst, [&](const Matching& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

inline constexpr int kBruteForceMaxN = 8;

/// Checks all n! perfect matchings; n <= 8. Sorted by the men's wives.
inline std::vector<Matching> brute_force_stable_matchings(const Instance& inst) {
  const int n = inst.size();
  if (n > kBruteForceMaxN) {
    throw BoundExceeded("brute force needs n <= " +
                        std::to_string(kBruteForceMaxN));
  }
  std::vector<int> wives(n);
  std::iota(wives.begin(), wives.end(), 1);
  std::vector<Matching> out;
  do {
    Matching m(wives);
    if (is_stable(inst, m)) out.push_back(std::move(m));
  } while (std::next_permutation(wives.begin(), wives.end()));
  return out;
}

// ---------------------------------------------------------------------------
// Bipartite graphs and independent sets

/// Simple bipartite graph, V1 = [1, n1], V2 = [1, n2]; edges as (v1, v2).
struct BipartiteGraph {
  int n1 = 0;
  int n2 = 0;
  std::vector<std::pair<int, int>> edges;

  int edge_count() const { return static_cast<int>(edges.size()); }

  /// Vertices with no incident edge, on both sides.
  int isolated_count() const {
    std::vector<char> s1(n1 + 1, 0), s2(n2 + 1, 0);
    for (auto [u, v] : edges) {
      s1[u] = 1;
      s2[v] = 1;
    }
    int c = 0;
    for (int u = 1; u <= n1; ++u) c += !s1[u];
    for (int v = 1; v <= n2; ++v) c += !s2[v];
    return c;
  }

  friend bool operator==(const BipartiteGraph&, const BipartiteGraph&) = default;
};

/// Throws InvalidInput on out-of-range endpoints, repeated edges or isolated
/// vertices. The isolated-vertex message carries the 2^k correction factor.
inline void validate(const BipartiteGraph& g) {
  if (g.n1 < 1 || g.n2 < 1) throw InvalidInput("both sides must be non-empty");
  auto sorted = g.edges;
  for (auto [u, v] : sorted) {
    if (u < 1 || u > g.n1 || v < 1 || v > g.n2) {
      throw InvalidInput("edge (" + std::to_string(u) + "," +
                         std::to_string(v) + ") out of range");
    }
  }
  std::sort(sorted.begin(), sorted.end());
  if (auto it = std::adjacent_find(sorted.begin(), sorted.end());
      it != sorted.end()) {
    throw InvalidInput("repeated edge (" + std::to_string(it->first) + "," +
                       std::to_string(it->second) + ")");
  }
  if (const int k = g.isolated_count(); k > 0) {
    throw InvalidInput("graph has " + std::to_string(k) +
                       " isolated vertices; remove them and multiply #IS by "
                       "2^" + std::to_string(k));
  }
}

/// "bis <n1> <n2>" then "e <u> <v>" lines. Validates before returning.
inline BipartiteGraph parse_bipartite_graph(std::istream& in) {
  BipartiteGraph g;
  bool header = false;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto toks = text::tokens(text::strip_comment(raw));
    if (toks.empty()) continue;
    if (!header) {
      if (toks.size() != 3 || toks[0] != "bis") {
        throw ParseError(line_no, "expected header 'bis <n1> <n2>'");
      }
      g.n1 = detail::parse_index(toks[1], line_no, "n1");
      g.n2 = detail::parse_index(toks[2], line_no, "n2");
      if (g.n1 < 1 || g.n2 < 1) throw ParseError(line_no, "empty side");
      header = true;
      continue;
    }
    if (toks.size() != 3 || toks[0] != "e") {
      throw ParseError(line_no, "expected 'e <u> <v>'");
    }
    const int u = detail::parse_index(toks[1], line_no, "vertex");
    const int v = detail::parse_index(toks[2], line_no, "vertex");
    if (u < 1 || u > g.n1 || v < 1 || v > g.n2) {
      throw ParseError(line_no, "edge endpoint out of range");
    }
    if (std::find(g.edges.begin(), g.edges.end(), std::pair{u, v}) !=
        g.edges.end()) {
      throw ParseError(line_no, "repeated edge");
    }
    g.edges.emplace_back(u, v);
  }
  if (!header) throw ParseError(0, "missing 'bis' header");
  validate(g);
  return g;
}

inline BipartiteGraph parse_bipartite_graph(std::string_view text_in) {
  std::istringstream in{std::string(text_in)};
  return parse_bipartite_graph(in);
}

inline void write_bipartite_graph(std::ostream& out, const BipartiteGraph& g) {
  out << "bis " << g.n1 << ' ' << g.n2 << '\n';
  for (auto [u, v] : g.edges) out << "e " << u << ' ' << v << '\n';
}

/// V1 vertex u -> element u-1, V2 vertex v -> element n1+v-1; u < v per edge.
inline Poset height_one_poset(const BipartiteGraph& g) {
  std::vector<std::pair<int, int>> gen;
  for (auto [u, v] : g.edges) gen.emplace_back(u - 1, g.n1 + v - 1);
  return Poset::from_generators(g.n1 + g.n2, gen);
}

/// Maximal elements of a downset (sorted element list).
inline std::vector<int> maximal_elements(const Poset& p,
                                         const std::vector<int>& downset) {
  std::vector<int> out;
  for (int a : downset) {
    bool maximal = true;
    for (int b : downset) {
      if (p.less(a, b)) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(a);
  }
  return out;
}

/// Inverse of maximal_elements: the downward closure of `set`.
inline std::vector<int> downward_closure(const Poset& p,
                                         const std::vector<int>& set) {
  std::vector<char> in(p.size(), 0);
  for (int b : set) {
    in[b] = 1;
    for (int a = 0; a < p.size(); ++a) {
      if (p.less(a, b)) in[a] = 1;
    }
  }
  std::vector<int> out;
  for (int a = 0; a < p.size(); ++a) {
    if (in[a]) out.push_back(a);
  }
  return out;
}

inline constexpr int kPosetRouteMaxVertices = 40;
inline constexpr int kSubsetRouteMaxSide = 24;

/// #IS by downsets of the height-one poset (maximal elements of a downset
/// form an independent set, and every independent set arises once).
inline Count count_independent_sets_poset(const BipartiteGraph& g) {
  if (g.n1 + g.n2 > kPosetRouteMaxVertices) {
    throw BoundExceeded("poset route handles at most " +
                        std::to_string(kPosetRouteMaxVertices) + " vertices");
  }
  return count_downsets(height_one_poset(g));
}

/// #IS by enumerating the independent subsets S of the smaller side and
/// adding 2^(vertices of the other side with no neighbour in S).
inline Count count_independent_sets_subsets(const BipartiteGraph& g) {
  const bool first_small = g.n1 <= g.n2;
  const int small = first_small ? g.n1 : g.n2;
  const int large = first_small ? g.n2 : g.n1;
  if (small > kSubsetRouteMaxSide) {
    throw BoundExceeded("subset route handles a smaller side of at most " +
                        std::to_string(kSubsetRouteMaxSide) + " vertices");
  }
  std::vector<std::vector<char>> adj(small, std::vector<char>(large, 0));
  for (auto [u, v] : g.edges) {
    if (first_small) {
      adj[u - 1][v - 1] = 1;
    } else {
      adj[v - 1][u - 1] = 1;
    }
  }
  Count total = 0;
  std::vector<char> blocked(large);
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << small); ++s) {
    std::fill(blocked.begin(), blocked.end(), 0);
    for (int i = 0; i < small; ++i) {
      if (!(s >> i & 1)) continue;
      for (int j = 0; j < large; ++j) blocked[j] |= adj[i][j];
    }
    const auto open = std::count(blocked.begin(), blocked.end(), 0);
    Count term;
    mpz_ui_pow_ui(term.get_mpz_t(), 2, static_cast<unsigned long>(open));
    total += term;
  }
  return total;
}

/// Exact #IS. Runs every route whose size bound admits the graph (the two
/// concurrently when both apply) and throws InternalInconsistency if they
/// disagree.
inline Count count_independent_sets(const BipartiteGraph& g) {
  validate(g);
  const bool poset_ok = g.n1 + g.n2 <= kPosetRouteMaxVertices;
  const bool subset_ok = std::min(g.n1, g.n2) <= kSubsetRouteMaxSide;
  if (!poset_ok && !subset_ok) {
    throw BoundExceeded("graph too large for exact #IS");
  }
  if (!poset_ok) return count_independent_sets_subsets(g);
  if (!subset_ok) return count_independent_sets_poset(g);
  auto subsets =
      std::async(std::launch::async, [&g] { return count_independent_sets_subsets(g); });
  const Count by_poset = count_independent_sets_poset(g);
  const Count by_subsets = subsets.get();
  if (by_poset != by_subsets) {
    throw InternalInconsistency("#IS routes disagree: " + by_poset.get_str() +
                                " vs " + by_subsets.get_str());
  }
  return by_poset;
}

}  // namespace stablecount

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

// Bipartite graph -> stable matching instance with as many stable matchings
// as the graph has independent sets.
//
// With n = |E| the instance has 3n men and 3n women, numbered
//   men:   A_i = i,  B_i = n + i,  C_i = 2n + i
//   women: a_i = i,  b_i = n + i,  c_i = 2n + i        (1 <= i <= n).

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "stablecount/attribute_models.hpp"
#include "stablecount/core_types.hpp"
#include "stablecount/counting.hpp"
#include "stablecount/gale_shapley.hpp"
#include "stablecount/permutation.hpp"
#include "stablecount/rotations.hpp"

namespace stablecount {

/// Edge labels and the two permutations read off the graph. Edges are
/// labelled 1..n in lexicographic (v1, v2) order; the rho-cycle of a V1
/// vertex is its incident labels ascending, likewise sigma for V2.
struct CyclePair {
  int n = 0;
  std::vector<std::pair<int, int>> edge_of_label;  // [label-1] -> (v1, v2)
  Permutation rho;
  Permutation sigma;
  std::vector<std::vector<int>> rho_cycles;    // [v1-1], each ascending
  std::vector<std::vector<int>> sigma_cycles;  // [v2-1], each ascending

  /// Minimum of each cycle, in vertex order.
  std::vector<int> rho_reps() const { return reps(rho_cycles); }
  std::vector<int> sigma_reps() const { return reps(sigma_cycles); }

 private:
  static std::vector<int> reps(const std::vector<std::vector<int>>& cs) {
    std::vector<int> r;
    for (const auto& c : cs) r.push_back(c.front());
    return r;
  }
};

inline CyclePair edge_cycles(const BipartiteGraph& g) {
  validate(g);
  CyclePair cp;
  cp.n = g.edge_count();
  cp.edge_of_label = g.edges;
  std::sort(cp.edge_of_label.begin(), cp.edge_of_label.end());
  cp.rho_cycles.assign(g.n1, {});
  cp.sigma_cycles.assign(g.n2, {});
  for (int label = 1; label <= cp.n; ++label) {
    auto [u, v] = cp.edge_of_label[label - 1];
    cp.rho_cycles[u - 1].push_back(label);
    cp.sigma_cycles[v - 1].push_back(label);
  }
  cp.rho = Permutation::from_cycles(cp.n, cp.rho_cycles);
  cp.sigma = Permutation::from_cycles(cp.n, cp.sigma_cycles);
  return cp;
}

/// Person numbering of the generated instances.
struct ReductionLayout {
  int n;
  int A(int i) const { return i; }
  int B(int i) const { return n + i; }
  int C(int i) const { return 2 * n + i; }
  int a(int i) const { return i; }
  int b(int i) const { return n + i; }
  int c(int i) const { return 2 * n + i; }
};

namespace detail {

// Prefix followed by every other index of [1, size] in ascending order.
inline std::vector<int> complete_list(std::vector<int> prefix, int size) {
  std::vector<char> used(size + 1, 0);
  for (int x : prefix) used[x] = 1;
  for (int x = 1; x <= size; ++x) {
    if (!used[x]) prefix.push_back(x);
  }
  return prefix;
}

}  // namespace detail

/// Instance whose lists start with the partial lists of the construction,
/// for any ordering tau of the B-men's b-block (b_tau(n) first), and continue
/// with the remaining people in ascending index order.
inline Instance gen_partial_lists(const BipartiteGraph& g,
                                  const std::optional<Permutation>& tau_in = {}) {
  const CyclePair cp = edge_cycles(g);
  const int n = cp.n;
  const Permutation tau = tau_in ? *tau_in : Permutation::identity(n);
  if (tau.size() != n) {
    throw InvalidInput("tau must be a permutation of [1, " +
                       std::to_string(n) + "]");
  }
  const ReductionLayout L{n};
  const Permutation& rho = cp.rho;
  const Permutation& sigma = cp.sigma;

  std::vector<int> b_block;
  for (int t = n; t >= 1; --t) b_block.push_back(L.b(tau(t)));

  std::vector<std::vector<int>> men(3 * n), women(3 * n);
  for (const auto& cycle : cp.sigma_cycles) {
    const int e = cycle.front();
    const int p = static_cast<int>(cycle.size());
    for (int x : cycle) {
      men[L.A(x) - 1] = {L.a(x), L.b(rho(x))};
      men[L.C(x) - 1] = {L.c(x), L.a(sigma(x))};
      std::vector<int> bl = b_block;
      bl.push_back(L.a(x));
      if (sigma(x) == e) {  // last element of its sigma-cycle
        for (int gpos = p - 2; gpos >= 0; --gpos) {
          const int y = sigma.power(e, gpos);
          bl.push_back(L.c(y));
          bl.push_back(L.a(y));
        }
      }
      bl.push_back(L.c(x));
      men[L.B(x) - 1] = std::move(bl);
    }
  }
  std::vector<int> c_block;
  for (int t = n; t >= 1; --t) c_block.push_back(L.C(t));
  for (const auto& cycle : cp.rho_cycles) {
    const int f = cycle.front();
    const int q = static_cast<int>(cycle.size());
    for (int y : cycle) {
      women[L.b(y) - 1] = {L.A(rho.inverse(y)), L.B(y)};
      women[L.c(y) - 1] = {L.B(y), L.C(y)};
      std::vector<int> al = c_block;
      al.push_back(L.B(y));
      if (rho(y) == f) {  // last element of its rho-cycle
        for (int m = q - 2; m >= 0; --m) {
          const int z = rho.power(f, m);
          al.push_back(L.A(z));
          al.push_back(L.B(z));
        }
      }
      al.push_back(L.A(y));
      women[L.a(y) - 1] = std::move(al);
    }
  }
  for (auto& l : men) l = detail::complete_list(std::move(l), 3 * n);
  for (auto& l : women) l = detail::complete_list(std::move(l), 3 * n);
  return Instance::from_lists(std::move(men), std::move(women));
}

struct GeneratorOptions {
  /// Rotate (dot) or shift (Euclidean) the preference vectors of B-men and
  /// a-women by an amount far below every gap the construction relies on.
  /// The exact coordinates put some tail candidates symmetrically about
  /// these vectors, which makes the induced lists tie; the nudge only
  /// reorders such ties.
  bool break_tail_ties = true;
};

/// Three-attribute spec (angles in turns; z grows as powers of 4).
/// Requires n = |E| >= 2.
inline GeometricSpec gen_3attribute(const BipartiteGraph& g,
                                    const GeneratorOptions& opt = {}) {
  const CyclePair cp = edge_cycles(g);
  const int n = cp.n;
  if (n < 2) throw InvalidInput("three-attribute construction needs >= 2 edges");
  const ReductionLayout L{n};
  const mpq_class eps(1, n * n);
  const mpq_class phi(1, 100);
  const Coordinate sin_phi = Coordinate::sin_turns(phi);
  const Coordinate cos_phi = Coordinate::cos_turns(phi);

  GeometricSpec s;
  s.model = GeometryModel::Dot;
  s.k = 3;
  s.men.resize(3 * n);
  s.women.resize(3 * n);
  auto flat = [](const mpq_class& t, Coordinate z) {
    return Vector{Coordinate::cos_turns(t), Coordinate::sin_turns(t),
                  std::move(z)};
  };
  auto tilted = [&](const mpq_class& t) {
    return Vector{sin_phi * Coordinate::cos_turns(t),
                  sin_phi * Coordinate::sin_turns(t), cos_phi};
  };

  const int l = static_cast<int>(cp.sigma_cycles.size());
  for (int i = 1; i <= l; ++i) {
    const auto& d = cp.sigma_cycles[i - 1];
    const int p = static_cast<int>(d.size());
    const mpq_class theta = eps / (7 * p - 1);
    const mpq_class base(i - 1, l);
    const mpq_class nudge = opt.break_tail_ties ? theta / 100 : mpq_class(0);
    for (int m = 0; m < p; ++m) {
      const int x = d[m];
      const int prev = d[(m + p - 1) % p];
      const mpq_class at = base + 7 * m * theta;
      s.women[L.a(x) - 1].position = flat(at + 4 * theta, 0);
      s.women[L.b(cp.rho(x)) - 1].position =
          flat(at + 6 * theta, Coordinate::pow(4, cp.rho(x)));
      s.women[L.c(prev) - 1].position = flat(at, 0);
      s.men[L.A(x) - 1].preference = flat(at + mpq_class(14, 3) * theta, 0);
      s.men[L.B(x) - 1].preference = tilted(at + 4 * theta + nudge);
      s.men[L.C(prev) - 1].preference = flat(at + mpq_class(8, 5) * theta, 0);
    }
  }
  const int k = static_cast<int>(cp.rho_cycles.size());
  for (int i = 1; i <= k; ++i) {
    const auto& e = cp.rho_cycles[i - 1];
    const int q = static_cast<int>(e.size());
    const mpq_class omega = eps / (7 * q - 1);
    const mpq_class base(i - 1, k);
    const mpq_class nudge = opt.break_tail_ties ? omega / 100 : mpq_class(0);
    for (int m = 0; m < q; ++m) {
      const int y = e[m];
      const int prev = e[(m + q - 1) % q];
      const mpq_class at = base + 7 * m * omega;
      s.men[L.A(prev) - 1].position = flat(at, 0);
      s.men[L.B(y) - 1].position = flat(at + 4 * omega, 0);
      s.men[L.C(y) - 1].position =
          flat(at + 6 * omega, Coordinate::pow(4, y));
      s.women[L.a(y) - 1].preference = tilted(at + 4 * omega + nudge);
      s.women[L.b(y) - 1].preference = flat(at + mpq_class(8, 5) * omega, 0);
      s.women[L.c(y) - 1].preference = flat(at + mpq_class(14, 3) * omega, 0);
    }
  }
  return s;
}

/// Two-dimensional Euclidean spec with exact rational points.
inline GeometricSpec gen_2euclidean(const BipartiteGraph& g,
                                    const GeneratorOptions& opt = {}) {
  const CyclePair cp = edge_cycles(g);
  const int n = cp.n;
  const ReductionLayout L{n};
  const mpq_class eps = Coordinate::power(100, -n);
  const Coordinate far = Coordinate::pow(1000, n);
  // Far below eps^2, the smallest gap between distinct squared distances,
  // even after scaling by the largest coordinate difference (~1000^n).
  const mpq_class eta = opt.break_tail_ties
                            ? eps * eps * eps / 10000 / far.rational()
                            : mpq_class(0);
  const mpq_class three_tenths(3, 10), six_tenths(6, 10);

  GeometricSpec s;
  s.model = GeometryModel::Euclid;
  s.k = 2;
  s.men.resize(3 * n);
  s.women.resize(3 * n);
  auto pt = [](const mpq_class& x, const Coordinate& y) {
    return Vector{Coordinate(x), y};
  };

  mpq_class offset = 0;
  for (const auto& d : cp.sigma_cycles) {
    const int p = static_cast<int>(d.size());
    for (int h = 0; h < p; ++h) {
      const int x = d[h];
      const int prev = d[(h + p - 1) % p];
      const mpq_class X = offset + h + 1;
      s.women[L.a(x) - 1].position = pt(X, 0);
      s.women[L.b(cp.rho(x)) - 1].position = pt(0, X);
      s.women[L.c(prev) - 1].position = pt(offset + h + three_tenths, 0);
      s.men[L.A(x) - 1].preference = pt(X + eta, mpq_class(X - eps));
      s.men[L.B(x) - 1].preference = pt(X + eta, far);
      s.men[L.C(prev) - 1].preference = pt(offset + h + six_tenths + eta, 0);
    }
    offset += 2 * p;
  }
  offset = 0;
  for (const auto& e : cp.rho_cycles) {
    const int q = static_cast<int>(e.size());
    for (int h = 0; h < q; ++h) {
      const int y = e[h];
      const int prev = e[(h + q - 1) % q];
      const mpq_class Y = offset + h + 1;
      s.men[L.A(prev) - 1].position = pt(offset + h + three_tenths, 0);
      s.men[L.B(y) - 1].position = pt(Y, 0);
      s.men[L.C(y) - 1].position = pt(0, Y);
      s.women[L.a(y) - 1].preference = pt(Y + eta, far);
      s.women[L.b(y) - 1].preference = pt(offset + h + six_tenths + eta, 0);
      s.women[L.c(y) - 1].preference = pt(Y + eta, mpq_class(Y - eps));
    }
    offset += 2 * q;
  }
  return s;
}

/// Reads tau off the b-block at the head of man B_1's list.
inline Permutation tau_from_instance(const Instance& inst) {
  if (inst.size() % 3 != 0) throw InvalidInput("instance size is not 3n");
  const int n = inst.size() / 3;
  const ReductionLayout L{n};
  const auto list = inst.man_list(L.B(1));
  std::vector<int> tau(n);
  for (int t = 0; t < n; ++t) {
    const int w = list[t];
    if (w <= n || w > 2 * n) {
      throw InvalidInput("B-man list does not start with the b-women");
    }
    tau[n - 1 - t] = w - n;
  }
  return Permutation(std::move(tau));
}

enum class ReductionModel { Lists, Attr3, Euclid2 };

inline const char* to_string(ReductionModel m) {
  switch (m) {
    case ReductionModel::Lists: return "lists";
    case ReductionModel::Attr3: return "attr3";
    case ReductionModel::Euclid2: return "euclid2";
  }
  return "?";
}

inline std::optional<ReductionModel> parse_reduction_model(std::string_view s) {
  if (s == "lists") return ReductionModel::Lists;
  if (s == "attr3") return ReductionModel::Attr3;
  if (s == "euclid2") return ReductionModel::Euclid2;
  return std::nullopt;
}

/// Instance for `g` by the chosen route.
inline Instance reduction_instance(const BipartiteGraph& g, ReductionModel model,
                                   const GeneratorOptions& gen = {},
                                   const CertifyOptions& cert = {}) {
  switch (model) {
    case ReductionModel::Attr3:
      return instance_from_dot(gen_3attribute(g, gen), cert);
    case ReductionModel::Euclid2:
      return instance_from_euclidean(gen_2euclidean(g, gen));
    case ReductionModel::Lists:
      break;
  }
  return gen_partial_lists(g);
}

struct ReductionReport {
  bool male_optimal_ok = false;
  bool female_optimal_ok = false;
  bool rotation_forms_ok = false;
  bool poset_isomorphic_ok = false;
  bool truncated_lists_ok = false;
  bool counts_equal = false;
  Count is_count = 0;
  Count sm_count = 0;
  std::string details;

  bool all_ok() const {
    return male_optimal_ok && female_optimal_ok && rotation_forms_ok &&
           poset_isomorphic_ok && truncated_lists_ok && counts_equal;
  }
};

/// Closed forms of the two optimal matchings.
inline std::pair<Matching, Matching> expected_optima(const CyclePair& cp) {
  const int n = cp.n;
  const ReductionLayout L{n};
  std::vector<int> male(3 * n), female(3 * n);
  for (int i = 1; i <= n; ++i) {
    male[L.A(i) - 1] = L.a(i);
    male[L.B(i) - 1] = L.b(i);
    male[L.C(i) - 1] = L.c(i);
    female[L.A(cp.rho.inverse(i)) - 1] = L.b(i);
    female[L.B(i) - 1] = L.c(i);
    female[L.C(cp.sigma.inverse(i)) - 1] = L.a(i);
  }
  return {Matching(std::move(male)), Matching(std::move(female))};
}

/// Builds the instance for `g` and checks the optimal matchings, rotation
/// shapes, poset shape, truncated lists and the count against #IS(g).
/// Failures are recorded in the report, not thrown.
inline ReductionReport verify_reduction(const BipartiteGraph& g,
                                        ReductionModel model,
                                        const GeneratorOptions& gen = {},
                                        const CertifyOptions& cert = {}) {
  ReductionReport r;
  std::ostringstream why;
  const CyclePair cp = edge_cycles(g);
  const int n = cp.n;
  const ReductionLayout L{n};
  r.is_count = count_independent_sets(g);
  const Instance inst = reduction_instance(g, model, gen, cert);

  const auto [male, female] = expected_optima(cp);
  r.male_optimal_ok = propose_optimal(inst, Side::MenPropose) == male;
  r.female_optimal_ok = propose_optimal(inst, Side::WomenPropose) == female;
  if (!r.male_optimal_ok) why << "male-optimal matching differs\n";
  if (!r.female_optimal_ok) why << "female-optimal matching differs\n";

  if (model == ReductionModel::Lists) {
    r.truncated_lists_ok = true;
  } else {
    try {
      const Permutation tau = tau_from_instance(inst);
      r.truncated_lists_ok =
          truncated_lists(inst) == truncated_lists(gen_partial_lists(g, tau));
    } catch (const InvalidInput& e) {
      why << e.what() << '\n';
    }
    if (!r.truncated_lists_ok) why << "truncated lists differ from the partial lists\n";
  }

  const RotationPoset poset = rotation_poset(inst);
  // Vertex of each expected rotation: V1 vertex u -> u-1, V2 vertex v -> n1+v-1.
  std::map<PairList, int> expected;
  for (int u = 1; u <= g.n1; ++u) {
    PairList s;
    for (int x : cp.rho_cycles[u - 1]) {
      s.emplace_back(L.A(x), L.a(x));
      s.emplace_back(L.B(x), L.b(x));
    }
    std::sort(s.begin(), s.end());
    expected.emplace(s, u - 1);
  }
  for (int v = 1; v <= g.n2; ++v) {
    PairList s;
    for (int x : cp.sigma_cycles[v - 1]) {
      s.emplace_back(L.B(x), L.a(x));
      s.emplace_back(L.C(x), L.c(x));
    }
    std::sort(s.begin(), s.end());
    expected.emplace(s, g.n1 + v - 1);
  }
  std::vector<int> vertex_of(poset.rotations.size(), -1);
  std::set<int> hit;
  bool forms = poset.rotations.size() == expected.size();
  for (std::size_t i = 0; i < poset.rotations.size(); ++i) {
    auto it = expected.find(poset.rotations[i].sorted_pairs());
    if (it == expected.end() || !hit.insert(it->second).second) {
      forms = false;
      why << "unexpected rotation " << to_string(poset.rotations[i]) << '\n';
    } else {
      vertex_of[i] = it->second;
    }
  }
  r.rotation_forms_ok = forms && hit.size() == expected.size();
  if (forms && !r.rotation_forms_ok) why << "missing rotations\n";

  if (r.rotation_forms_ok) {
    std::set<std::pair<int, int>> want, got;
    for (auto [u, v] : g.edges) want.emplace(u - 1, g.n1 + v - 1);
    for (auto [a, b] : poset.order.relation()) {
      got.emplace(vertex_of[a], vertex_of[b]);
    }
    // Height one: the relation is its own transitive reduction.
    r.poset_isomorphic_ok = got == want;
    if (!r.poset_isomorphic_ok) why << "rotation poset is not the graph\n";
  }

  r.sm_count = count_downsets(poset.order);
  r.counts_equal = r.sm_count == r.is_count;
  if (!r.counts_equal) {
    why << "#SM " << r.sm_count.get_str() << " != #IS " << r.is_count.get_str()
        << '\n';
  }
  r.details = why.str();
  return r;
}

inline void write_report(std::ostream& out, const ReductionReport& r) {
  auto line = [&](const char* key, bool ok) {
    out << key << ": " << (ok ? "pass" : "FAIL") << '\n';
  };
  line("male_optimal     ", r.male_optimal_ok);
  line("female_optimal   ", r.female_optimal_ok);
  line("rotation_forms   ", r.rotation_forms_ok);
  line("poset_isomorphic ", r.poset_isomorphic_ok);
  line("truncated_lists  ", r.truncated_lists_ok);
  line("counts_equal     ", r.counts_equal);
  out << "is_count         : " << r.is_count.get_str() << '\n';
  out << "sm_count         : " << r.sm_count.get_str() << '\n';
  if (!r.details.empty()) out << r.details;
}

}  // namespace stablecount

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

#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "stablecount/counting.hpp"
#include "test_util.hpp"

namespace sc = stablecount;

namespace {

// Random order: generators only go from lower to higher index.
sc::Poset random_poset(sc::testing::Rng& rng, int k, double density) {
  std::bernoulli_distribution edge(density);
  std::vector<std::pair<int, int>> gens;
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      if (edge(rng)) gens.emplace_back(a, b);
    }
  }
  return sc::Poset::from_generators(k, gens);
}

std::set<std::vector<int>> oracle_downsets(const sc::Poset& p) {
  std::set<std::vector<int>> out;
  const int k = p.size();
  for (unsigned s = 0; s < (1u << k); ++s) {
    std::vector<int> d;
    bool closed = true;
    for (int b = 0; b < k; ++b) {
      if (!(s >> b & 1)) continue;
      d.push_back(b);
      for (int a = 0; a < k; ++a) {
        if (p.less(a, b) && !(s >> a & 1)) closed = false;
      }
    }
    if (closed) out.insert(d);
  }
  return out;
}

}  // namespace

TEST(Downsets, CountAndEnumerationMatchOracle) {
  sc::testing::Rng rng(31);
  for (int t = 0; t < 300; ++t) {
    const int k = t % 15;
    const auto p = random_poset(rng, k, (t % 7) / 7.0);
    const auto expected = oracle_downsets(p);
    EXPECT_EQ(sc::count_downsets(p), expected.size());
    const auto all = sc::enumerate_downsets(p);
    EXPECT_EQ(std::set<std::vector<int>>(all.begin(), all.end()), expected);
    EXPECT_EQ(all.size(), expected.size());
    EXPECT_TRUE(all.front().empty());
    EXPECT_EQ(static_cast<int>(all.back().size()), k);
    for (const auto& d : all) EXPECT_TRUE(p.is_downset(d));
  }
}

TEST(Downsets, ClosedForms) {
  EXPECT_EQ(sc::count_downsets(sc::Poset::chain(50)), 51);
  EXPECT_EQ(sc::count_downsets(sc::Poset::antichain(0)), 1);
  sc::Count two64;
  mpz_ui_pow_ui(two64.get_mpz_t(), 2, 64);
  EXPECT_EQ(sc::count_downsets(sc::Poset::antichain(64)), two64);
  EXPECT_THROW(sc::count_downsets(sc::Poset::antichain(65)), sc::BoundExceeded);
  EXPECT_THROW(sc::count_downsets(sc::Poset::chain(10), 9), sc::BoundExceeded);
  EXPECT_THROW(sc::enumerate_downsets(sc::Poset::antichain(12), 4095),
               sc::BoundExceeded);
}

TEST(Downsets, EarlyStop) {
  int seen = 0;
  sc::for_each_downset(sc::Poset::antichain(10), [&](const std::vector<int>&) {
    return ++seen < 5;
  });
  EXPECT_EQ(seen, 5);
}

TEST(StableMatchings, CountAndEnumerationMatchOracle) {
  sc::testing::Rng rng(32);
  for (int t = 0; t < 300; ++t) {
    const int n = 1 + t % 7;
    const auto inst = sc::testing::random_instance(rng, n);
    const auto expected = sc::testing::oracle_stable_matchings(inst);
    EXPECT_EQ(sc::count_stable_matchings(inst), expected.size());
    std::set<std::vector<int>> got;
    for (const auto& m : sc::enumerate_stable_matchings(inst)) got.insert(m.wives());
    EXPECT_EQ(got, expected);
    std::set<std::vector<int>> brute;
    for (const auto& m : sc::brute_force_stable_matchings(inst)) brute.insert(m.wives());
    EXPECT_EQ(brute, expected);
  }
}

TEST(StableMatchings, Bounds) {
  sc::testing::Rng rng(33);
  EXPECT_THROW(sc::brute_force_stable_matchings(sc::testing::random_instance(rng, 9)),
               sc::BoundExceeded);
  const auto inst = sc::parse_instance(
      "n 3\nm 1: 1 2 3\nm 2: 2 3 1\nm 3: 3 1 2\n"
      "w 1: 2 3 1\nw 2: 3 1 2\nw 3: 1 2 3\n");
  EXPECT_THROW(sc::enumerate_stable_matchings(inst, 2), sc::BoundExceeded);
  int shown = 0;
  const auto total = sc::for_each_stable_matching(inst, [&](const sc::Matching&) {
    return ++shown < 1;
  });
  EXPECT_EQ(shown, 1);
  EXPECT_EQ(total, 3);
}

TEST(BipartiteGraph, ParseValidateWrite) {
  const auto g = sc::parse_bipartite_graph("# path\nbis 2 2\ne 1 1\ne 2 1\ne 2 2\n");
  EXPECT_EQ(g.edge_count(), 3);
  std::ostringstream out;
  sc::write_bipartite_graph(out, g);
  EXPECT_EQ(out.str(), "bis 2 2\ne 1 1\ne 2 1\ne 2 2\n");
  auto line = [](const char* text) {
    try {
      sc::parse_bipartite_graph(text);
    } catch (const sc::ParseError& e) {
      return e.line();
    }
    return -1;
  };
  EXPECT_EQ(line("bis 2\n"), 1);
  EXPECT_EQ(line("bis 1 1\ne 1 2\n"), 2);
  EXPECT_EQ(line("bis 1 1\ne 1 1\ne 1 1\n"), 3);
  EXPECT_EQ(line("bis 1 1\nf 1 1\n"), 2);
  EXPECT_EQ(line(""), 0);
  try {
    sc::parse_bipartite_graph("bis 2 2\ne 1 1\n");
    FAIL();
  } catch (const sc::InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("2^2"), std::string::npos);
  }
}

TEST(IndependentSets, RoutesMatchOracle) {
  sc::testing::Rng rng(34);
  for (int t = 0; t < 300; ++t) {
    const auto g = sc::testing::random_graph(rng, 1 + t % 14);
    const auto expected = sc::testing::oracle_independent_sets(g);
    if (g.n1 + g.n2 <= 20) {
      EXPECT_EQ(sc::testing::oracle_independent_sets_brute(g), expected);
    }
    EXPECT_EQ(sc::count_independent_sets(g), expected);
    EXPECT_EQ(sc::count_independent_sets_poset(g), expected);
    EXPECT_EQ(sc::count_independent_sets_subsets(g), expected);
  }
}

TEST(IndependentSets, KnownValues) {
  EXPECT_EQ(sc::count_independent_sets({1, 1, {{1, 1}}}), 3);
  EXPECT_EQ(sc::count_independent_sets(sc::testing::graph_3x4()), 29);
  // Complete K_{a,b}: 2^a + 2^b - 1.
  sc::BipartiteGraph k{5, 7, {}};
  for (int u = 1; u <= 5; ++u) {
    for (int v = 1; v <= 7; ++v) k.edges.emplace_back(u, v);
  }
  EXPECT_EQ(sc::count_independent_sets(k), 32 + 128 - 1);
  // Perfect matching on 20 + 20 vertices: 3^20, both routes in range.
  sc::BipartiteGraph m{20, 20, {}};
  for (int i = 1; i <= 20; ++i) m.edges.emplace_back(i, i);
  sc::Count three20;
  mpz_ui_pow_ui(three20.get_mpz_t(), 3, 20);
  EXPECT_EQ(sc::count_independent_sets(m), three20);
  // Twelve stars with 3 or 2 leaves: 42 vertices, so only the subset route.
  sc::BipartiteGraph stars{30, 12, {}};
  for (int u = 1; u <= 30; ++u) stars.edges.emplace_back(u, (u - 1) % 12 + 1);
  EXPECT_THROW(sc::count_independent_sets_poset(stars), sc::BoundExceeded);
  EXPECT_EQ(sc::count_independent_sets(stars), sc::Count("8303765625"));
  // 50 + 50 matching is out of range for both.
  sc::BipartiteGraph big{50, 50, {}};
  for (int i = 1; i <= 50; ++i) big.edges.emplace_back(i, i);
  EXPECT_THROW(sc::count_independent_sets(big), sc::BoundExceeded);
}

TEST(IndependentSets, HeightOnePosetShape) {
  const auto g = sc::testing::graph_4x5();
  const auto p = sc::height_one_poset(g);
  EXPECT_EQ(p.size(), 9);
  EXPECT_EQ(p.height(), 1);
  EXPECT_EQ(p.relation().size(), g.edges.size());
}

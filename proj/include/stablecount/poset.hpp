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
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "stablecount/error.hpp"

namespace stablecount {

/// A finite strict partial order on elements 0..size-1.
class Poset {
 public:
  Poset() = default;

  /// Transitive closure of `generators` (pairs (a, b) meaning a < b),
  /// computed by composing the relation with itself until it stops growing.
  /// Throws InternalInconsistency if the closure is not antisymmetric.
  static Poset from_generators(int size,
                               const std::vector<std::pair<int, int>>& generators) {
    Poset p;
    p.size_ = size;
    p.less_.assign(size, std::vector<char>(size, 0));
    for (auto [a, b] : generators) {
      if (a < 0 || b < 0 || a >= size || b >= size) {
        throw InvalidInput("poset generator out of range");
      }
      p.less_[a][b] = 1;
    }
    bool grew = true;
    while (grew) {
      grew = false;
      auto next = p.less_;
      for (int a = 0; a < size; ++a) {
        for (int b = 0; b < size; ++b) {
          if (!p.less_[a][b]) continue;
          for (int c = 0; c < size; ++c) {
            if (p.less_[b][c] && !next[a][c]) {
              next[a][c] = 1;
              grew = true;
            }
          }
        }
      }
      p.less_ = std::move(next);
    }
    for (int a = 0; a < size; ++a) {
      if (p.less_[a][a]) {
        throw InternalInconsistency("precedence relation has a cycle through "
                                    "element " + std::to_string(a));
      }
    }
    return p;
  }

  static Poset chain(int k) {
    std::vector<std::pair<int, int>> g;
    for (int i = 0; i + 1 < k; ++i) g.emplace_back(i, i + 1);
    return from_generators(k, g);
  }
  static Poset antichain(int k) { return from_generators(k, {}); }

  int size() const { return size_; }
  bool less(int a, int b) const { return less_[a][b] != 0; }

  bool comparable(int a, int b) const {
    return a == b || less(a, b) || less(b, a);
  }

  /// Cover relation (transitive reduction), as sorted (lower, upper) pairs.
  std::vector<std::pair<int, int>> hasse_edges() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < size_; ++a) {
      for (int b = 0; b < size_; ++b) {
        if (!less(a, b)) continue;
        bool covered = true;
        for (int c = 0; c < size_ && covered; ++c) {
          if (less(a, c) && less(c, b)) covered = false;
        }
        if (covered) out.emplace_back(a, b);
      }
    }
    return out;
  }

  /// Every (a, b) with a < b.
  std::vector<std::pair<int, int>> relation() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < size_; ++a) {
      for (int b = 0; b < size_; ++b) {
        if (less(a, b)) out.emplace_back(a, b);
      }
    }
    return out;
  }

  bool is_downset(const std::vector<int>& elements) const {
    std::vector<char> in(size_, 0);
    for (int e : elements) in[e] = 1;
    for (int b : elements) {
      for (int a = 0; a < size_; ++a) {
        if (less(a, b) && !in[a]) return false;
      }
    }
    return true;
  }

  /// Length of the longest chain minus one (0 for an antichain).
  int height() const {
    std::vector<int> depth(size_, 0);
    int best = 0;
    // Elements are processed repeatedly until depths stabilise; fine at the
    // sizes used here.
    bool changed = true;
    while (changed) {
      changed = false;
      for (int a = 0; a < size_; ++a) {
        for (int b = 0; b < size_; ++b) {
          if (less(a, b) && depth[b] < depth[a] + 1) {
            depth[b] = depth[a] + 1;
            best = std::max(best, depth[b]);
            changed = true;
          }
        }
      }
    }
    return best;
  }

 private:
  int size_ = 0;
  std::vector<std::vector<char>> less_;
};

}  // namespace stablecount

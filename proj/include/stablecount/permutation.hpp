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
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "stablecount/error.hpp"
#include "stablecount/text.hpp"

namespace stablecount {

/// Permutation of [1, n].
class Permutation {
 public:
  Permutation() = default;

  /// `image[i-1]` is the image of i. Throws InvalidInput unless bijective.
  explicit Permutation(std::vector<int> image) : image_(std::move(image)) {
    const int n = size();
    inverse_.assign(n, 0);
    for (int i = 0; i < n; ++i) {
      const int v = image_[i];
      if (v < 1 || v > n || inverse_[v - 1] != 0) {
        throw InvalidInput("not a permutation of [1, " + std::to_string(n) +
                           "]");
      }
      inverse_[v - 1] = i + 1;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    return Permutation(std::move(v));
  }

  /// Each cycle lists x, p(x), p(p(x)), ... .
  static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
    std::vector<int> v(n, 0);
    for (const auto& c : cycles) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] < 1 || c[i] > n || v[c[i] - 1] != 0) {
          throw InvalidInput("cycles do not describe a permutation");
        }
        v[c[i] - 1] = c[(i + 1) % c.size()];
      }
    }
    return Permutation(std::move(v));
  }

  int size() const { return static_cast<int>(image_.size()); }
  int operator()(int x) const { return image_[x - 1]; }
  int inverse(int x) const { return inverse_[x - 1]; }

  /// p^k(x) for any integer k.
  int power(int x, int k) const {
    for (; k > 0; --k) x = (*this)(x);
    for (; k < 0; ++k) x = inverse(x);
    return x;
  }

  /// Cycles in order of their smallest element, each starting there.
  std::vector<std::vector<int>> cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(size() + 1, 0);
    for (int x = 1; x <= size(); ++x) {
      if (seen[x]) continue;
      std::vector<int> c;
      for (int y = x; !seen[y]; y = (*this)(y)) {
        seen[y] = 1;
        c.push_back(y);
      }
      out.push_back(std::move(c));
    }
    return out;
  }

  const std::vector<int>& images() const { return image_; }

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.image_ == b.image_;
  }

 private:
  std::vector<int> image_;
  std::vector<int> inverse_;
};

/// "(1,2,3)(4,5)(6)".
inline std::string cycle_notation(const std::vector<std::vector<int>>& cycles) {
  std::ostringstream os;
  for (const auto& c : cycles) {
    os << '(';
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << ')';
  }
  return os.str();
}

/// One-line notation, comma or whitespace separated: "3,1,2" or "3 1 2".
inline Permutation parse_permutation(std::string_view s) {
  std::string buf(s);
  std::replace(buf.begin(), buf.end(), ',', ' ');
  std::vector<int> v;
  for (auto tok : text::tokens(buf)) {
    auto x = text::parse_int(tok);
    if (!x) throw InvalidInput("bad permutation entry '" + std::string(tok) + "'");
    v.push_back(*x);
  }
  if (v.empty()) throw InvalidInput("empty permutation");
  return Permutation(std::move(v));
}

}  // namespace stablecount

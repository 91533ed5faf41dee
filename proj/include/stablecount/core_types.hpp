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

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stablecount/error.hpp"
#include "stablecount/text.hpp"

namespace stablecount {

enum class Gender { Man, Woman };

/// A person of an instance. Indices are 1-based on every interface.
struct PersonId {
  Gender side;
  int index;

  static PersonId man(int i) { return {Gender::Man, i}; }
  static PersonId woman(int j) { return {Gender::Woman, j}; }

  friend bool operator==(const PersonId&, const PersonId&) = default;
};

/// Complete strict preference lists for n men and n women.
///
/// Immutable once built. Rank tables are computed at construction so that
/// `rank` and `prefers` are O(1).
class Instance {
 public:
  /// Builds an instance from 1-based lists, most preferred first. Every list
  /// must be a permutation of [1, n]; throws InvalidInput otherwise.
  static Instance from_lists(std::vector<std::vector<int>> men,
                             std::vector<std::vector<int>> women) {
    const int n = static_cast<int>(men.size());
    if (n < 1) throw InvalidInput("instance must have n >= 1");
    if (static_cast<int>(women.size()) != n) {
      throw InvalidInput("men and women counts differ");
    }
    Instance inst;
    inst.n_ = n;
    inst.men_ = std::move(men);
    inst.women_ = std::move(women);
    inst.men_rank_ = rank_table(inst.men_, n, "man");
    inst.women_rank_ = rank_table(inst.women_, n, "woman");
    return inst;
  }

  int size() const { return n_; }

  std::span<const int> list(PersonId p) const {
    check_person(p);
    return p.side == Gender::Man ? men_[p.index - 1] : women_[p.index - 1];
  }
  std::span<const int> man_list(int m) const { return list(PersonId::man(m)); }
  std::span<const int> woman_list(int w) const {
    return list(PersonId::woman(w));
  }

  /// 1-based position of `candidate` on `person`'s list.
  int rank(PersonId person, int candidate) const {
    check_person(person);
    if (candidate < 1 || candidate > n_) {
      throw InvalidInput("candidate " + std::to_string(candidate) +
                         " out of range [1, " + std::to_string(n_) + "]");
    }
    return rank_unchecked(person.side, person.index, candidate);
  }

  bool prefers(PersonId person, int x, int y) const {
    if (x == y) throw InvalidInput("prefers() needs two distinct candidates");
    return rank(person, x) < rank(person, y);
  }

  // Hot-path accessors without range checks; callers guarantee validity.
  int rank_unchecked(Gender side, int person, int candidate) const {
    return side == Gender::Man ? men_rank_[person - 1][candidate - 1]
                               : women_rank_[person - 1][candidate - 1];
  }
  bool man_prefers(int m, int w1, int w2) const {
    return men_rank_[m - 1][w1 - 1] < men_rank_[m - 1][w2 - 1];
  }
  bool woman_prefers(int w, int m1, int m2) const {
    return women_rank_[w - 1][m1 - 1] < women_rank_[w - 1][m2 - 1];
  }

  const std::vector<std::vector<int>>& men_lists() const { return men_; }
  const std::vector<std::vector<int>>& women_lists() const { return women_; }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.men_ == b.men_ && a.women_ == b.women_;
  }

 private:
  Instance() = default;

  static std::vector<std::vector<int>> rank_table(
      const std::vector<std::vector<int>>& lists, int n, const char* who) {
    std::vector<std::vector<int>> ranks(n, std::vector<int>(n, 0));
    for (int p = 0; p < n; ++p) {
      if (static_cast<int>(lists[p].size()) != n) {
        throw InvalidInput(std::string(who) + " " + std::to_string(p + 1) +
                           ": list has length " +
                           std::to_string(lists[p].size()) + ", expected " +
                           std::to_string(n));
      }
      for (int pos = 0; pos < n; ++pos) {
        const int c = lists[p][pos];
        if (c < 1 || c > n || ranks[p][c - 1] != 0) {
          throw InvalidInput(std::string(who) + " " + std::to_string(p + 1) +
                             ": list not a permutation");
        }
        ranks[p][c - 1] = pos + 1;
      }
    }
    return ranks;
  }

  void check_person(PersonId p) const {
    if (p.index < 1 || p.index > n_) {
      throw InvalidInput("person index " + std::to_string(p.index) +
                         " out of range [1, " + std::to_string(n_) + "]");
    }
  }

  int n_ = 0;
  std::vector<std::vector<int>> men_, women_;
  std::vector<std::vector<int>> men_rank_, women_rank_;
};

/// A perfect matching, stored in both directions.
class Matching {
 public:
  /// `wives[m-1]` is the 1-based wife of man m; must be a bijection.
  explicit Matching(std::vector<int> wives) : wife_(std::move(wives)) {
    const int n = static_cast<int>(wife_.size());
    husband_.assign(n, 0);
    for (int m = 0; m < n; ++m) {
      const int w = wife_[m];
      if (w < 1 || w > n || husband_[w - 1] != 0) {
        throw InvalidInput("matching is not a bijection");
      }
      husband_[w - 1] = m + 1;
    }
  }

  int size() const { return static_cast<int>(wife_.size()); }
  int wife_of(int m) const { return wife_[m - 1]; }
  int husband_of(int w) const { return husband_[w - 1]; }
  const std::vector<int>& wives() const { return wife_; }

  /// Re-pairs man m with woman w. Leaves the structure inconsistent until the
  /// caller has finished a full cyclic exchange; used by rotation application.
  void assign(int m, int w) {
    wife_[m - 1] = w;
    husband_[w - 1] = m;
  }

  friend bool operator==(const Matching& a, const Matching& b) {
    return a.wife_ == b.wife_;
  }
  friend bool operator<(const Matching& a, const Matching& b) {
    return a.wife_ < b.wife_;
  }

 private:
  std::vector<int> wife_;
  std::vector<int> husband_;
};

namespace detail {

inline int parse_index(std::string_view tok, int line, const char* what) {
  auto v = text::parse_int(tok);
  if (!v) {
    throw ParseError(line, std::string("expected integer ") + what +
                               ", got '" + std::string(tok) + "'");
  }
  return *v;
}

}  // namespace detail

/// Parses the line-oriented instance format:
///
///     n <N>
///     m <i>: <j1> ... <jN>     (N lines)
///     w <j>: <i1> ... <iN>     (N lines)
///
/// '#' starts a comment. Lines starting with "pair" are ignored so that a
/// matching may follow the instance in the same stream.
inline Instance parse_instance(std::istream& in) {
  std::string raw;
  int line_no = 0;
  int n = 0;
  int header_line = 0;
  std::vector<std::vector<int>> men, women;
  std::vector<int> men_line, women_line;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto toks = text::tokens(text::strip_comment(raw));
    if (toks.empty()) continue;
    if (n == 0) {
      if (toks.size() != 2 || toks[0] != "n") {
        throw ParseError(line_no, "malformed header, expected 'n <N>'");
      }
      n = detail::parse_index(toks[1], line_no, "n");
      if (n < 1) throw ParseError(line_no, "malformed header, n must be >= 1");
      header_line = line_no;
      men.assign(n, {});
      women.assign(n, {});
      men_line.assign(n, 0);
      women_line.assign(n, 0);
      continue;
    }
    if (toks[0] == "pair") continue;
    if (toks[0] != "m" && toks[0] != "w") {
      throw ParseError(line_no, "expected 'm <i>:' or 'w <j>:' line");
    }
    const bool is_man = toks[0] == "m";
    if (toks.size() < 2 || toks[1].empty() || toks[1].back() != ':') {
      throw ParseError(line_no, "expected '<index>:' after '" +
                                    std::string(toks[0]) + "'");
    }
    const std::string_view idx_tok = toks[1].substr(0, toks[1].size() - 1);
    const int idx = detail::parse_index(idx_tok, line_no, "person index");
    if (idx < 1 || idx > n) {
      throw ParseError(line_no, "n mismatch: person index " +
                                    std::to_string(idx) + " outside [1, " +
                                    std::to_string(n) + "]");
    }
    auto& seen = is_man ? men_line : women_line;
    if (seen[idx - 1] != 0) {
      throw ParseError(line_no, std::string("duplicate person line for ") +
                                    (is_man ? "man " : "woman ") +
                                    std::to_string(idx) + " (first on line " +
                                    std::to_string(seen[idx - 1]) + ")");
    }
    seen[idx - 1] = line_no;
    std::vector<int> list;
    for (std::size_t t = 2; t < toks.size(); ++t) {
      list.push_back(detail::parse_index(toks[t], line_no, "list entry"));
    }
    if (static_cast<int>(list.size()) != n) {
      throw ParseError(line_no, "n mismatch: list has " +
                                    std::to_string(list.size()) +
                                    " entries, expected " + std::to_string(n));
    }
    std::vector<char> hit(n, 0);
    for (int c : list) {
      if (c < 1 || c > n || hit[c - 1]) {
        throw ParseError(line_no, "list not a permutation");
      }
      hit[c - 1] = 1;
    }
    (is_man ? men : women)[idx - 1] = std::move(list);
  }
  if (n == 0) throw ParseError(0, "malformed header, missing 'n <N>'");
  for (int i = 0; i < n; ++i) {
    if (men_line[i] == 0) {
      throw ParseError(header_line, "n mismatch: no list for man " +
                                        std::to_string(i + 1));
    }
    if (women_line[i] == 0) {
      throw ParseError(header_line, "n mismatch: no list for woman " +
                                        std::to_string(i + 1));
    }
  }
  return Instance::from_lists(std::move(men), std::move(women));
}

inline Instance parse_instance(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_instance(in);
}

inline void write_instance(std::ostream& out, const Instance& inst) {
  const int n = inst.size();
  out << "n " << n << '\n';
  for (int m = 1; m <= n; ++m) {
    out << "m " << m << ':';
    for (int w : inst.man_list(m)) out << ' ' << w;
    out << '\n';
  }
  for (int w = 1; w <= n; ++w) {
    out << "w " << w << ':';
    for (int m : inst.woman_list(w)) out << ' ' << m;
    out << '\n';
  }
}

inline std::string to_string(const Instance& inst) {
  std::ostringstream os;
  write_instance(os, inst);
  return os.str();
}

/// "pair <man> <woman>" per line, sorted by man.
inline void write_matching(std::ostream& out, const Matching& m) {
  for (int man = 1; man <= m.size(); ++man) {
    out << "pair " << man << ' ' << m.wife_of(man) << '\n';
  }
}

/// Reads every "pair <m> <w>" line of a stream (other lines are skipped).
/// Returns nullopt when the stream holds no pair lines.
inline std::optional<Matching> parse_matching(std::istream& in, int n) {
  std::string raw;
  int line_no = 0;
  std::vector<int> wives(n, 0);
  bool any = false;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto toks = text::tokens(text::strip_comment(raw));
    if (toks.empty() || toks[0] != "pair") continue;
    if (toks.size() != 3) throw ParseError(line_no, "expected 'pair <m> <w>'");
    const int m = detail::parse_index(toks[1], line_no, "man");
    const int w = detail::parse_index(toks[2], line_no, "woman");
    if (m < 1 || m > n || w < 1 || w > n) {
      throw ParseError(line_no, "pair index outside [1, " + std::to_string(n) +
                                    "]");
    }
    if (wives[m - 1] != 0) {
      throw ParseError(line_no, "duplicate pair for man " + std::to_string(m));
    }
    wives[m - 1] = w;
    any = true;
  }
  if (!any) return std::nullopt;
  for (int m = 0; m < n; ++m) {
    if (wives[m] == 0) {
      throw ParseError(0, "matching has no pair for man " +
                              std::to_string(m + 1));
    }
  }
  try {
    return Matching(std::move(wives));
  } catch (const InvalidInput& e) {
    throw ParseError(0, e.what());
  }
}

}  // namespace stablecount

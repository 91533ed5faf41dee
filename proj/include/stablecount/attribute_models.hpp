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
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stablecount/core_types.hpp"
#include "stablecount/counting.hpp"
#include "stablecount/error.hpp"
#include "stablecount/interval.hpp"
#include "stablecount/rotations.hpp"
#include "stablecount/text.hpp"

namespace stablecount {

// ---------------------------------------------------------------------------
// Symbolic coordinates

/// cos or sin of 2*pi*turns.
struct TrigFactor {
  bool sine = false;
  mpq_class turns;

  friend bool operator==(const TrigFactor& a, const TrigFactor& b) {
    return a.sine == b.sine && a.turns == b.turns;
  }
};

/// base^exponent, exact.
struct PowFactor {
  mpq_class base;
  int exponent = 0;

  friend bool operator==(const PowFactor& a, const PowFactor& b) {
    return a.base == b.base && a.exponent == b.exponent;
  }
};

/// coefficient * product of pow factors * product of trig factors.
class Coordinate {
 public:
  Coordinate() = default;
  Coordinate(const mpq_class& value) : coef_(value) {  // NOLINT: implicit
    coef_.canonicalize();
  }
  Coordinate(long value) : coef_(value) {}               // NOLINT: implicit

  static Coordinate cos_turns(const mpq_class& t) {
    Coordinate c(1);
    c.trig_.push_back({false, t});
    c.trig_.back().turns.canonicalize();
    return c;
  }
  static Coordinate sin_turns(const mpq_class& t) {
    Coordinate c(1);
    c.trig_.push_back({true, t});
    c.trig_.back().turns.canonicalize();
    return c;
  }
  static Coordinate pow(const mpq_class& base, int exponent) {
    Coordinate c(1);
    c.pows_.push_back({base, exponent});
    c.pows_.back().base.canonicalize();
    return c;
  }

  friend Coordinate operator*(Coordinate a, const Coordinate& b) {
    a.coef_ *= b.coef_;
    a.pows_.insert(a.pows_.end(), b.pows_.begin(), b.pows_.end());
    a.trig_.insert(a.trig_.end(), b.trig_.begin(), b.trig_.end());
    return a;
  }

  const mpq_class& coefficient() const { return coef_; }
  const std::vector<PowFactor>& pows() const { return pows_; }
  const std::vector<TrigFactor>& trig() const { return trig_; }
  bool is_rational() const { return trig_.empty(); }

  /// coefficient times the pow factors.
  mpq_class exact_part() const {
    mpq_class v = coef_;
    for (const auto& p : pows_) v *= power(p.base, p.exponent);
    return v;
  }

  /// Throws InvalidInput if the coordinate has a trig factor.
  mpq_class rational() const {
    if (!is_rational()) throw InvalidInput("coordinate is not rational");
    return exact_part();
  }

  Interval evaluate(mpfr_prec_t prec) const {
    Interval v = Interval::exact(exact_part(), prec);
    for (const auto& t : trig_) {
      v = v * (t.sine ? Interval::sin_turns(t.turns, prec)
                      : Interval::cos_turns(t.turns, prec));
    }
    return v;
  }

  friend bool operator==(const Coordinate& a, const Coordinate& b) {
    return a.coef_ == b.coef_ && a.pows_ == b.pows_ && a.trig_ == b.trig_;
  }

  static mpq_class power(const mpq_class& base, int e) {
    mpz_class num, den;
    const unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), k);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), k);
    if (e < 0) {
      if (num == 0) throw InvalidInput("pow: zero to a negative power");
      std::swap(num, den);
    }
    mpq_class r(num, den);
    r.canonicalize();
    return r;
  }

 private:
  mpq_class coef_ = 0;
  std::vector<PowFactor> pows_;
  std::vector<TrigFactor> trig_;
};

namespace detail {

// "p/q", "p" or a decimal "[-]d+[.d+]".
inline std::optional<mpq_class> parse_rational(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::string str(s);
  const bool neg = str[0] == '-';
  std::string body = neg || str[0] == '+' ? str.substr(1) : str;
  if (body.empty()) return std::nullopt;
  auto all_digits = [](std::string_view d) {
    return !d.empty() && std::all_of(d.begin(), d.end(),
                                     [](char c) { return c >= '0' && c <= '9'; });
  };
  mpq_class q;
  if (auto slash = body.find('/'); slash != std::string::npos) {
    const std::string a = body.substr(0, slash), b = body.substr(slash + 1);
    if (!all_digits(a) || !all_digits(b)) return std::nullopt;
    mpz_class den(b);
    if (den == 0) return std::nullopt;
    q = mpq_class(mpz_class(a), den);
  } else if (auto dot = body.find('.'); dot != std::string::npos) {
    const std::string a = body.substr(0, dot), b = body.substr(dot + 1);
    if ((!a.empty() && !all_digits(a)) || !all_digits(b)) return std::nullopt;
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, b.size());
    q = mpq_class(mpz_class(a.empty() ? "0" : a) * den + mpz_class(b), den);
  } else {
    if (!all_digits(body)) return std::nullopt;
    q = mpq_class(mpz_class(body));
  }
  q.canonicalize();
  if (neg) q = -q;
  return q;
}

inline std::optional<Coordinate> parse_factor(std::string_view f) {
  auto call = [&](std::string_view name) -> std::optional<std::string_view> {
    if (f.size() > name.size() + 2 && f.substr(0, name.size()) == name &&
        f[name.size()] == '(' && f.back() == ')') {
      return f.substr(name.size() + 1, f.size() - name.size() - 2);
    }
    return std::nullopt;
  };
  if (auto arg = call("cos")) {
    auto q = parse_rational(*arg);
    if (!q) return std::nullopt;
    return Coordinate::cos_turns(*q);
  }
  if (auto arg = call("sin")) {
    auto q = parse_rational(*arg);
    if (!q) return std::nullopt;
    return Coordinate::sin_turns(*q);
  }
  if (auto arg = call("pow")) {
    const auto comma = arg->find(',');
    if (comma == std::string_view::npos) return std::nullopt;
    auto base = parse_rational(arg->substr(0, comma));
    auto e = text::parse_int(arg->substr(comma + 1));
    if (!base || !e) return std::nullopt;
    return Coordinate::pow(*base, *e);
  }
  auto q = parse_rational(f);
  if (!q) return std::nullopt;
  return Coordinate(*q);
}

}  // namespace detail

/// Parses "[-]factor*factor*..." where a factor is a rational ("p/q" or a
/// decimal), "cos(a/b)", "sin(a/b)" (argument in turns of 2*pi) or
/// "pow(base,e)". Throws InvalidInput.
inline Coordinate parse_coordinate(std::string_view token) {
  std::string_view rest = token;
  bool neg = false;
  if (!rest.empty() && rest[0] == '-' && rest.size() > 1 &&
      (rest[1] < '0' || rest[1] > '9') && rest[1] != '.') {
    neg = true;
    rest.remove_prefix(1);
  }
  Coordinate c(1);
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= rest.size(); ++i) {
    if (i < rest.size() && rest[i] == '(') ++depth;
    if (i < rest.size() && rest[i] == ')') --depth;
    if (i == rest.size() || (rest[i] == '*' && depth == 0)) {
      auto f = detail::parse_factor(rest.substr(start, i - start));
      if (!f) throw InvalidInput("bad coordinate '" + std::string(token) + "'");
      c = c * *f;
      start = i + 1;
    }
  }
  if (neg) c = c * Coordinate(-1);
  return c;
}

inline std::string to_string(const Coordinate& c) {
  std::string out;
  const mpq_class& k = c.coefficient();
  const bool bare = c.pows().empty() && c.trig().empty();
  if (bare || (k != 1 && k != -1)) {
    out = k.get_str();
  } else if (k == -1) {
    out = "-";
  }
  auto append = [&](const std::string& f) {
    if (!out.empty() && out != "-") out += '*';
    out += f;
  };
  for (const auto& p : c.pows()) {
    append("pow(" + p.base.get_str() + "," + std::to_string(p.exponent) + ")");
  }
  for (const auto& t : c.trig()) {
    append(std::string(t.sine ? "sin(" : "cos(") + t.turns.get_str() + ")");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Geometric specifications

enum class GeometryModel { Dot, Euclid };

using Vector = std::vector<Coordinate>;

struct PersonGeometry {
  Vector position;
  Vector preference;
};

/// Positions and preferences for n men and n women in k dimensions. With
/// model Dot it is a k-attribute spec, with Euclid a k-Euclidean one (then
/// every coordinate must be rational).
struct GeometricSpec {
  GeometryModel model = GeometryModel::Dot;
  int k = 0;
  std::vector<PersonGeometry> men;
  std::vector<PersonGeometry> women;

  int size() const { return static_cast<int>(men.size()); }
};

using AttributeSpec = GeometricSpec;
using EuclideanSpec = GeometricSpec;

inline void write_geometric_spec(std::ostream& out, const GeometricSpec& s) {
  out << "model " << (s.model == GeometryModel::Dot ? "dot" : "euclid") << ' '
      << s.k << ' ' << s.size() << '\n';
  auto row = [&](const char* tag, int i, const Vector& v) {
    out << tag << ' ' << i << ':';
    for (const auto& c : v) out << ' ' << to_string(c);
    out << '\n';
  };
  for (int i = 0; i < s.size(); ++i) {
    row("mpos", i + 1, s.men[i].position);
    row("mpref", i + 1, s.men[i].preference);
  }
  for (int j = 0; j < s.size(); ++j) {
    row("wpos", j + 1, s.women[j].position);
    row("wpref", j + 1, s.women[j].preference);
  }
}

inline GeometricSpec parse_geometric_spec(std::istream& in) {
  GeometricSpec s;
  bool header = false;
  int n = 0;
  std::vector<std::vector<char>> seen;  // [mpos, mpref, wpos, wpref][person]
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto toks = text::tokens(text::strip_comment(raw));
    if (toks.empty()) continue;
    if (!header) {
      if (toks.size() != 4 || toks[0] != "model" ||
          (toks[1] != "dot" && toks[1] != "euclid")) {
        throw ParseError(line_no, "expected header 'model dot|euclid <k> <n>'");
      }
      s.model = toks[1] == "dot" ? GeometryModel::Dot : GeometryModel::Euclid;
      s.k = detail::parse_index(toks[2], line_no, "k");
      n = detail::parse_index(toks[3], line_no, "n");
      if (s.k < 1 || n < 1) throw ParseError(line_no, "k and n must be >= 1");
      s.men.resize(n);
      s.women.resize(n);
      seen.assign(4, std::vector<char>(n, 0));
      header = true;
      continue;
    }
    static constexpr std::string_view kTags[] = {"mpos", "mpref", "wpos",
                                                 "wpref"};
    const auto tag = std::find(std::begin(kTags), std::end(kTags), toks[0]);
    if (tag == std::end(kTags) || toks.size() < 2 || toks[1].empty() ||
        toks[1].back() != ':') {
      throw ParseError(line_no, "expected '<mpos|mpref|wpos|wpref> <i>: ...'");
    }
    const int which = static_cast<int>(tag - std::begin(kTags));
    const int i = detail::parse_index(toks[1].substr(0, toks[1].size() - 1),
                                      line_no, "person");
    if (i < 1 || i > n) throw ParseError(line_no, "person index out of range");
    if (seen[which][i - 1]) throw ParseError(line_no, "duplicate line");
    seen[which][i - 1] = 1;
    if (static_cast<int>(toks.size()) - 2 != s.k) {
      throw ParseError(line_no, "expected " + std::to_string(s.k) +
                                    " coordinates");
    }
    Vector v;
    for (std::size_t t = 2; t < toks.size(); ++t) {
      try {
        v.push_back(parse_coordinate(toks[t]));
      } catch (const InvalidInput& e) {
        throw ParseError(line_no, e.what());
      }
      if (s.model == GeometryModel::Euclid && !v.back().is_rational()) {
        throw ParseError(line_no, "euclid coordinates must be rational");
      }
    }
    PersonGeometry& p = which < 2 ? s.men[i - 1] : s.women[i - 1];
    (which % 2 == 0 ? p.position : p.preference) = std::move(v);
  }
  if (!header) throw ParseError(0, "missing 'model' header");
  for (int w = 0; w < 4; ++w) {
    for (int i = 0; i < n; ++i) {
      if (!seen[w][i]) {
        throw ParseError(0, "missing line for person " + std::to_string(i + 1));
      }
    }
  }
  return s;
}

inline GeometricSpec parse_geometric_spec(std::string_view text_in) {
  std::istringstream in{std::string(text_in)};
  return parse_geometric_spec(in);
}

// ---------------------------------------------------------------------------
// Spec -> Instance

struct CertifyOptions {
  mpfr_prec_t start_bits = 128;
  mpfr_prec_t max_bits = 4096;
};

namespace detail {

inline void check_spec_shape(const GeometricSpec& s) {
  const int n = s.size();
  if (n < 1 || static_cast<int>(s.women.size()) != n) {
    throw InvalidInput("spec needs n >= 1 men and as many women");
  }
  for (const auto* side : {&s.men, &s.women}) {
    for (const auto& p : *side) {
      if (static_cast<int>(p.position.size()) != s.k ||
          static_cast<int>(p.preference.size()) != s.k) {
        throw InvalidInput("vector of wrong dimension in spec");
      }
    }
  }
}

// Lazily evaluated position vectors of one side, per precision.
class PositionCache {
 public:
  explicit PositionCache(const std::vector<PersonGeometry>& people)
      : people_(people) {}

  const std::vector<std::vector<Interval>>& at(mpfr_prec_t prec) {
    auto it = cache_.find(prec);
    if (it != cache_.end()) return it->second;
    std::vector<std::vector<Interval>> v;
    for (const auto& p : people_) {
      std::vector<Interval> row;
      for (const auto& c : p.position) row.push_back(c.evaluate(prec));
      v.push_back(std::move(row));
    }
    return cache_.emplace(prec, std::move(v)).first->second;
  }

  const std::vector<PersonGeometry>& people() const { return people_; }

 private:
  const std::vector<PersonGeometry>& people_;
  std::map<mpfr_prec_t, std::vector<std::vector<Interval>>> cache_;
};

// Exact dot product when every coordinate is rational.
inline std::optional<mpq_class> exact_dot(const Vector& u, const Vector& v) {
  mpq_class s = 0;
  for (std::size_t t = 0; t < u.size(); ++t) {
    if (!u[t].is_rational() || !v[t].is_rational()) return std::nullopt;
    s += u[t].rational() * v[t].rational();
  }
  return s;
}

// One person's list: candidates by descending certified score.
inline std::vector<int> certified_dot_list(const Vector& pref,
                                           PositionCache& others,
                                           const CertifyOptions& opt,
                                           const std::string& who) {
  for (mpfr_prec_t prec = opt.start_bits;; prec *= 2) {
    const auto& pos = others.at(prec);
    const int n = static_cast<int>(pos.size());
    std::vector<Interval> pref_iv;
    for (const auto& c : pref) pref_iv.push_back(c.evaluate(prec));
    std::vector<Interval> score;
    score.reserve(n);
    for (int c = 0; c < n; ++c) {
      Interval s(prec);
      for (std::size_t t = 0; t < pref_iv.size(); ++t) {
        s = s + pref_iv[t] * pos[c][t];
      }
      score.push_back(std::move(s));
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return midpoint_greater(score[a], score[b]);
    });
    int stuck = -1;
    for (int i = 0; i + 1 < n && stuck < 0; ++i) {
      if (!certainly_greater(score[order[i]], score[order[i + 1]])) stuck = i;
    }
    if (stuck < 0) {
      for (int& c : order) ++c;
      return order;
    }
    // Rational inputs can be settled exactly instead of by more bits.
    const int a = order[stuck], b = order[stuck + 1];
    if (auto sa = exact_dot(pref, others.people()[a].position),
        sb = exact_dot(pref, others.people()[b].position);
        sa && sb && *sa == *sb) {
      throw TieDetected(who + ": candidates " + std::to_string(a + 1) + " and " +
                        std::to_string(b + 1) + " have equal scores");
    }
    if (prec * 2 > opt.max_bits) {
      throw TieDetected(who + ": scores of candidates " +
                        std::to_string(order[stuck] + 1) + " and " +
                        std::to_string(order[stuck + 1] + 1) +
                        " not separated at " + std::to_string(prec) + " bits");
    }
  }
}

}  // namespace detail

/// Each person ranks the other side by descending dot product of their
/// preference vector with the candidates' positions. Comparisons are made on
/// MPFR intervals; precision doubles until every adjacent pair separates.
inline Instance instance_from_dot(const GeometricSpec& spec,
                                  const CertifyOptions& opt = {}) {
  detail::check_spec_shape(spec);
  if (opt.start_bits < MPFR_PREC_MIN || opt.max_bits < opt.start_bits) {
    throw InvalidInput("bad precision bounds");
  }
  detail::PositionCache women_pos(spec.women), men_pos(spec.men);
  std::vector<std::vector<int>> men, women;
  for (int i = 0; i < spec.size(); ++i) {
    men.push_back(detail::certified_dot_list(
        spec.men[i].preference, women_pos, opt, "man " + std::to_string(i + 1)));
  }
  for (int j = 0; j < spec.size(); ++j) {
    women.push_back(detail::certified_dot_list(
        spec.women[j].preference, men_pos, opt,
        "woman " + std::to_string(j + 1)));
  }
  return Instance::from_lists(std::move(men), std::move(women));
}

namespace detail {

inline std::vector<int> euclidean_list(const Vector& pref,
                                       const std::vector<PersonGeometry>& others,
                                       const std::string& who) {
  std::vector<mpq_class> p;
  for (const auto& c : pref) p.push_back(c.rational());
  const int n = static_cast<int>(others.size());
  std::vector<mpq_class> d(n);
  for (int c = 0; c < n; ++c) {
    for (std::size_t t = 0; t < p.size(); ++t) {
      const mpq_class diff = p[t] - others[c].position[t].rational();
      d[c] += diff * diff;
    }
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return d[a] < d[b]; });
  for (int i = 0; i + 1 < n; ++i) {
    if (d[order[i]] == d[order[i + 1]]) {
      throw TieDetected(who + ": candidates " + std::to_string(order[i] + 1) +
                        " and " + std::to_string(order[i + 1] + 1) +
                        " are at equal distance");
    }
  }
  for (int& c : order) ++c;
  return order;
}

}  // namespace detail

/// Each person ranks the other side by ascending exact squared distance from
/// their preference point to the candidates' positions.
inline Instance instance_from_euclidean(const GeometricSpec& spec) {
  detail::check_spec_shape(spec);
  std::vector<std::vector<int>> men, women;
  for (int i = 0; i < spec.size(); ++i) {
    men.push_back(detail::euclidean_list(spec.men[i].preference, spec.women,
                                         "man " + std::to_string(i + 1)));
  }
  for (int j = 0; j < spec.size(); ++j) {
    women.push_back(detail::euclidean_list(spec.women[j].preference, spec.men,
                                           "woman " + std::to_string(j + 1)));
  }
  return Instance::from_lists(std::move(men), std::move(women));
}

/// Dispatches on spec.model.
inline Instance instance_from_spec(const GeometricSpec& spec,
                                   const CertifyOptions& opt = {}) {
  return spec.model == GeometryModel::Dot ? instance_from_dot(spec, opt)
                                          : instance_from_euclidean(spec);
}

// ---------------------------------------------------------------------------
// One attribute

/// One attribute and one preference scalar per person. A positive preference
/// ranks the other side by descending attribute, a negative one ascending.
struct OneAttributeSpec {
  std::vector<mpq_class> men_attr, men_pref;
  std::vector<mpq_class> women_attr, women_pref;

  int size() const { return static_cast<int>(men_attr.size()); }
};

namespace detail {

// GMP comparisons assume canonical fractions; callers may not supply them.
inline std::vector<mpq_class> canonical(std::vector<mpq_class> v) {
  for (auto& q : v) q.canonicalize();
  return v;
}

}  // namespace detail

inline void validate(const OneAttributeSpec& s) {
  const std::size_t n = s.men_attr.size();
  if (n == 0 || s.men_pref.size() != n || s.women_attr.size() != n ||
      s.women_pref.size() != n) {
    throw InvalidInput("one-attribute spec needs n >= 1 entries per vector");
  }
  for (const auto* prefs : {&s.men_pref, &s.women_pref}) {
    for (const auto& p : detail::canonical(*prefs)) {
      if (p == 0) throw InvalidInput("zero preference scalar ties every candidate");
    }
  }
  for (const auto* attrs : {&s.men_attr, &s.women_attr}) {
    auto sorted = detail::canonical(*attrs);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw TieDetected("two people on one side share an attribute value");
    }
  }
}

/// A "model dot 1 n" spec with rational coordinates, read as 1-attribute.
inline OneAttributeSpec one_attribute_from_spec(const GeometricSpec& g) {
  if (g.model != GeometryModel::Dot || g.k != 1) {
    throw InvalidInput("one-attribute input must be a 'model dot 1 <n>' spec");
  }
  detail::check_spec_shape(g);
  OneAttributeSpec s;
  for (const auto& p : g.men) {
    s.men_attr.push_back(p.position[0].rational());
    s.men_pref.push_back(p.preference[0].rational());
  }
  for (const auto& p : g.women) {
    s.women_attr.push_back(p.position[0].rational());
    s.women_pref.push_back(p.preference[0].rational());
  }
  return s;
}

inline GeometricSpec to_geometric_spec(const OneAttributeSpec& s) {
  GeometricSpec g;
  g.model = GeometryModel::Dot;
  g.k = 1;
  for (int i = 0; i < s.size(); ++i) {
    g.men.push_back({{Coordinate(s.men_attr[i])}, {Coordinate(s.men_pref[i])}});
    g.women.push_back(
        {{Coordinate(s.women_attr[i])}, {Coordinate(s.women_pref[i])}});
  }
  return g;
}

inline Instance instance_from_1attribute(const OneAttributeSpec& s) {
  validate(s);
  const int n = s.size();
  auto lists = [n](const std::vector<mpq_class>& prefs,
                   const std::vector<mpq_class>& attrs) {
    std::vector<int> desc(n);
    std::iota(desc.begin(), desc.end(), 1);
    std::sort(desc.begin(), desc.end(),
              [&](int a, int b) { return attrs[a - 1] > attrs[b - 1]; });
    const std::vector<int> asc(desc.rbegin(), desc.rend());
    std::vector<std::vector<int>> out;
    out.reserve(n);
    for (const auto& p : prefs) out.push_back(p > 0 ? desc : asc);
    return out;
  };
  return Instance::from_lists(
      lists(detail::canonical(s.men_pref), detail::canonical(s.women_attr)),
      lists(detail::canonical(s.women_pref), detail::canonical(s.men_attr)));
}

/// The rotation poset of a 1-attribute instance is a chain, so the count is
/// the number of rotations plus one.
inline Count count_1attribute(const OneAttributeSpec& s) {
  const Instance inst = instance_from_1attribute(s);
  const auto path = find_all_rotations(inst, {}, false);
  return Count(static_cast<unsigned long>(path.rotations.size())) + 1;
}

}  // namespace stablecount

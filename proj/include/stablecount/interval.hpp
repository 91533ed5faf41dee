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

// Closed real intervals with MPFR endpoints and outward rounding.

#include <gmpxx.h>
#include <mpfr.h>

#include <utility>

namespace stablecount {

/// Owning mpfr_t.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(BigFloat o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

class Interval {
 public:
  explicit Interval(mpfr_prec_t prec) : lo_(prec), hi_(prec) {
    mpfr_set_zero(lo_.get(), 1);
    mpfr_set_zero(hi_.get(), 1);
  }

  static Interval exact(const mpq_class& q, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_q(r.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
    return r;
  }

  static Interval pi(mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_const_pi(r.lo_.get(), MPFR_RNDD);
    mpfr_const_pi(r.hi_.get(), MPFR_RNDU);
    return r;
  }

  /// cos(2*pi*turns) or sin(2*pi*turns).
  static Interval cos_turns(const mpq_class& turns, mpfr_prec_t prec) {
    return trig(turns, prec, false);
  }
  static Interval sin_turns(const mpq_class& turns, mpfr_prec_t prec) {
    return trig(turns, prec, true);
  }

  mpfr_prec_t precision() const { return mpfr_get_prec(lo_.get()); }
  mpfr_srcptr lo() const { return lo_.get(); }
  mpfr_srcptr hi() const { return hi_.get(); }

  friend Interval operator+(const Interval& a, const Interval& b) {
    Interval r(a.precision());
    mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return r;
  }

  friend Interval operator*(const Interval& a, const Interval& b) {
    const mpfr_prec_t p = a.precision();
    Interval r(p);
    BigFloat t(p);
    bool first = true;
    for (mpfr_srcptr x : {a.lo(), a.hi()}) {
      for (mpfr_srcptr y : {b.lo(), b.hi()}) {
        mpfr_mul(t.get(), x, y, MPFR_RNDD);
        if (first || mpfr_less_p(t.get(), r.lo_.get())) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
        mpfr_mul(t.get(), x, y, MPFR_RNDU);
        if (first || mpfr_greater_p(t.get(), r.hi_.get())) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
        first = false;
      }
    }
    return r;
  }

  /// Every point of a lies strictly above every point of b.
  friend bool certainly_greater(const Interval& a, const Interval& b) {
    return mpfr_greater_p(a.lo(), b.hi()) != 0;
  }

  /// Compares midpoints; used only to order before certifying.
  friend bool midpoint_greater(const Interval& a, const Interval& b) {
    BigFloat ma(a.precision() + 1), mb(b.precision() + 1);
    mpfr_add(ma.get(), a.lo(), a.hi(), MPFR_RNDN);
    mpfr_add(mb.get(), b.lo(), b.hi(), MPFR_RNDN);
    return mpfr_greater_p(ma.get(), mb.get()) != 0;
  }

 private:
  static Interval trig(const mpq_class& turns, mpfr_prec_t prec, bool sine) {
    const Interval angle = exact(2 * turns, prec) * pi(prec);
    // |cos'|, |sin'| <= 1: the image lies within radius of the midpoint value.
    BigFloat mid(prec), rad(prec), tmp(prec);
    mpfr_add(mid.get(), angle.lo(), angle.hi(), MPFR_RNDN);
    mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
    mpfr_sub(rad.get(), angle.hi(), mid.get(), MPFR_RNDU);
    mpfr_sub(tmp.get(), mid.get(), angle.lo(), MPFR_RNDU);
    mpfr_max(rad.get(), rad.get(), tmp.get(), MPFR_RNDU);
    Interval r(prec);
    auto f = sine ? mpfr_sin : mpfr_cos;
    f(r.lo_.get(), mid.get(), MPFR_RNDD);
    f(r.hi_.get(), mid.get(), MPFR_RNDU);
    mpfr_sub(r.lo_.get(), r.lo_.get(), rad.get(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), r.hi_.get(), rad.get(), MPFR_RNDU);
    if (mpfr_cmp_si(r.lo_.get(), -1) < 0) mpfr_set_si(r.lo_.get(), -1, MPFR_RNDD);
    if (mpfr_cmp_si(r.hi_.get(), 1) > 0) mpfr_set_si(r.hi_.get(), 1, MPFR_RNDU);
    return r;
  }

  BigFloat lo_;
  BigFloat hi_;
};

}  // namespace stablecount

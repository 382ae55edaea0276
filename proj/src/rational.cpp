/**
 * Copyright 2026 The polysched Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "polysched/rational.hpp"

#include <limits>
#include <ostream>

#include "polysched/error.hpp"

namespace polysched {
namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr i128 kMax = std::numeric_limits<int64_t>::max();

u128 abs128(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

int64_t gcd64(int64_t a, int64_t b) {
  uint64_t x = a < 0 ? -static_cast<uint64_t>(a) : a;
  uint64_t y = b < 0 ? -static_cast<uint64_t>(b) : b;
  while (y != 0) {
    uint64_t t = x % y;
    x = y;
    y = t;
  }
  return static_cast<int64_t>(x);
}

mpz_class to_mpz(int64_t v) {
  mpz_class z;
  mpz_set_si(z.get_mpz_t(), v);
  return z;
}

}  // namespace

Rational::Rational(int64_t value) : num_(value) {
  if (value == std::numeric_limits<int64_t>::min()) assign_big(mpq_class(to_mpz(value)));
}

Rational::Rational(int64_t num, int64_t den) {
  if (den == 0) throw Error(ErrorKind::Internal, "rational with zero denominator");
  if (!assign_small(num, den)) assign_big(mpq_class(to_mpz(num), to_mpz(den)));
}

Rational::Rational(const mpq_class &value) {
  mpq_class v = value;
  v.canonicalize();
  assign_big(std::move(v));
}

Rational Rational::parse(const std::string &text) {
  mpq_class v;
  if (v.set_str(text, 10) != 0) throw Error(ErrorKind::ParseError, "bad rational '" + text + "'");
  if (v.get_den() == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + text + "'");
  return Rational(v);
}

bool Rational::assign_small(i128 num, i128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  u128 g = gcd128(abs128(num), static_cast<u128>(den));
  if (g > 1) {
    num /= static_cast<i128>(g);
    den /= static_cast<i128>(g);
  }
  if (num > kMax || num < -kMax || den > kMax) return false;
  num_ = static_cast<int64_t>(num);
  den_ = static_cast<int64_t>(den);
  big_.reset();
  return true;
}

void Rational::assign_big(mpq_class value) {
  const mpz_class &n = value.get_num();
  const mpz_class &d = value.get_den();
  if (mpz_fits_slong_p(n.get_mpz_t()) && mpz_fits_slong_p(d.get_mpz_t())) {
    int64_t sn = mpz_get_si(n.get_mpz_t());
    int64_t sd = mpz_get_si(d.get_mpz_t());
    if (sn != std::numeric_limits<int64_t>::min()) {
      num_ = sn;
      den_ = sd;
      big_.reset();
      return;
    }
  }
  num_ = 0;
  den_ = 1;
  big_ = std::make_shared<const mpq_class>(std::move(value));
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(to_mpz(num_), to_mpz(den_));
}

mpz_class Rational::numerator() const { return big_ ? mpz_class(big_->get_num()) : to_mpz(num_); }
mpz_class Rational::denominator() const { return big_ ? mpz_class(big_->get_den()) : to_mpz(den_); }

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

int64_t Rational::to_int64() const {
  if (!is_integer()) throw Error(ErrorKind::Overflow, "value " + to_string() + " is not integral");
  if (big_) throw Error(ErrorKind::Overflow, "value " + to_string() + " exceeds 64 bits");
  return num_;
}

double Rational::to_double() const {
  if (big_) return big_->get_d();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::to_string() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::floor() const {
  if (is_integer()) return *this;
  if (big_) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
    return Rational(q);
  }
  int64_t q = num_ / den_;
  if (num_ < 0) --q;
  return Rational(q);
}

Rational Rational::ceil() const {
  if (is_integer()) return *this;
  return floor() + Rational(1);
}

Rational Rational::operator-() const {
  Rational r;
  if (big_) {
    r.assign_big(-*big_);
  } else {
    r.num_ = -num_;
    r.den_ = den_;
  }
  return r;
}

Rational &Rational::operator+=(const Rational &rhs) {
  if (small() && rhs.small()) {
    if (den_ == 1 && rhs.den_ == 1) {
      int64_t out;
      if (!__builtin_add_overflow(num_, rhs.num_, &out) && out != std::numeric_limits<int64_t>::min()) {
        num_ = out;
        return *this;
      }
    }
    if (assign_small(static_cast<i128>(num_) * rhs.den_ + static_cast<i128>(rhs.num_) * den_,
                     static_cast<i128>(den_) * rhs.den_)) {
      return *this;
    }
  }
  assign_big(to_mpq() + rhs.to_mpq());
  return *this;
}

Rational &Rational::operator-=(const Rational &rhs) {
  if (small() && rhs.small()) {
    if (den_ == 1 && rhs.den_ == 1) {
      int64_t out;
      if (!__builtin_sub_overflow(num_, rhs.num_, &out) && out != std::numeric_limits<int64_t>::min()) {
        num_ = out;
        return *this;
      }
    }
    if (assign_small(static_cast<i128>(num_) * rhs.den_ - static_cast<i128>(rhs.num_) * den_,
                     static_cast<i128>(den_) * rhs.den_)) {
      return *this;
    }
  }
  assign_big(to_mpq() - rhs.to_mpq());
  return *this;
}

Rational &Rational::operator*=(const Rational &rhs) {
  if (small() && rhs.small()) {
    if (num_ == 0 || rhs.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    if (den_ == 1 && rhs.den_ == 1) {
      int64_t out;
      if (!__builtin_mul_overflow(num_, rhs.num_, &out) && out != std::numeric_limits<int64_t>::min()) {
        num_ = out;
        return *this;
      }
    }
    int64_t g1 = gcd64(num_, rhs.den_);
    int64_t g2 = gcd64(rhs.num_, den_);
    i128 n = static_cast<i128>(num_ / g1) * (rhs.num_ / g2);
    i128 d = static_cast<i128>(den_ / g2) * (rhs.den_ / g1);
    if (n <= kMax && n >= -kMax && d <= kMax) {
      num_ = static_cast<int64_t>(n);
      den_ = static_cast<int64_t>(d);
      return *this;
    }
  }
  assign_big(to_mpq() * rhs.to_mpq());
  return *this;
}

Rational &Rational::operator/=(const Rational &rhs) {
  if (rhs.is_zero()) throw Error(ErrorKind::Internal, "division by zero");
  if (small() && rhs.small()) {
    int64_t g1 = gcd64(num_, rhs.num_);
    int64_t g2 = gcd64(den_, rhs.den_);
    if (g1 == 0) g1 = 1;
    i128 n = static_cast<i128>(num_ / g1) * (rhs.den_ / g2);
    i128 d = static_cast<i128>(den_ / g2) * (rhs.num_ / g1);
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (n <= kMax && n >= -kMax && d <= kMax) {
      num_ = static_cast<int64_t>(n);
      den_ = static_cast<int64_t>(d);
      return *this;
    }
  }
  assign_big(to_mpq() / rhs.to_mpq());
  return *this;
}

bool operator==(const Rational &lhs, const Rational &rhs) {
  if (lhs.small() && rhs.small()) return lhs.num_ == rhs.num_ && lhs.den_ == rhs.den_;
  // Canonical form: a big value never equals a small one.
  if (lhs.small() != rhs.small()) return false;
  return *lhs.big_ == *rhs.big_;
}

std::strong_ordering operator<=>(const Rational &lhs, const Rational &rhs) {
  if (lhs.small() && rhs.small()) {
    if (lhs.den_ == 1 && rhs.den_ == 1) return lhs.num_ <=> rhs.num_;
    i128 a = static_cast<i128>(lhs.num_) * rhs.den_;
    i128 b = static_cast<i128>(rhs.num_) * lhs.den_;
    return a <=> b;
  }
  int c = cmp(lhs.to_mpq(), rhs.to_mpq());
  return c <=> 0;
}

std::ostream &operator<<(std::ostream &os, const Rational &value) { return os << value.to_string(); }

mpz_class gcd(const mpz_class &a, const mpz_class &b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

mpz_class lcm(const mpz_class &a, const mpz_class &b) {
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

}  // namespace polysched

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
#ifndef POLYSCHED_RATIONAL_HPP_
#define POLYSCHED_RATIONAL_HPP_

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>

namespace polysched {

/// Exact rational number.
///
/// Values whose reduced numerator and denominator fit in 64 bits are kept
/// inline; anything larger is promoted to a shared, immutable GMP rational.
/// The representation is always canonical: reduced, denominator > 0, and
/// small whenever the value fits.
class Rational {
 public:
  Rational() = default;
  Rational(int64_t value);  // NOLINT(runtime/explicit)
  Rational(int64_t num, int64_t den);
  explicit Rational(const mpq_class &value);
  explicit Rational(const mpz_class &value) : Rational(mpq_class(value)) {}

  static Rational parse(const std::string &text);

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_integer() const;
  int sign() const;

  mpz_class numerator() const;
  mpz_class denominator() const;
  mpq_class to_mpq() const;

  /// Converts an integral value that fits into int64; throws otherwise.
  int64_t to_int64() const;
  double to_double() const;
  std::string to_string() const;

  Rational floor() const;
  Rational ceil() const;
  Rational abs() const { return sign() < 0 ? -*this : *this; }

  Rational operator-() const;
  Rational &operator+=(const Rational &rhs);
  Rational &operator-=(const Rational &rhs);
  Rational &operator*=(const Rational &rhs);
  Rational &operator/=(const Rational &rhs);

  friend Rational operator+(Rational lhs, const Rational &rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational &rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational &rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational &rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational &lhs, const Rational &rhs);
  friend std::strong_ordering operator<=>(const Rational &lhs, const Rational &rhs);

 private:
  bool small() const { return !big_; }
  void assign_big(mpq_class value);
  bool assign_small(__int128 num, __int128 den);

  int64_t num_ = 0;
  int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

std::ostream &operator<<(std::ostream &os, const Rational &value);

/// Integer gcd / lcm on arbitrary-precision values.
mpz_class gcd(const mpz_class &a, const mpz_class &b);
mpz_class lcm(const mpz_class &a, const mpz_class &b);

}  // namespace polysched

#endif  // POLYSCHED_RATIONAL_HPP_

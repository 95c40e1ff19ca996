// Copyright 2026 The MSE Authors
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

#include "mse/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace mse {
namespace {

using Int = Rational::Int;

Int Abs(Int v) { return v < 0 ? -v : v; }

Int Gcd(Int a, Int b) {
  a = Abs(a);
  b = Abs(b);
  while (b != 0) {
    const Int r = a % b;
    a = b;
    b = r;
  }
  return a;
}

Int Mul(Int a, Int b) {
  Int out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw std::overflow_error("rational: multiplication overflow");
  }
  return out;
}

Int Add(Int a, Int b) {
  Int out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw std::overflow_error("rational: addition overflow");
  }
  return out;
}

}  // namespace

Rational::Rational(Int num, Int den) {
  if (den == 0) throw std::domain_error("rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const Int g = Gcd(num, den);
  num_ = g == 0 ? 0 : num / g;
  den_ = g == 0 ? 1 : den / g;
}

Rational Rational::FromDouble(double value, std::int64_t max_den) {
  if (!std::isfinite(value)) throw std::domain_error("rational: non-finite value");
  const bool negative = value < 0;
  double x = std::fabs(value);
  // Convergents h/k of the continued fraction of x.
  Int h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double rest = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a_d = std::floor(rest);
    if (a_d > 9.0e15) break;
    const Int a = static_cast<Int>(a_d);
    const Int h2 = a * h1 + h0;
    const Int k2 = a * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1; h1 = h2;
    k0 = k1; k1 = k2;
    const double frac = rest - a_d;
    if (frac < 1e-12 || std::fabs(static_cast<double>(h1) / static_cast<double>(k1) - x) <= 1e-15 * std::max(1.0, x)) {
      break;
    }
    rest = 1.0 / frac;
  }
  if (k1 == 0) return Rational(static_cast<std::int64_t>(std::llround(value)));
  return Rational(negative ? -h1 : h1, k1);
}

double Rational::ToDouble() const {
  return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
}

std::string Rational::ToString() const {
  auto to_str = [](Int v) {
    if (v == 0) return std::string("0");
    const bool neg = v < 0;
    std::string s;
    while (v != 0) {
      const int digit = static_cast<int>(v % 10);
      s.insert(s.begin(), static_cast<char>('0' + (neg ? -digit : digit)));
      v /= 10;
    }
    return neg ? "-" + s : s;
  };
  return den_ == 1 ? to_str(num_) : to_str(num_) + "/" + to_str(den_);
}

Rational::Int Rational::Floor() const {
  Int q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

Rational::Int Rational::Ceil() const {
  Int q = num_ / den_;
  if (num_ % den_ != 0 && num_ > 0) ++q;
  return q;
}

Rational operator+(const Rational& a, const Rational& b) {
  const Int g = Gcd(a.den_, b.den_);
  const Int den = Mul(a.den_ / g, b.den_);
  return Rational(Add(Mul(a.num_, b.den_ / g), Mul(b.num_, a.den_ / g)), den);
}

Rational operator-(const Rational& a, const Rational& b) {
  return a + Rational(-b.num_, b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  const Int g1 = Gcd(a.num_, b.den_);
  const Int g2 = Gcd(b.num_, a.den_);
  const Int n1 = g1 == 0 ? a.num_ : a.num_ / g1;
  const Int d2 = g1 == 0 ? b.den_ : b.den_ / g1;
  const Int n2 = g2 == 0 ? b.num_ : b.num_ / g2;
  const Int d1 = g2 == 0 ? a.den_ : a.den_ / g2;
  return Rational(Mul(n1, n2), Mul(d1, d2));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("rational: division by zero");
  return a * Rational(b.den_, b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  // a.num/a.den vs b.num/b.den with positive denominators.
  const Int lhs = Mul(a.num_, b.den_);
  const Int rhs = Mul(b.num_, a.den_);
  return lhs <=> rhs;
}

}  // namespace mse

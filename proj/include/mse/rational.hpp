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

#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace mse {

// Exact fraction over 128-bit integers, always normalized (den > 0,
// gcd(num, den) = 1). Arithmetic throws std::overflow_error instead of
// wrapping.
class Rational {
 public:
  using Int = __int128;

  constexpr Rational() = default;
  Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT implicit
  Rational(Int num, Int den);

  // Closest fraction with denominator <= max_den (continued fractions).
  // Decimal coefficients such as 0.25 or 1.3 come out exact.
  static Rational FromDouble(double value, std::int64_t max_den = 1'000'000);

  Int num() const { return num_; }
  Int den() const { return den_; }
  double ToDouble() const;
  std::string ToString() const;

  Int Floor() const;
  Int Ceil() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& o) { return *this = *this + o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  Int num_ = 0;
  Int den_ = 1;
};

}  // namespace mse

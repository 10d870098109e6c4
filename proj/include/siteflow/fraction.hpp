// Copyright 2026 The Authors.
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

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace siteflow {

// Exact rational arithmetic for utility ratios. Coverage ratios have
// denominators bounded by the per-subinterval demand totals, so a reduced
// int64 representation is ample for every instance this library solves;
// intermediates go through __int128 and overflow past int64 throws.
class Fraction {
 public:
  constexpr Fraction() = default;

  Fraction(std::int64_t numerator, std::int64_t denominator) {
    if (denominator == 0) {
      throw std::domain_error("fraction with zero denominator");
    }
    if (denominator < 0) {
      numerator = -numerator;
      denominator = -denominator;
    }
    const std::int64_t g = std::gcd(numerator, denominator);
    num_ = g == 0 ? 0 : numerator / g;
    den_ = g == 0 ? 1 : denominator / g;
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double value() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  friend Fraction operator+(const Fraction& a, const Fraction& b) {
    const __int128 num = static_cast<__int128>(a.num_) * b.den_ +
                         static_cast<__int128>(b.num_) * a.den_;
    const __int128 den = static_cast<__int128>(a.den_) * b.den_;
    return reduce(num, den);
  }

  friend Fraction operator-(const Fraction& a, const Fraction& b) {
    const __int128 num = static_cast<__int128>(a.num_) * b.den_ -
                         static_cast<__int128>(b.num_) * a.den_;
    const __int128 den = static_cast<__int128>(a.den_) * b.den_;
    return reduce(num, den);
  }

  friend bool operator==(const Fraction& a, const Fraction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  friend bool operator<(const Fraction& a, const Fraction& b) {
    return static_cast<__int128>(a.num_) * b.den_ <
           static_cast<__int128>(b.num_) * a.den_;
  }

  friend bool operator>(const Fraction& a, const Fraction& b) { return b < a; }
  friend bool operator<=(const Fraction& a, const Fraction& b) {
    return !(b < a);
  }
  friend bool operator>=(const Fraction& a, const Fraction& b) {
    return !(a < b);
  }
  friend bool operator!=(const Fraction& a, const Fraction& b) {
    return !(a == b);
  }

  std::string to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  static Fraction reduce(__int128 num, __int128 den) {
    const __int128 g = gcd128(num < 0 ? -num : num, den);
    if (g != 0) {
      num /= g;
      den /= g;
    } else {
      den = 1;
    }
    constexpr __int128 kMax = INT64_MAX;
    if (num > kMax || num < -kMax || den > kMax) {
      throw std::overflow_error("fraction exceeds 64-bit range");
    }
    Fraction f;
    f.num_ = static_cast<std::int64_t>(num);
    f.den_ = static_cast<std::int64_t>(den);
    return f;
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace siteflow

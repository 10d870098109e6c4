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

// Money and power are fixed-point integers at 0.01 resolution: power in
// centi-MW, money in centi-million-USD. Integral capacities make max flow
// and budget comparisons exact; formatting is always two decimals with a
// '.' separator.

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace siteflow {

using CentiMw = std::int64_t;    // power, 0.01 MW
using CentiMusd = std::int64_t;  // money, 0.01 million USD

inline std::int64_t centi_from_double(double value) {
  return std::llround(value * 100.0);
}

inline double centi_to_double(std::int64_t centi) {
  return static_cast<double>(centi) / 100.0;
}

// "117.30", "-4.05", "12", "12.5" -> centi units; rejects more than two
// decimal places and anything non-numeric.
inline std::int64_t parse_centi(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty numeric field");
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '-' || text[pos] == '+') {
    negative = text[pos] == '-';
    ++pos;
  }
  std::int64_t whole = 0;
  std::size_t digits = 0;
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
    whole = whole * 10 + (text[pos] - '0');
    ++pos;
    ++digits;
  }
  if (digits == 0) throw std::invalid_argument("malformed number: " + text);
  std::int64_t frac = 0;
  if (pos < text.size()) {
    if (text[pos] != '.') {
      throw std::invalid_argument("malformed number: " + text);
    }
    ++pos;
    std::size_t frac_digits = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      frac = frac * 10 + (text[pos] - '0');
      ++pos;
      ++frac_digits;
    }
    if (frac_digits == 0 || frac_digits > 2) {
      throw std::invalid_argument("expected at most two decimals: " + text);
    }
    if (frac_digits == 1) frac *= 10;
  }
  if (pos != text.size()) {
    throw std::invalid_argument("malformed number: " + text);
  }
  const std::int64_t centi = whole * 100 + frac;
  return negative ? -centi : centi;
}

// centi units -> "117.30" (exactly two decimals).
inline std::string format_centi(std::int64_t centi) {
  const bool negative = centi < 0;
  const std::int64_t abs = negative ? -centi : centi;
  std::string out = negative ? "-" : "";
  out += std::to_string(abs / 100);
  const std::int64_t frac = abs % 100;
  out += '.';
  out += static_cast<char>('0' + frac / 10);
  out += static_cast<char>('0' + frac % 10);
  return out;
}

}  // namespace siteflow

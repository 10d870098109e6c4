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

// Optimizers for the coverage model.
//
// greedy_select        budgeted greedy with the (1 - 1/e) guarantee for the
//                      monotone submodular metrics (IU via the set-cover
//                      reduction, CSIU directly). MSIU is rejected: no such
//                      guarantee exists for it.
// exhaustive_select    brute-force optimum over all selections of size <= B,
//                      capped; the testing oracle for the greedy bound.
// find_submodularity_violation
//                      searches all (A subset-of B, z) triples for a
//                      violation of the submodular inequality.
//
// All comparisons use exact rational arithmetic; floating point never
// decides a tie.

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "siteflow/coverage.hpp"
#include "siteflow/fraction.hpp"
#include "siteflow/metrics.hpp"

namespace siteflow {

inline constexpr std::int64_t kDefaultEnumerationCap = 1'000'000;
inline constexpr int kDefaultViolationMaxSites = 10;

enum class SolveMethod { kGreedy, kExhaustive };

inline std::string method_name(SolveMethod method) {
  return method == SolveMethod::kGreedy ? "greedy" : "exhaustive";
}

struct CoarseSolution {
  std::vector<int> selected_sites;  // sorted ids
  MetricValue objective;
  SolveMethod method = SolveMethod::kGreedy;
};

namespace detail {

// Per-site coverage bitsets plus per-sub-interval demand bitsets; lets the
// solvers evaluate metric values of arbitrary unions with popcounts.
class CoverageIndex {
 public:
  explicit CoverageIndex(const CoarseInstance& instance)
      : instance_(&instance),
        words_((instance.point_count() + 63) / 64),
        site_bits_(instance.site_count(),
                   std::vector<std::uint64_t>(words_, 0)),
        demand_bits_(instance.num_subintervals,
                     std::vector<std::uint64_t>(words_, 0)),
        totals_(instance.num_subintervals, 0) {
    const double r2 = instance.radius * instance.radius;
    for (int i = 0; i < instance.site_count(); ++i) {
      for (int j = 0; j < instance.point_count(); ++j) {
        if (squared_distance(instance.sites[i].location,
                             instance.demand_points[j].location) <= r2) {
          site_bits_[i][j / 64] |= std::uint64_t{1} << (j % 64);
        }
      }
    }
    for (int j = 0; j < instance.point_count(); ++j) {
      for (int t = 0; t < instance.num_subintervals; ++t) {
        if (instance.demand_points[j].demand_by_subinterval[t]) {
          demand_bits_[t][j / 64] |= std::uint64_t{1} << (j % 64);
          ++totals_[t];
        }
      }
    }
  }

  int words() const { return static_cast<int>(words_); }
  const std::vector<std::uint64_t>& site_bits(int site) const {
    return site_bits_[site];
  }

  std::vector<SubintervalCoverage> counts(
      const std::vector<std::uint64_t>& covered) const {
    std::vector<SubintervalCoverage> per_t(instance_->num_subintervals);
    for (int t = 0; t < instance_->num_subintervals; ++t) {
      std::int64_t c = 0;
      for (std::size_t w = 0; w < words_; ++w) {
        c += std::popcount(covered[w] & demand_bits_[t][w]);
      }
      per_t[t].covered = c;
      per_t[t].total = totals_[t];
    }
    return per_t;
  }

  Fraction evaluate(MetricKind kind,
                    const std::vector<std::uint64_t>& covered) const {
    return metric_exact(kind, counts(covered));
  }

  bool metric_defined(MetricKind kind) const {
    std::int64_t total = 0;
    for (std::int64_t t : totals_) total += t;
    if (kind == MetricKind::kCumulative) return true;
    return total > 0;  // IU and MSIU need some demand somewhere
  }

 private:
  const CoarseInstance* instance_;
  std::size_t words_;
  std::vector<std::vector<std::uint64_t>> site_bits_;
  std::vector<std::vector<std::uint64_t>> demand_bits_;
  std::vector<std::int64_t> totals_;
};

inline void bits_or(std::vector<std::uint64_t>& dst,
                    const std::vector<std::uint64_t>& src) {
  for (std::size_t w = 0; w < dst.size(); ++w) dst[w] |= src[w];
}

}  // namespace detail

// Budgeted greedy: budget rounds, each adding the site with the largest
// marginal gain (ties to the lowest id), stopping early once every
// remaining gain is zero.
inline CoarseSolution greedy_select(const CoarseInstance& instance,
                                    MetricKind metric) {
  if (metric == MetricKind::kMinimum) {
    throw std::invalid_argument(
        "no approximation guarantee for msiu; use exhaustive");
  }
  const detail::CoverageIndex index(instance);
  std::vector<std::uint64_t> covered(index.words(), 0);
  std::vector<std::uint8_t> chosen(instance.site_count(), 0);
  std::vector<int> selection;
  Fraction current = index.evaluate(metric, covered);

  for (int round = 0; round < instance.budget; ++round) {
    int best_site = -1;
    Fraction best_value = current;
    for (int s = 0; s < instance.site_count(); ++s) {
      if (chosen[s]) continue;
      std::vector<std::uint64_t> candidate = covered;
      detail::bits_or(candidate, index.site_bits(s));
      const Fraction value = index.evaluate(metric, candidate);
      if (value > best_value) {
        best_value = value;
        best_site = s;
      }
    }
    if (best_site < 0) break;  // all marginal gains are zero
    chosen[best_site] = 1;
    selection.push_back(best_site);
    detail::bits_or(covered, index.site_bits(best_site));
    current = best_value;
  }

  std::sort(selection.begin(), selection.end());
  return CoarseSolution{selection, MetricValue::make(metric, current),
                        SolveMethod::kGreedy};
}

// Exact optimum over all selections of size <= budget. Ties go to the
// lexicographically smallest id set. Refuses to enumerate more than
// `enumeration_cap` subsets.
inline CoarseSolution exhaustive_select(
    const CoarseInstance& instance, MetricKind metric,
    std::int64_t enumeration_cap = kDefaultEnumerationCap) {
  const int m = instance.site_count();
  const int budget = std::min(instance.budget, m);

  std::int64_t subset_count = 1;  // the empty selection
  {
    std::int64_t binom = 1;
    for (int k = 1; k <= budget; ++k) {
      binom = binom * (m - k + 1) / k;
      subset_count += binom;
      if (subset_count > enumeration_cap) {
        throw std::runtime_error(
            "exhaustive enumeration needs more than " +
            std::to_string(enumeration_cap) + " subsets; use greedy");
      }
    }
  }

  const detail::CoverageIndex index(instance);
  std::vector<int> best_selection;
  Fraction best_value =
      index.evaluate(metric, std::vector<std::uint64_t>(index.words(), 0));

  std::vector<int> combo;
  for (int k = 1; k <= budget; ++k) {
    combo.assign(k, 0);
    for (int i = 0; i < k; ++i) combo[i] = i;
    while (true) {
      std::vector<std::uint64_t> covered(index.words(), 0);
      for (int s : combo) detail::bits_or(covered, index.site_bits(s));
      const Fraction value = index.evaluate(metric, covered);
      if (value > best_value ||
          (value == best_value &&
           std::lexicographical_compare(combo.begin(), combo.end(),
                                        best_selection.begin(),
                                        best_selection.end()))) {
        best_value = value;
        best_selection = combo;
      }
      // next k-combination in lexicographic order
      int i = k - 1;
      while (i >= 0 && combo[i] == m - k + i) --i;
      if (i < 0) break;
      ++combo[i];
      for (int j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
    }
  }

  return CoarseSolution{best_selection, MetricValue::make(metric, best_value),
                        SolveMethod::kExhaustive};
}

struct SubmodularityWitness {
  std::vector<int> set_a;  // A, sorted ids
  std::vector<int> set_b;  // B with A subset-of B, sorted ids
  int element_z = 0;       // z outside B
  Fraction gain_a;         // f(A + z) - f(A)
  Fraction gain_b;         // f(B + z) - f(B), > gain_a for a violation
};

// Scans every triple (A subset-of B, z outside B) for a violation of
// f(A+z) - f(A) >= f(B+z) - f(B) and returns the first one in a fixed
// enumeration order: A by descending bitmask, then z ascending, then B by
// ascending bitmask. Returns nothing when the inequality holds everywhere
// on this instance (so for CSIU, always).
inline std::optional<SubmodularityWitness> find_submodularity_violation(
    const CoarseInstance& instance, MetricKind metric,
    int max_sites = kDefaultViolationMaxSites) {
  const int m = instance.site_count();
  if (m > max_sites) {
    throw std::runtime_error("violation search limited to " +
                             std::to_string(max_sites) + " sites");
  }
  const detail::CoverageIndex index(instance);
  if (!index.metric_defined(metric)) return std::nullopt;

  const std::uint32_t full = m >= 32 ? ~0u : (1u << m) - 1;
  std::vector<Fraction> f(full + 1);
  {
    std::vector<std::vector<std::uint64_t>> bits(
        full + 1, std::vector<std::uint64_t>(index.words(), 0));
    for (std::uint32_t s = 1; s <= full; ++s) {
      const int low = std::countr_zero(s);
      bits[s] = bits[s & (s - 1)];
      detail::bits_or(bits[s], index.site_bits(low));
      f[s] = index.evaluate(metric, bits[s]);
    }
    f[0] = index.evaluate(metric, bits[0]);
  }

  const auto to_ids = [m](std::uint32_t mask) {
    std::vector<int> ids;
    for (int s = 0; s < m; ++s) {
      if (mask & (1u << s)) ids.push_back(s);
    }
    return ids;
  };

  for (std::uint32_t a = full;; --a) {
    for (int z = 0; z < m; ++z) {
      const std::uint32_t zbit = 1u << z;
      if (a & zbit) continue;
      const Fraction gain_a = f[a | zbit] - f[a];
      const std::uint32_t comp = full & ~a & ~zbit;
      // subsets of comp in ascending numeric order
      for (std::uint32_t s = (0 - comp) & comp; s != 0; s = (s - comp) & comp) {
        const std::uint32_t b = a | s;
        const Fraction gain_b = f[b | zbit] - f[b];
        if (gain_a < gain_b) {
          return SubmodularityWitness{to_ids(a), to_ids(b), z, gain_a, gain_b};
        }
      }
    }
    if (a == 0) break;
  }
  return std::nullopt;
}

}  // namespace siteflow

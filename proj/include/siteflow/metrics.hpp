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

// The three benefit metrics of the coverage model.
//
//   IU    — demand units served over the whole horizon divided by total
//           demand units (a point with demand in k sub-intervals counts k
//           units on both sides of the ratio).
//   CSIU  — sum over sub-intervals of the per-sub-interval coverage
//           fraction; monotone and submodular.
//   MSIU  — worst per-sub-interval coverage fraction; monotone but not
//           submodular.
//
// Sub-intervals with zero total demand are excluded from CSIU's sum and
// MSIU's minimum: a period with no demand neither rewards nor punishes a
// selection.

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "siteflow/coverage.hpp"
#include "siteflow/fraction.hpp"

namespace siteflow {

enum class MetricKind { kIntervalUtility, kCumulative, kMinimum };

inline std::string metric_name(MetricKind kind) {
  switch (kind) {
    case MetricKind::kIntervalUtility: return "iu";
    case MetricKind::kCumulative: return "csiu";
    case MetricKind::kMinimum: return "msiu";
  }
  throw std::logic_error("unknown metric kind");
}

inline MetricKind metric_from_name(const std::string& name) {
  if (name == "iu") return MetricKind::kIntervalUtility;
  if (name == "csiu") return MetricKind::kCumulative;
  if (name == "msiu") return MetricKind::kMinimum;
  throw std::invalid_argument("unknown metric: " + name);
}

struct MetricValue {
  MetricKind kind = MetricKind::kIntervalUtility;
  Fraction exact;
  double value = 0.0;

  static MetricValue make(MetricKind kind, Fraction exact) {
    return MetricValue{kind, exact, exact.value()};
  }
};

// Covered and total demand units per sub-interval for a selection.
struct SubintervalCoverage {
  std::int64_t covered = 0;
  std::int64_t total = 0;
};

inline std::vector<SubintervalCoverage> subinterval_coverage(
    const CoarseInstance& instance, std::span<const int> selection) {
  const std::vector<std::uint8_t> mask = coverage_mask(instance, selection);
  std::vector<SubintervalCoverage> per_t(instance.num_subintervals);
  for (int j = 0; j < instance.point_count(); ++j) {
    const DemandPoint& p = instance.demand_points[j];
    for (int t = 0; t < instance.num_subintervals; ++t) {
      per_t[t].total += p.demand_by_subinterval[t];
      if (mask[j]) per_t[t].covered += p.demand_by_subinterval[t];
    }
  }
  return per_t;
}

namespace detail {

inline Fraction interval_utility_exact(
    const std::vector<SubintervalCoverage>& per_t) {
  std::int64_t covered = 0;
  std::int64_t total = 0;
  for (const SubintervalCoverage& c : per_t) {
    covered += c.covered;
    total += c.total;
  }
  if (total == 0) {
    throw std::domain_error("undefined ratio: no demand over the interval");
  }
  return Fraction(covered, total);
}

inline Fraction cumulative_exact(
    const std::vector<SubintervalCoverage>& per_t) {
  Fraction sum;
  for (const SubintervalCoverage& c : per_t) {
    if (c.total == 0) continue;
    sum = sum + Fraction(c.covered, c.total);
  }
  return sum;
}

inline Fraction minimum_exact(const std::vector<SubintervalCoverage>& per_t) {
  bool any = false;
  Fraction min;
  for (const SubintervalCoverage& c : per_t) {
    if (c.total == 0) continue;
    const Fraction ratio(c.covered, c.total);
    if (!any || ratio < min) min = ratio;
    any = true;
  }
  if (!any) {
    throw std::domain_error("undefined ratio: no sub-interval has demand");
  }
  return min;
}

inline Fraction metric_exact(MetricKind kind,
                             const std::vector<SubintervalCoverage>& per_t) {
  switch (kind) {
    case MetricKind::kIntervalUtility: return interval_utility_exact(per_t);
    case MetricKind::kCumulative: return cumulative_exact(per_t);
    case MetricKind::kMinimum: return minimum_exact(per_t);
  }
  throw std::logic_error("unknown metric kind");
}

}  // namespace detail

inline MetricValue interval_utility(const CoarseInstance& instance,
                                    std::span<const int> selection) {
  return MetricValue::make(
      MetricKind::kIntervalUtility,
      detail::interval_utility_exact(subinterval_coverage(instance, selection)));
}

inline MetricValue cumulative_subinterval_utility(
    const CoarseInstance& instance, std::span<const int> selection) {
  return MetricValue::make(
      MetricKind::kCumulative,
      detail::cumulative_exact(subinterval_coverage(instance, selection)));
}

inline MetricValue minimum_subinterval_utility(
    const CoarseInstance& instance, std::span<const int> selection) {
  return MetricValue::make(
      MetricKind::kMinimum,
      detail::minimum_exact(subinterval_coverage(instance, selection)));
}

inline MetricValue evaluate_metric(const CoarseInstance& instance,
                                   std::span<const int> selection,
                                   MetricKind kind) {
  return MetricValue::make(
      kind, detail::metric_exact(kind, subinterval_coverage(instance, selection)));
}

}  // namespace siteflow

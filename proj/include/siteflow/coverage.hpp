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

// Geometric instance representation for the coverage-style site-selection
// model: candidate sites serve every demand point within a fixed radius.

#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace siteflow {

struct Point2D {
  double x = 0.0;  // kilometers, planar
  double y = 0.0;
};

inline double squared_distance(const Point2D& a, const Point2D& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// A demand point carries a {0,1} demand for each of the r sub-intervals.
struct DemandPoint {
  int id = 0;
  Point2D location;
  std::vector<std::uint8_t> demand_by_subinterval;
};

struct CandidateSite {
  int id = 0;
  Point2D location;
};

struct CoarseInstance {
  std::vector<CandidateSite> sites;
  std::vector<DemandPoint> demand_points;
  double radius = 0.0;     // service radius R, kilometers
  int num_subintervals = 1;
  int budget = 0;          // number of sites that may be built

  int site_count() const { return static_cast<int>(sites.size()); }
  int point_count() const { return static_cast<int>(demand_points.size()); }

  // Total demand units in sub-interval t over the whole area of interest.
  std::int64_t total_demand(int subinterval) const {
    std::int64_t total = 0;
    for (const DemandPoint& p : demand_points) {
      total += p.demand_by_subinterval[subinterval];
    }
    return total;
  }

  void validate() const {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
      throw std::invalid_argument("service radius must be positive");
    }
    if (num_subintervals <= 0) {
      throw std::invalid_argument("num_subintervals must be positive");
    }
    if (budget < 0 || budget > site_count()) {
      throw std::invalid_argument("budget must lie in [0, number of sites]");
    }
    for (int i = 0; i < site_count(); ++i) {
      if (sites[i].id != i) {
        throw std::invalid_argument("site ids must be contiguous from 0");
      }
      if (!std::isfinite(sites[i].location.x) ||
          !std::isfinite(sites[i].location.y)) {
        throw std::invalid_argument("site coordinates must be finite");
      }
    }
    for (int j = 0; j < point_count(); ++j) {
      const DemandPoint& p = demand_points[j];
      if (p.id != j) {
        throw std::invalid_argument("demand point ids must be contiguous from 0");
      }
      if (!std::isfinite(p.location.x) || !std::isfinite(p.location.y)) {
        throw std::invalid_argument("demand point coordinates must be finite");
      }
      if (static_cast<int>(p.demand_by_subinterval.size()) !=
          num_subintervals) {
        throw std::invalid_argument(
            "demand vector length must equal num_subintervals");
      }
      for (std::uint8_t d : p.demand_by_subinterval) {
        if (d > 1) {
          throw std::invalid_argument("demands must be 0 or 1");
        }
      }
    }
  }
};

// Ids of the demand points a facility at `site_id` can serve. Points exactly
// on the service circle are covered (closed disk).
inline std::vector<int> coverage_set(const CoarseInstance& instance,
                                     int site_id) {
  if (site_id < 0 || site_id >= instance.site_count()) {
    throw std::out_of_range("site id " + std::to_string(site_id) +
                            " not in instance");
  }
  const double r2 = instance.radius * instance.radius;
  const Point2D center = instance.sites[site_id].location;
  std::vector<int> covered;
  for (const DemandPoint& p : instance.demand_points) {
    if (squared_distance(center, p.location) <= r2) {
      covered.push_back(p.id);
    }
  }
  return covered;
}

// Boolean coverage mask of a selection, used by the metric evaluators.
inline std::vector<std::uint8_t> coverage_mask(
    const CoarseInstance& instance, std::span<const int> selection) {
  std::vector<std::uint8_t> mask(instance.point_count(), 0);
  const double r2 = instance.radius * instance.radius;
  for (int site_id : selection) {
    if (site_id < 0 || site_id >= instance.site_count()) {
      throw std::out_of_range("site id " + std::to_string(site_id) +
                              " not in instance");
    }
    const Point2D center = instance.sites[site_id].location;
    for (const DemandPoint& p : instance.demand_points) {
      if (squared_distance(center, p.location) <= r2) {
        mask[p.id] = 1;
      }
    }
  }
  return mask;
}

// SA(L') = union of the coverage sets of the selected sites, as sorted ids.
inline std::vector<int> service_area_union(const CoarseInstance& instance,
                                           std::span<const int> selection) {
  const std::vector<std::uint8_t> mask = coverage_mask(instance, selection);
  std::vector<int> covered;
  for (int j = 0; j < instance.point_count(); ++j) {
    if (mask[j]) covered.push_back(j);
  }
  return covered;
}

}  // namespace siteflow

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

// Deterministic synthetic-instance generator calibrated to published
// Arizona solar-farm figures: 14 farms of 15-403 MW costing 13.63-402.14
// million dollars, 9 demand points drawing up to 4057.48 MW, transmission
// lines of 250-1000 MW costing 1.27-117.30 million dollars.
//
// Base values are drawn uniformly in those ranges; per-entity noise bounded
// by a six-entry variance vector (site cost, site capacity, per-period
// generation, line capacity, line cost, per-period demand) perturbs them,
// then everything is clamped back into range and kept at two decimals.
// Identical seed and parameters give a bit-identical instance.

#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "siteflow/coverage.hpp"
#include "siteflow/fine_solver.hpp"
#include "siteflow/flow_network.hpp"
#include "siteflow/rng.hpp"
#include "siteflow/units.hpp"

namespace siteflow {

struct GenParams {
  std::uint64_t seed = 42;
  int n_sites = 14;
  int m_loads = 9;
  int num_periods = 12;

  // calibration ranges, centi units (0.01 MW / 0.01 million USD)
  CentiMw site_capacity_min = 1500;      // 15 MW
  CentiMw site_capacity_max = 40300;     // 403 MW
  CentiMusd site_cost_min = 1363;        // 13.63 M$
  CentiMusd site_cost_max = 40214;       // 402.14 M$
  CentiMusd line_cost_min = 127;         // 1.27 M$
  CentiMusd line_cost_max = 11730;       // 117.30 M$
  std::vector<CentiMw> line_capacity_choices = {25000, 50000, 75000, 100000};
  CentiMw demand_min = 0;
  CentiMw demand_max = 405748;           // 4057.48 MW

  // sigma_1..sigma_6: site cost, site capacity, per-period generation,
  // line capacity, line cost, per-period demand. Defaults are 10% of the
  // matching range width.
  std::array<std::int64_t, 6> variance = {3885, 3880, 3880, 7500, 1160, 40574};

  void validate() const {
    if (n_sites <= 0 || m_loads <= 0 || num_periods <= 0) {
      throw std::invalid_argument("counts must be positive");
    }
    if (site_capacity_min > site_capacity_max ||
        site_cost_min > site_cost_max || line_cost_min > line_cost_max ||
        demand_min > demand_max) {
      throw std::invalid_argument("empty parameter range");
    }
    if (line_capacity_choices.empty()) {
      throw std::invalid_argument("no line capacity choices");
    }
    for (std::int64_t v : variance) {
      if (v < 0) throw std::invalid_argument("variances must be nonnegative");
    }
  }
};

namespace detail {

// stream tags for SplitMix64::fork
inline constexpr std::uint64_t kSiteStream = 1;
inline constexpr std::uint64_t kLoadStream = 2;
inline constexpr std::uint64_t kLineStream = 3;
inline constexpr std::uint64_t kSiteGeoStream = 4;
inline constexpr std::uint64_t kPointGeoStream = 5;

inline std::int64_t clamp_range(std::int64_t v, std::int64_t lo,
                                std::int64_t hi) {
  return std::min(std::max(v, lo), hi);
}

}  // namespace detail

// The generated budget is 40% of the instance's total build cost; override
// it afterwards (or via the CLI) to study other regimes.
inline FineInstance generate_instance(const GenParams& params) {
  params.validate();
  const SplitMix64 root(params.seed);

  FineInstance instance;
  instance.num_periods = params.num_periods;

  for (int i = 0; i < params.n_sites; ++i) {
    SplitMix64 rng = root.fork(detail::kSiteStream).fork(i);
    SiteSpec site;
    site.id = i;
    const CentiMw base_cap =
        rng.next_int(params.site_capacity_min, params.site_capacity_max);
    const CentiMw max_cap = detail::clamp_range(
        base_cap + rng.next_int(-params.variance[1], params.variance[1]),
        params.site_capacity_min, params.site_capacity_max);
    site.build_cost = detail::clamp_range(
        rng.next_int(params.site_cost_min, params.site_cost_max) +
            rng.next_int(-params.variance[0], params.variance[0]),
        params.site_cost_min, params.site_cost_max);
    site.capacity_by_period.resize(params.num_periods);
    for (int p = 0; p < params.num_periods; ++p) {
      // generation fluctuates below the site's maximum capacity
      site.capacity_by_period[p] = detail::clamp_range(
          max_cap - rng.next_int(0, params.variance[2]), 0, max_cap);
    }
    instance.sites.push_back(std::move(site));
  }

  for (int j = 0; j < params.m_loads; ++j) {
    SplitMix64 rng = root.fork(detail::kLoadStream).fork(j);
    LoadSpec load;
    load.id = j;
    const CentiMw base = rng.next_int(params.demand_min, params.demand_max);
    load.demand_by_period.resize(params.num_periods);
    for (int p = 0; p < params.num_periods; ++p) {
      load.demand_by_period[p] = detail::clamp_range(
          base + rng.next_int(-params.variance[5], params.variance[5]),
          params.demand_min, params.demand_max);
    }
    instance.loads.push_back(std::move(load));
  }

  instance.lines.resize(params.n_sites);
  for (int i = 0; i < params.n_sites; ++i) {
    instance.lines[i].resize(params.m_loads);
    for (int j = 0; j < params.m_loads; ++j) {
      SplitMix64 rng = root.fork(detail::kLineStream)
                           .fork(static_cast<std::uint64_t>(i) * params.m_loads + j);
      LineSpec line;
      const CentiMw choice =
          params.line_capacity_choices[rng.next_index(
              params.line_capacity_choices.size())];
      line.capacity = detail::clamp_range(
          choice + rng.next_int(-params.variance[3], params.variance[3]),
          params.line_capacity_choices.front(),
          params.line_capacity_choices.back());
      line.build_cost = detail::clamp_range(
          rng.next_int(params.line_cost_min, params.line_cost_max) +
              rng.next_int(-params.variance[4], params.variance[4]),
          params.line_cost_min, params.line_cost_max);
      instance.lines[i][j] = line;
    }
  }

  instance.budget = instance.total_build_cost() * 2 / 5;
  instance.validate();
  return instance;
}

// Coverage-model companion instance: the fine instance's loads become unit
// demand points (demand 1 in a period where the load draws more than the
// midpoint of the demand range), everything scattered in a 100 km square
// with a 35 km service radius.
inline CoarseInstance generate_coarse_instance(const GenParams& params) {
  const FineInstance fine = generate_instance(params);
  const SplitMix64 root(params.seed);

  CoarseInstance instance;
  instance.num_subintervals = params.num_periods;
  instance.radius = 35.0;
  instance.budget = std::max(1, params.n_sites / 4);

  for (int i = 0; i < params.n_sites; ++i) {
    SplitMix64 rng = root.fork(detail::kSiteGeoStream).fork(i);
    CandidateSite site;
    site.id = i;
    site.location.x = centi_to_double(rng.next_int(0, 10000));
    site.location.y = centi_to_double(rng.next_int(0, 10000));
    instance.sites.push_back(site);
  }

  const CentiMw threshold = (params.demand_min + params.demand_max) / 2;
  for (int j = 0; j < params.m_loads; ++j) {
    SplitMix64 rng = root.fork(detail::kPointGeoStream).fork(j);
    DemandPoint point;
    point.id = j;
    point.location.x = centi_to_double(rng.next_int(0, 10000));
    point.location.y = centi_to_double(rng.next_int(0, 10000));
    point.demand_by_subinterval.resize(params.num_periods);
    for (int p = 0; p < params.num_periods; ++p) {
      point.demand_by_subinterval[p] =
          fine.loads[j].demand_by_period[p] > threshold ? 1 : 0;
    }
    instance.demand_points.push_back(std::move(point));
  }

  instance.validate();
  return instance;
}

enum class SweepAxis { kBudget, kSupplyScale, kDemandScale };

inline std::string axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kBudget: return "budget";
    case SweepAxis::kSupplyScale: return "supply_scale";
    case SweepAxis::kDemandScale: return "demand_scale";
  }
  throw std::logic_error("unknown axis");
}

struct SweepPoint {
  double axis_value = 0.0;
  CentiMw total_demand = 0;  // of the instance actually solved
  FineSolution solution;
  double solve_ms = 0.0;
};

namespace detail {

// Per-period generation scaled by alpha but never above the site's maximum
// capacity (taken from the unscaled instance).
inline FineInstance scale_supply(const FineInstance& base, double alpha) {
  FineInstance scaled = base;
  for (int i = 0; i < base.site_count(); ++i) {
    const CentiMw max_cap = base.sites[i].max_capacity();
    for (CentiMw& c : scaled.sites[i].capacity_by_period) {
      c = std::min<CentiMw>(
          std::llround(alpha * static_cast<double>(c)), max_cap);
    }
  }
  return scaled;
}

inline FineInstance scale_demand(const FineInstance& base, double alpha) {
  FineInstance scaled = base;
  for (LoadSpec& load : scaled.loads) {
    for (CentiMw& d : load.demand_by_period) {
      d = std::llround(alpha * static_cast<double>(d));
    }
  }
  return scaled;
}

inline bool supply_fully_clamped(const FineInstance& scaled,
                                 const FineInstance& base) {
  for (int i = 0; i < base.site_count(); ++i) {
    const CentiMw max_cap = base.sites[i].max_capacity();
    for (CentiMw c : scaled.sites[i].capacity_by_period) {
      if (c < max_cap) return false;
    }
  }
  return true;
}

}  // namespace detail

// Solves the instance at every grid value of the chosen axis, in grid
// order. A supply-scale sweep ends early once every site is pinned at its
// maximum capacity: later grid values cannot change the instance.
inline std::vector<SweepPoint> sweep(const FineInstance& base, SweepAxis axis,
                                     std::span<const double> grid) {
  if (grid.empty()) throw std::invalid_argument("empty sweep grid");
  for (double v : grid) {
    if (!(v >= 0.0)) throw std::invalid_argument("grid values must be >= 0");
  }

  std::vector<SweepPoint> points;
  for (double value : grid) {
    FineInstance scaled = base;
    switch (axis) {
      case SweepAxis::kBudget:
        scaled.budget = centi_from_double(value);
        break;
      case SweepAxis::kSupplyScale:
        scaled = detail::scale_supply(base, value);
        break;
      case SweepAxis::kDemandScale:
        scaled = detail::scale_demand(base, value);
        break;
    }

    SweepPoint point;
    point.axis_value = value;
    point.total_demand = scaled.total_demand();
    const auto start = std::chrono::steady_clock::now();
    point.solution = solve(scaled);
    point.solve_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    points.push_back(std::move(point));

    if (axis == SweepAxis::kSupplyScale &&
        detail::supply_fully_clamped(scaled, base)) {
      break;  // the curve has hit every site maximum
    }
  }
  return points;
}

// Exact property checks for the three sweep families (also used by the
// experiment command to gate its exit code). Percent comparisons cross-
// multiply 64-bit flow and demand totals, so no floating point is involved.

inline bool budget_sweep_ok(std::span<const SweepPoint> points) {
  for (std::size_t k = 1; k < points.size(); ++k) {
    if (points[k].solution.objective_flow <
        points[k - 1].solution.objective_flow) {
      return false;
    }
  }
  // the final (largest) budget must attain the column maximum
  CentiMw best = 0;
  for (const SweepPoint& p : points) {
    best = std::max(best, p.solution.objective_flow);
  }
  return points.empty() || points.back().solution.objective_flow == best;
}

inline bool supply_sweep_ok(std::span<const SweepPoint> points) {
  for (std::size_t k = 1; k < points.size(); ++k) {
    if (points[k].solution.objective_flow <
        points[k - 1].solution.objective_flow) {
      return false;
    }
  }
  return true;
}

inline bool demand_sweep_ok(std::span<const SweepPoint> points) {
  for (std::size_t k = 1; k < points.size(); ++k) {
    const SweepPoint& a = points[k - 1];
    const SweepPoint& b = points[k];
    // objective never drops when demand grows
    if (b.solution.objective_flow < a.solution.objective_flow) return false;
    // met fraction never rises: flow_b/demand_b <= flow_a/demand_a
    if (a.total_demand > 0 && b.total_demand > 0) {
      const __int128 lhs =
          static_cast<__int128>(b.solution.objective_flow) * a.total_demand;
      const __int128 rhs =
          static_cast<__int128>(a.solution.objective_flow) * b.total_demand;
      if (lhs > rhs) return false;
    }
  }
  return true;
}

}  // namespace siteflow

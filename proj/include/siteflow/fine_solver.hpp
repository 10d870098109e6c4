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

// Exact budgeted site-and-line selection: maximize the summed per-period
// max flow subject to the budget and the line-needs-site coupling.
//
// solve()            depth-first branch and bound over the binary build
//                    variables. Branch order: sites before lines, each
//                    group by descending capacity/cost ratio, true first.
//                    Bounds treat undecided builds as free capacity; a
//                    fractional-knapsack refinement charges undecided
//                    builds against the remaining budget. Bounds only
//                    discard subtrees whose value cannot exceed the
//                    incumbent, so the returned decision is identical to
//                    the plain search's.
// brute_force_solve  exhaustive oracle over all feasible decisions for
//                    tiny instances.
// relaxation_bound   the plain bound: every undecided variable built.

#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "siteflow/flow_network.hpp"
#include "siteflow/units.hpp"

namespace siteflow {

enum class VarState : std::uint8_t { kFalse, kTrue, kUndecided };

struct PartialDecision {
  std::vector<VarState> site;               // x_i
  std::vector<std::vector<VarState>> line;  // y_ij

  static PartialDecision all_undecided(int sites, int loads) {
    return PartialDecision{
        std::vector<VarState>(sites, VarState::kUndecided),
        std::vector<std::vector<VarState>>(
            sites, std::vector<VarState>(loads, VarState::kUndecided))};
  }
};

struct SearchStats {
  std::int64_t nodes_explored = 0;
  std::int64_t nodes_pruned = 0;
};

struct FineSolution {
  BuildDecision decision;
  std::vector<CentiMw> total_flow_by_period;
  CentiMw objective_flow = 0;         // sum over periods
  CentiMusd total_cost = 0;
  double demand_met_fraction = 0.0;   // objective / total demand, in [0,1]
  SearchStats stats;
};

namespace detail {

// Evaluates summed per-period max flow for arbitrary enable masks without
// reallocating network or solver state between calls.
class FlowEvaluator {
 public:
  explicit FlowEvaluator(const FineInstance& instance)
      : instance_(&instance),
        n_(instance.site_count()),
        m_(instance.load_count()),
        solver_(n_ + m_ + 2),
        arcs_(FlowNetwork(n_, m_).arcs()) {}

  // site_on has n entries, line_on has n*m entries in site-major order.
  CentiMw period_flow(int period, const std::uint8_t* site_on,
                      const std::uint8_t* line_on) {
    for (int i = 0; i < n_; ++i) {
      arcs_[i].capacity =
          site_on[i] ? instance_->sites[i].capacity_by_period[period] : 0;
    }
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < m_; ++j) {
        arcs_[n_ + i * m_ + j].capacity =
            line_on[i * m_ + j] ? instance_->lines[i][j].capacity : 0;
      }
    }
    for (int j = 0; j < m_; ++j) {
      arcs_[n_ + n_ * m_ + j].capacity =
          instance_->loads[j].demand_by_period[period];
    }
    return solver_.solve(arcs_, 0, n_ + m_ + 1);
  }

  CentiMw total_flow(const std::uint8_t* site_on, const std::uint8_t* line_on) {
    CentiMw total = 0;
    for (int p = 0; p < instance_->num_periods; ++p) {
      total += period_flow(p, site_on, line_on);
    }
    return total;
  }

 private:
  const FineInstance* instance_;
  int n_;
  int m_;
  DinicSolver solver_;
  std::vector<Arc> arcs_;
};

}  // namespace detail

// Flow summed over all periods with every undecided variable treated as
// built; a valid upper bound on any completion of the partial decision.
inline CentiMw relaxation_bound(const FineInstance& instance,
                                const PartialDecision& partial,
                                CentiMusd committed_cost) {
  if (committed_cost > instance.budget) {
    throw std::invalid_argument("committed cost exceeds budget");
  }
  const int n = instance.site_count();
  const int m = instance.load_count();
  std::vector<std::uint8_t> site_on(n, 0);
  std::vector<std::uint8_t> line_on(n * m, 0);
  for (int i = 0; i < n; ++i) {
    site_on[i] = partial.site[i] != VarState::kFalse;
    for (int j = 0; j < m; ++j) {
      line_on[i * m + j] =
          site_on[i] && partial.line[i][j] != VarState::kFalse;
    }
  }
  detail::FlowEvaluator eval(instance);
  return eval.total_flow(site_on.data(), line_on.data());
}

// Flows, cost and demand-met fraction of a complete decision.
inline FineSolution evaluate_decision(const FineInstance& instance,
                                      const BuildDecision& decision) {
  FineSolution solution;
  solution.decision = decision;
  solution.total_flow_by_period.resize(instance.num_periods);
  for (int p = 0; p < instance.num_periods; ++p) {
    solution.total_flow_by_period[p] =
        max_flow(build_network(instance, decision, p)).total_flow;
    solution.objective_flow += solution.total_flow_by_period[p];
  }
  solution.total_cost = decision.total_cost(instance);
  const CentiMw demand = instance.total_demand();
  solution.demand_met_fraction =
      demand == 0 ? 0.0
                  : static_cast<double>(solution.objective_flow) /
                        static_cast<double>(demand);
  return solution;
}

namespace detail {

class BranchAndBound {
 public:
  explicit BranchAndBound(const FineInstance& instance)
      : instance_(&instance),
        n_(instance.site_count()),
        m_(instance.load_count()),
        site_state_(n_, VarState::kUndecided),
        line_state_(n_ * m_, VarState::kUndecided),
        eval_(instance),
        site_buf_(n_, 0),
        line_buf_(n_ * m_, 0) {
    build_order();
    build_knapsack_items();
  }

  FineSolution run() {
    warm_start();
    if (!order_.empty()) dfs(0);
    FineSolution solution = evaluate_decision(*instance_, best_decision_);
    solution.stats = stats_;
    return solution;
  }

 private:
  struct Var {
    bool is_site;
    int site;
    int load;          // -1 for site vars
    CentiMusd cost;
  };

  struct KnapItem {
    int var_index;     // site id, or flat line index
    CentiMusd cost;
    CentiMw value;     // upper bound on the flow this build can add
  };

  void build_order() {
    std::vector<int> site_ids(n_);
    for (int i = 0; i < n_; ++i) site_ids[i] = i;
    std::vector<CentiMw> site_cap(n_, 0);
    for (int i = 0; i < n_; ++i) {
      for (CentiMw c : instance_->sites[i].capacity_by_period) {
        site_cap[i] += c;
      }
    }
    std::sort(site_ids.begin(), site_ids.end(), [&](int a, int b) {
      const __int128 lhs = static_cast<__int128>(site_cap[a]) *
                           instance_->sites[b].build_cost;
      const __int128 rhs = static_cast<__int128>(site_cap[b]) *
                           instance_->sites[a].build_cost;
      if (lhs != rhs) return lhs > rhs;
      return a < b;
    });
    for (int i : site_ids) {
      order_.push_back(Var{true, i, -1, instance_->sites[i].build_cost});
    }

    std::vector<int> line_ids(n_ * m_);
    for (int k = 0; k < n_ * m_; ++k) line_ids[k] = k;
    const auto line_of = [this](int k) -> const LineSpec& {
      return instance_->lines[k / m_][k % m_];
    };
    std::sort(line_ids.begin(), line_ids.end(), [&](int a, int b) {
      const __int128 lhs =
          static_cast<__int128>(line_of(a).capacity) * line_of(b).build_cost;
      const __int128 rhs =
          static_cast<__int128>(line_of(b).capacity) * line_of(a).build_cost;
      if (lhs != rhs) return lhs > rhs;
      return a < b;
    });
    for (int k : line_ids) {
      order_.push_back(Var{false, k / m_, k % m_, line_of(k).build_cost});
    }
    first_line_pos_ = n_;
  }

  void build_knapsack_items() {
    for (int i = 0; i < n_; ++i) {
      CentiMw row_line_cap = 0;
      for (int j = 0; j < m_; ++j) {
        row_line_cap += instance_->lines[i][j].capacity;
      }
      CentiMw value = 0;
      for (CentiMw c : instance_->sites[i].capacity_by_period) {
        value += std::min(c, row_line_cap);
      }
      site_knap_.push_back(KnapItem{i, instance_->sites[i].build_cost, value});
    }
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < m_; ++j) {
        CentiMw value = 0;
        for (int p = 0; p < instance_->num_periods; ++p) {
          value += std::min({instance_->lines[i][j].capacity,
                             instance_->sites[i].capacity_by_period[p],
                             instance_->loads[j].demand_by_period[p]});
        }
        line_knap_.push_back(
            KnapItem{i * m_ + j, instance_->lines[i][j].build_cost, value});
      }
    }
    const auto by_ratio = [](const KnapItem& a, const KnapItem& b) {
      const __int128 lhs = static_cast<__int128>(a.value) * b.cost;
      const __int128 rhs = static_cast<__int128>(b.value) * a.cost;
      if (lhs != rhs) return lhs > rhs;
      return a.var_index < b.var_index;
    };
    std::sort(site_knap_.begin(), site_knap_.end(), by_ratio);
    std::sort(line_knap_.begin(), line_knap_.end(), by_ratio);
  }

  // Adds builds in branch order while the budget allows; a decent incumbent
  // before the first bound is ever computed.
  void warm_start() {
    CentiMusd cost = 0;
    BuildDecision decision = BuildDecision::none(n_, m_);
    for (const Var& v : order_) {
      if (v.is_site) {
        if (cost + v.cost <= instance_->budget) {
          decision.build_site[v.site] = 1;
          cost += v.cost;
        }
      } else if (decision.build_site[v.site] &&
                 cost + v.cost <= instance_->budget) {
        decision.build_line[v.site][v.load] = 1;
        cost += v.cost;
      }
    }
    fill_buffers_from(decision);
    best_value_ = eval_.total_flow(site_buf_.data(), line_buf_.data());
    best_decision_ = decision;
  }

  void fill_buffers_from(const BuildDecision& decision) {
    for (int i = 0; i < n_; ++i) site_buf_[i] = decision.build_site[i];
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < m_; ++j) {
        line_buf_[i * m_ + j] = decision.build_line[i][j];
      }
    }
  }

  // Treats undecided vars as built (lines of false sites stay off).
  void fill_relaxed_buffers() {
    for (int i = 0; i < n_; ++i) {
      site_buf_[i] = site_state_[i] != VarState::kFalse;
    }
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < m_; ++j) {
        line_buf_[i * m_ + j] =
            site_buf_[i] && line_state_[i * m_ + j] != VarState::kFalse;
      }
    }
  }

  BuildDecision decision_from_relaxed() const {
    BuildDecision decision = BuildDecision::none(n_, m_);
    for (int i = 0; i < n_; ++i) {
      decision.build_site[i] = site_state_[i] != VarState::kFalse;
    }
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < m_; ++j) {
        decision.build_line[i][j] = decision.build_site[i] &&
                                    line_state_[i * m_ + j] != VarState::kFalse;
      }
    }
    return decision;
  }

  CentiMw fractional_knapsack(const std::vector<KnapItem>& items,
                              const std::vector<VarState>& states,
                              CentiMusd residual) const {
    CentiMw bound = 0;
    for (const KnapItem& item : items) {
      if (states[item.var_index] != VarState::kUndecided) continue;
      if (item.value == 0) continue;
      if (item.cost <= residual) {
        bound += item.value;
        residual -= item.cost;
      } else {
        // fractional tail, rounded up to stay an upper bound
        const __int128 part = (static_cast<__int128>(item.value) * residual +
                               item.cost - 1) /
                              item.cost;
        bound += static_cast<CentiMw>(part);
        break;
      }
    }
    return bound;
  }

  // min of the capacity relaxation and a budget-aware refinement:
  //   site phase: flow(built sites only, undecided lines free)
  //               + knapsack over undecided sites
  //   line phase: flow(decided builds only) + knapsack over undecided lines
  CentiMw bound(int next, CentiMusd residual) {
    fill_relaxed_buffers();
    const CentiMw relax = eval_.total_flow(site_buf_.data(), line_buf_.data());

    const bool site_phase = next < first_line_pos_;
    if (site_phase) {
      for (int i = 0; i < n_; ++i) {
        site_buf_[i] = site_state_[i] == VarState::kTrue;
      }
      for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < m_; ++j) {
          line_buf_[i * m_ + j] =
              site_buf_[i] && line_state_[i * m_ + j] != VarState::kFalse;
        }
      }
      const CentiMw base = eval_.total_flow(site_buf_.data(), line_buf_.data());
      const CentiMw knap = fractional_knapsack(site_knap_, site_state_, residual);
      return std::min(relax, base + knap);
    }

    for (int i = 0; i < n_; ++i) {
      site_buf_[i] = site_state_[i] == VarState::kTrue;
    }
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < m_; ++j) {
        line_buf_[i * m_ + j] =
            site_buf_[i] && line_state_[i * m_ + j] == VarState::kTrue;
      }
    }
    const CentiMw base = eval_.total_flow(site_buf_.data(), line_buf_.data());
    const CentiMw knap = fractional_knapsack(line_knap_, line_state_, residual);
    return std::min(relax, base + knap);
  }

  void maybe_update_incumbent_from_relaxed() {
    fill_relaxed_buffers();
    const CentiMw value = eval_.total_flow(site_buf_.data(), line_buf_.data());
    if (value > best_value_) {
      best_value_ = value;
      best_decision_ = decision_from_relaxed();
    }
  }

  // Total cost of the undecided suffix, skipping lines whose site is false.
  CentiMusd undecided_suffix_cost(int from) const {
    CentiMusd cost = 0;
    for (std::size_t k = from; k < order_.size(); ++k) {
      const Var& v = order_[k];
      if (v.is_site) {
        if (site_state_[v.site] == VarState::kUndecided) cost += v.cost;
      } else if (site_state_[v.site] != VarState::kFalse &&
                 line_state_[v.site * m_ + v.load] == VarState::kUndecided) {
        cost += v.cost;
      }
    }
    return cost;
  }

  void dfs(int k) {
    ++stats_.nodes_explored;

    if (k == static_cast<int>(order_.size())) {
      maybe_update_incumbent_from_relaxed();  // nothing undecided at a leaf
      return;
    }

    const Var& v = order_[k];

    // a line whose site is out is forced out (coupling)
    if (!v.is_site && site_state_[v.site] == VarState::kFalse) {
      line_state_[v.site * m_ + v.load] = VarState::kFalse;
      dfs(k + 1);
      line_state_[v.site * m_ + v.load] = VarState::kUndecided;
      return;
    }

    // everything left fits in the budget: the all-built completion is the
    // best in this subtree, take it and close the node
    if (committed_ + undecided_suffix_cost(k) <= instance_->budget) {
      maybe_update_incumbent_from_relaxed();
      return;
    }

    if (bound(k, instance_->budget - committed_) <= best_value_) {
      ++stats_.nodes_pruned;
      return;
    }

    VarState& state = v.is_site ? site_state_[v.site]
                                : line_state_[v.site * m_ + v.load];

    if (committed_ + v.cost <= instance_->budget) {
      state = VarState::kTrue;
      committed_ += v.cost;
      dfs(k + 1);
      committed_ -= v.cost;
      state = VarState::kUndecided;
    } else {
      ++stats_.nodes_pruned;  // true branch infeasible
    }

    state = VarState::kFalse;
    dfs(k + 1);
    state = VarState::kUndecided;
  }

  const FineInstance* instance_;
  int n_;
  int m_;
  int first_line_pos_ = 0;
  std::vector<Var> order_;
  std::vector<KnapItem> site_knap_;
  std::vector<KnapItem> line_knap_;
  std::vector<VarState> site_state_;
  std::vector<VarState> line_state_;
  CentiMusd committed_ = 0;
  CentiMw best_value_ = -1;
  BuildDecision best_decision_;
  SearchStats stats_;
  FlowEvaluator eval_;
  std::vector<std::uint8_t> site_buf_;
  std::vector<std::uint8_t> line_buf_;
};

}  // namespace detail

// Exact optimum via branch and bound. Deterministic: identical instances
// produce identical decisions.
inline FineSolution solve(const FineInstance& instance) {
  instance.validate();
  detail::BranchAndBound search(instance);
  return search.run();
}

inline constexpr int kBruteForceMaxSites = 5;
inline constexpr int kBruteForceMaxLoads = 4;

// Exhaustive oracle: every feasible (x, y) with y restricted to built sites,
// with cost pruning and the all-remaining-affordable dominance shortcut.
inline FineSolution brute_force_solve(const FineInstance& instance) {
  instance.validate();
  const int n = instance.site_count();
  const int m = instance.load_count();
  if (n > kBruteForceMaxSites || m > kBruteForceMaxLoads) {
    throw std::invalid_argument("instance too large for brute force");
  }

  detail::FlowEvaluator eval(instance);
  std::vector<std::uint8_t> site_on(std::max(n, 1), 0);
  std::vector<std::uint8_t> line_on(std::max(n * m, 1), 0);

  CentiMw best_value = -1;
  BuildDecision best = BuildDecision::none(n, m);

  for (std::uint32_t xmask = 0; xmask < (1u << n); ++xmask) {
    CentiMusd site_cost = 0;
    for (int i = 0; i < n; ++i) {
      site_on[i] = (xmask >> i) & 1;
      if (site_on[i]) site_cost += instance.sites[i].build_cost;
    }
    if (site_cost > instance.budget) continue;

    std::vector<std::pair<int, int>> built_lines;  // (i, j) ascending
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) {
        line_on[i * m + j] = 0;
        if (site_on[i]) built_lines.emplace_back(i, j);
      }
    }
    std::vector<CentiMusd> suffix_cost(built_lines.size() + 1, 0);
    for (int k = static_cast<int>(built_lines.size()) - 1; k >= 0; --k) {
      const auto [i, j] = built_lines[k];
      suffix_cost[k] = suffix_cost[k + 1] + instance.lines[i][j].build_cost;
    }

    const auto consider = [&]() {
      const CentiMw value = eval.total_flow(site_on.data(), line_on.data());
      if (value > best_value) {
        best_value = value;
        best.build_site.assign(site_on.begin(), site_on.begin() + n);
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < m; ++j) {
            best.build_line[i][j] = line_on[i * m + j];
          }
        }
      }
    };

    const auto recurse = [&](auto&& self, std::size_t k,
                             CentiMusd cost) -> void {
      if (cost + suffix_cost[k] <= instance.budget) {
        // all remaining lines fit; the all-built completion dominates
        for (std::size_t t = k; t < built_lines.size(); ++t) {
          line_on[built_lines[t].first * m + built_lines[t].second] = 1;
        }
        consider();
        for (std::size_t t = k; t < built_lines.size(); ++t) {
          line_on[built_lines[t].first * m + built_lines[t].second] = 0;
        }
        return;
      }
      if (k == built_lines.size()) {
        consider();
        return;
      }
      const auto [i, j] = built_lines[k];
      self(self, k + 1, cost);
      if (cost + instance.lines[i][j].build_cost <= instance.budget) {
        line_on[i * m + j] = 1;
        self(self, k + 1, cost + instance.lines[i][j].build_cost);
        line_on[i * m + j] = 0;
      }
    };
    recurse(recurse, 0, site_cost);
  }

  return evaluate_decision(instance, best);
}

}  // namespace siteflow

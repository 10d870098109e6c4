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

// The SuperSource -> sites -> loads -> SuperLoad transport network and an
// exact integral max-flow solver (Dinic's blocking-flow algorithm).
//
// A network over n sites and m loads always has n + m + 2 nodes and exactly
// n + m + n*m arcs; arcs disabled by a build decision keep their slot with
// zero capacity so arc counts and decision diffs stay trivial.

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "siteflow/units.hpp"

namespace siteflow {

struct SiteSpec {
  int id = 0;
  CentiMusd build_cost = 0;                  // SCost_i
  std::vector<CentiMw> capacity_by_period;   // generation available per period

  // The site's maximum generation capacity (SCap_i).
  CentiMw max_capacity() const {
    CentiMw best = 0;
    for (CentiMw c : capacity_by_period) best = std::max(best, c);
    return best;
  }
};

struct LoadSpec {
  int id = 0;
  std::vector<CentiMw> demand_by_period;  // D_Lj per period
};

struct LineSpec {
  CentiMusd build_cost = 0;  // LCost_ij
  CentiMw capacity = 0;      // LCap_ij
};

struct FineInstance {
  std::vector<SiteSpec> sites;
  std::vector<LoadSpec> loads;
  std::vector<std::vector<LineSpec>> lines;  // [site][load]
  CentiMusd budget = 0;
  int num_periods = 1;

  int site_count() const { return static_cast<int>(sites.size()); }
  int load_count() const { return static_cast<int>(loads.size()); }

  CentiMusd total_build_cost() const {
    CentiMusd total = 0;
    for (const SiteSpec& s : sites) total += s.build_cost;
    for (const auto& row : lines) {
      for (const LineSpec& l : row) total += l.build_cost;
    }
    return total;
  }

  CentiMw total_demand() const {
    CentiMw total = 0;
    for (const LoadSpec& l : loads) {
      for (CentiMw d : l.demand_by_period) total += d;
    }
    return total;
  }

  void validate() const {
    if (num_periods <= 0) {
      throw std::invalid_argument("num_periods must be positive");
    }
    if (budget < 0) throw std::invalid_argument("budget must be nonnegative");
    if (static_cast<int>(lines.size()) != site_count()) {
      throw std::invalid_argument("line matrix must have one row per site");
    }
    for (int i = 0; i < site_count(); ++i) {
      const SiteSpec& s = sites[i];
      if (s.id != i) {
        throw std::invalid_argument("site ids must be contiguous from 0");
      }
      if (s.build_cost < 0) {
        throw std::invalid_argument("site build cost must be nonnegative");
      }
      if (static_cast<int>(s.capacity_by_period.size()) != num_periods) {
        throw std::invalid_argument("site capacity list length != num_periods");
      }
      for (CentiMw c : s.capacity_by_period) {
        if (c < 0) throw std::invalid_argument("capacities must be nonnegative");
      }
      if (static_cast<int>(lines[i].size()) != load_count()) {
        throw std::invalid_argument("line matrix must have one column per load");
      }
      for (const LineSpec& l : lines[i]) {
        if (l.build_cost < 0 || l.capacity < 0) {
          throw std::invalid_argument("line cost/capacity must be nonnegative");
        }
      }
    }
    for (int j = 0; j < load_count(); ++j) {
      const LoadSpec& l = loads[j];
      if (l.id != j) {
        throw std::invalid_argument("load ids must be contiguous from 0");
      }
      if (static_cast<int>(l.demand_by_period.size()) != num_periods) {
        throw std::invalid_argument("load demand list length != num_periods");
      }
      for (CentiMw d : l.demand_by_period) {
        if (d < 0) throw std::invalid_argument("demands must be nonnegative");
      }
    }
  }
};

// x_i / y_ij build indicators; a line may be built only if its site is.
struct BuildDecision {
  std::vector<std::uint8_t> build_site;               // x
  std::vector<std::vector<std::uint8_t>> build_line;  // y[site][load]

  static BuildDecision none(int sites, int loads) {
    return BuildDecision{
        std::vector<std::uint8_t>(sites, 0),
        std::vector<std::vector<std::uint8_t>>(
            sites, std::vector<std::uint8_t>(loads, 0))};
  }

  static BuildDecision all(int sites, int loads) {
    return BuildDecision{
        std::vector<std::uint8_t>(sites, 1),
        std::vector<std::vector<std::uint8_t>>(
            sites, std::vector<std::uint8_t>(loads, 1))};
  }

  bool coupling_ok() const {
    for (std::size_t i = 0; i < build_line.size(); ++i) {
      for (std::uint8_t y : build_line[i]) {
        if (y && !build_site[i]) return false;
      }
    }
    return true;
  }

  CentiMusd total_cost(const FineInstance& instance) const {
    CentiMusd cost = 0;
    for (int i = 0; i < instance.site_count(); ++i) {
      if (build_site[i]) cost += instance.sites[i].build_cost;
      for (int j = 0; j < instance.load_count(); ++j) {
        if (build_line[i][j]) cost += instance.lines[i][j].build_cost;
      }
    }
    return cost;
  }

  friend bool operator==(const BuildDecision&, const BuildDecision&) = default;
};

struct Arc {
  int from = 0;
  int to = 0;
  CentiMw capacity = 0;
};

// Fixed node layout: SS = 0, site i -> 1 + i, load j -> 1 + n + j,
// SL = 1 + n + m. Arc layout: [0, n) SS->site, [n, n + n*m) site->load in
// site-major order, then [n + n*m, n + n*m + m) load->SL.
class FlowNetwork {
 public:
  FlowNetwork(int sites, int loads)
      : sites_(sites), loads_(loads), arcs_(sites + loads + sites * loads) {
    for (int i = 0; i < sites_; ++i) {
      arcs_[source_arc(i)] = Arc{super_source(), site_node(i), 0};
    }
    for (int i = 0; i < sites_; ++i) {
      for (int j = 0; j < loads_; ++j) {
        arcs_[line_arc(i, j)] = Arc{site_node(i), load_node(j), 0};
      }
    }
    for (int j = 0; j < loads_; ++j) {
      arcs_[sink_arc(j)] = Arc{load_node(j), super_sink(), 0};
    }
  }

  int site_count() const { return sites_; }
  int load_count() const { return loads_; }
  int node_count() const { return sites_ + loads_ + 2; }
  int arc_count() const { return static_cast<int>(arcs_.size()); }

  int super_source() const { return 0; }
  int site_node(int i) const { return 1 + i; }
  int load_node(int j) const { return 1 + sites_ + j; }
  int super_sink() const { return 1 + sites_ + loads_; }

  int source_arc(int i) const { return i; }
  int line_arc(int i, int j) const { return sites_ + i * loads_ + j; }
  int sink_arc(int j) const { return sites_ + sites_ * loads_ + j; }

  const Arc& arc(int index) const { return arcs_[index]; }
  const std::vector<Arc>& arcs() const { return arcs_; }

  void set_capacity(int index, CentiMw capacity) {
    arcs_[index].capacity = capacity;
  }

 private:
  int sites_;
  int loads_;
  std::vector<Arc> arcs_;
};

// Network for one period under a build decision: SS->site arcs carry the
// period generation when the site is built, site->load arcs carry line
// capacity when the line is built, load->SL arcs carry the period demand.
inline FlowNetwork build_network(const FineInstance& instance,
                                 const BuildDecision& decision, int period) {
  if (period < 0 || period >= instance.num_periods) {
    throw std::out_of_range("period out of range");
  }
  if (!decision.coupling_ok()) {
    throw std::invalid_argument("invalid decision: line built without site");
  }
  const int n = instance.site_count();
  const int m = instance.load_count();
  FlowNetwork net(n, m);
  for (int i = 0; i < n; ++i) {
    net.set_capacity(net.source_arc(i),
                     decision.build_site[i]
                         ? instance.sites[i].capacity_by_period[period]
                         : 0);
    for (int j = 0; j < m; ++j) {
      net.set_capacity(net.line_arc(i, j), decision.build_line[i][j]
                                               ? instance.lines[i][j].capacity
                                               : 0);
    }
  }
  for (int j = 0; j < m; ++j) {
    net.set_capacity(net.sink_arc(j), instance.loads[j].demand_by_period[period]);
  }
  return net;
}

struct FlowResult {
  CentiMw total_flow = 0;
  std::vector<CentiMw> arc_flow;  // indexed like FlowNetwork arcs
};

// Reusable Dinic solver over a fixed node count. Arcs are loaded per call;
// level/queue buffers persist across calls so the branch-and-bound search
// can evaluate thousands of bounds without reallocating.
class DinicSolver {
 public:
  explicit DinicSolver(int node_count)
      : nodes_(node_count), head_(node_count, -1), level_(node_count),
        iter_(node_count), queue_(node_count) {}

  // Returns the max-flow value; per-arc flows are retrievable afterwards in
  // load order via arc_flow().
  CentiMw solve(const std::vector<Arc>& arcs, int source, int sink) {
    std::fill(head_.begin(), head_.end(), -1);
    edges_.clear();
    edges_.reserve(arcs.size() * 2);
    for (const Arc& a : arcs) {
      add_edge(a.from, a.to, a.capacity);
    }
    source_ = source;
    sink_ = sink;

    CentiMw flow = 0;
    while (build_levels()) {
      iter_ = head_;
      CentiMw pushed;
      while ((pushed = augment(source_, kInf)) > 0) flow += pushed;
    }
    return flow;
  }

  CentiMw arc_flow(int arc_index) const {
    // forward edge of arc k sits at 2k; its residual holds the pushed flow
    return edges_[2 * arc_index + 1].capacity;
  }

 private:
  static constexpr CentiMw kInf = std::numeric_limits<CentiMw>::max();

  struct Edge {
    int to;
    int next;
    CentiMw capacity;
  };

  void add_edge(int from, int to, CentiMw capacity) {
    edges_.push_back(Edge{to, head_[from], capacity});
    head_[from] = static_cast<int>(edges_.size()) - 1;
    edges_.push_back(Edge{from, head_[to], 0});
    head_[to] = static_cast<int>(edges_.size()) - 1;
  }

  bool build_levels() {
    std::fill(level_.begin(), level_.end(), -1);
    int qh = 0, qt = 0;
    queue_[qt++] = source_;
    level_[source_] = 0;
    while (qh < qt) {
      const int u = queue_[qh++];
      for (int e = head_[u]; e >= 0; e = edges_[e].next) {
        if (edges_[e].capacity > 0 && level_[edges_[e].to] < 0) {
          level_[edges_[e].to] = level_[u] + 1;
          queue_[qt++] = edges_[e].to;
        }
      }
    }
    return level_[sink_] >= 0;
  }

  CentiMw augment(int u, CentiMw limit) {
    if (u == sink_) return limit;
    for (int& e = iter_[u]; e >= 0; e = edges_[e].next) {
      Edge& edge = edges_[e];
      if (edge.capacity > 0 && level_[edge.to] == level_[u] + 1) {
        const CentiMw pushed =
            augment(edge.to, std::min(limit, edge.capacity));
        if (pushed > 0) {
          edge.capacity -= pushed;
          edges_[e ^ 1].capacity += pushed;
          return pushed;
        }
      }
    }
    level_[u] = -1;
    return 0;
  }

  int nodes_;
  int source_ = 0;
  int sink_ = 0;
  std::vector<int> head_;
  std::vector<int> level_;
  std::vector<int> iter_;
  std::vector<int> queue_;
  std::vector<Edge> edges_;
};

// Exact maximum SS->SL flow with an integral per-arc decomposition.
inline FlowResult max_flow(const FlowNetwork& network) {
  DinicSolver solver(network.node_count());
  FlowResult result;
  result.total_flow = solver.solve(network.arcs(), network.super_source(),
                                   network.super_sink());
  result.arc_flow.resize(network.arc_count());
  for (int k = 0; k < network.arc_count(); ++k) {
    result.arc_flow[k] = solver.arc_flow(k);
  }
  return result;
}

}  // namespace siteflow

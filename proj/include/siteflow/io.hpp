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

// Instance file format (JSON, schema-versioned) plus solution and sweep-CSV
// emitters. Money and power travel as strings with exactly two decimals so
// files are fixed-point exact; serialization is canonical (sorted keys) and
// parse(serialize(x)) is the identity.

#pragma once

#include <fstream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "siteflow/coarse_solvers.hpp"
#include "siteflow/coverage.hpp"
#include "siteflow/datagen.hpp"
#include "siteflow/fine_solver.hpp"
#include "siteflow/flow_network.hpp"
#include "siteflow/metrics.hpp"
#include "siteflow/units.hpp"

namespace siteflow {

inline constexpr int kFormatVersion = 1;

enum class InstanceKind { kCoarse, kFine };

struct GeneratorMetadata {
  std::string name;  // rng algorithm, e.g. "splitmix64"
  std::uint64_t seed = 0;
  GenParams params;
};

struct InstanceFile {
  int format_version = kFormatVersion;
  InstanceKind kind = InstanceKind::kFine;
  std::optional<CoarseInstance> coarse;
  std::optional<FineInstance> fine;
  std::optional<GeneratorMetadata> generator;
};

namespace detail {

using Json = nlohmann::json;

inline Json params_to_json(const GenParams& p) {
  Json j;
  j["n_sites"] = p.n_sites;
  j["m_loads"] = p.m_loads;
  j["num_periods"] = p.num_periods;
  j["site_capacity_range"] = {format_centi(p.site_capacity_min),
                              format_centi(p.site_capacity_max)};
  j["site_cost_range"] = {format_centi(p.site_cost_min),
                          format_centi(p.site_cost_max)};
  j["line_cost_range"] = {format_centi(p.line_cost_min),
                          format_centi(p.line_cost_max)};
  Json choices = Json::array();
  for (CentiMw c : p.line_capacity_choices) choices.push_back(format_centi(c));
  j["line_capacity_choices"] = choices;
  j["demand_range"] = {format_centi(p.demand_min), format_centi(p.demand_max)};
  Json sigmas = Json::array();
  for (std::int64_t v : p.variance) sigmas.push_back(format_centi(v));
  j["variance_vector"] = sigmas;
  return j;
}

inline GenParams params_from_json(const Json& j, std::uint64_t seed) {
  GenParams p;
  p.seed = seed;
  p.n_sites = j.at("n_sites").get<int>();
  p.m_loads = j.at("m_loads").get<int>();
  p.num_periods = j.at("num_periods").get<int>();
  p.site_capacity_min = parse_centi(j.at("site_capacity_range").at(0));
  p.site_capacity_max = parse_centi(j.at("site_capacity_range").at(1));
  p.site_cost_min = parse_centi(j.at("site_cost_range").at(0));
  p.site_cost_max = parse_centi(j.at("site_cost_range").at(1));
  p.line_cost_min = parse_centi(j.at("line_cost_range").at(0));
  p.line_cost_max = parse_centi(j.at("line_cost_range").at(1));
  p.line_capacity_choices.clear();
  for (const auto& c : j.at("line_capacity_choices")) {
    p.line_capacity_choices.push_back(parse_centi(c));
  }
  p.demand_min = parse_centi(j.at("demand_range").at(0));
  p.demand_max = parse_centi(j.at("demand_range").at(1));
  const auto& sigmas = j.at("variance_vector");
  if (sigmas.size() != p.variance.size()) {
    throw std::invalid_argument("variance_vector must have 6 entries");
  }
  for (std::size_t k = 0; k < p.variance.size(); ++k) {
    p.variance[k] = parse_centi(sigmas.at(k));
  }
  return p;
}

inline Json fine_to_json(const FineInstance& instance) {
  Json j;
  j["budget"] = format_centi(instance.budget);
  j["num_periods"] = instance.num_periods;
  Json sites = Json::array();
  for (const SiteSpec& s : instance.sites) {
    Json js;
    js["id"] = s.id;
    js["build_cost"] = format_centi(s.build_cost);
    Json caps = Json::array();
    for (CentiMw c : s.capacity_by_period) caps.push_back(format_centi(c));
    js["capacity_by_period"] = caps;
    sites.push_back(js);
  }
  j["sites"] = sites;
  Json loads = Json::array();
  for (const LoadSpec& l : instance.loads) {
    Json jl;
    jl["id"] = l.id;
    Json demands = Json::array();
    for (CentiMw d : l.demand_by_period) demands.push_back(format_centi(d));
    jl["demand_by_period"] = demands;
    loads.push_back(jl);
  }
  j["loads"] = loads;
  Json lines = Json::array();
  for (const auto& row : instance.lines) {
    Json jrow = Json::array();
    for (const LineSpec& l : row) {
      Json jl;
      jl["build_cost"] = format_centi(l.build_cost);
      jl["capacity"] = format_centi(l.capacity);
      jrow.push_back(jl);
    }
    lines.push_back(jrow);
  }
  j["lines"] = lines;
  return j;
}

inline FineInstance fine_from_json(const Json& j) {
  FineInstance instance;
  instance.budget = parse_centi(j.at("budget"));
  instance.num_periods = j.at("num_periods").get<int>();
  for (const auto& js : j.at("sites")) {
    SiteSpec s;
    s.id = js.at("id").get<int>();
    s.build_cost = parse_centi(js.at("build_cost"));
    for (const auto& c : js.at("capacity_by_period")) {
      s.capacity_by_period.push_back(parse_centi(c));
    }
    instance.sites.push_back(std::move(s));
  }
  for (const auto& jl : j.at("loads")) {
    LoadSpec l;
    l.id = jl.at("id").get<int>();
    for (const auto& d : jl.at("demand_by_period")) {
      l.demand_by_period.push_back(parse_centi(d));
    }
    instance.loads.push_back(std::move(l));
  }
  for (const auto& jrow : j.at("lines")) {
    std::vector<LineSpec> row;
    for (const auto& jl : jrow) {
      row.push_back(LineSpec{parse_centi(jl.at("build_cost")),
                             parse_centi(jl.at("capacity"))});
    }
    instance.lines.push_back(std::move(row));
  }
  instance.validate();
  return instance;
}

inline Json coarse_to_json(const CoarseInstance& instance) {
  Json j;
  j["radius_km"] = instance.radius;
  j["num_subintervals"] = instance.num_subintervals;
  j["budget"] = instance.budget;
  Json sites = Json::array();
  for (const CandidateSite& s : instance.sites) {
    Json js;
    js["id"] = s.id;
    js["x"] = s.location.x;
    js["y"] = s.location.y;
    sites.push_back(js);
  }
  j["sites"] = sites;
  Json points = Json::array();
  for (const DemandPoint& p : instance.demand_points) {
    Json jp;
    jp["id"] = p.id;
    jp["x"] = p.location.x;
    jp["y"] = p.location.y;
    Json demand = Json::array();
    for (std::uint8_t d : p.demand_by_subinterval) demand.push_back(int(d));
    jp["demand_by_subinterval"] = demand;
    points.push_back(jp);
  }
  j["demand_points"] = points;
  return j;
}

inline CoarseInstance coarse_from_json(const Json& j) {
  CoarseInstance instance;
  instance.radius = j.at("radius_km").get<double>();
  instance.num_subintervals = j.at("num_subintervals").get<int>();
  instance.budget = j.at("budget").get<int>();
  for (const auto& js : j.at("sites")) {
    CandidateSite s;
    s.id = js.at("id").get<int>();
    s.location.x = js.at("x").get<double>();
    s.location.y = js.at("y").get<double>();
    instance.sites.push_back(s);
  }
  for (const auto& jp : j.at("demand_points")) {
    DemandPoint p;
    p.id = jp.at("id").get<int>();
    p.location.x = jp.at("x").get<double>();
    p.location.y = jp.at("y").get<double>();
    for (const auto& d : jp.at("demand_by_subinterval")) {
      p.demand_by_subinterval.push_back(d.get<int>());
    }
    instance.demand_points.push_back(std::move(p));
  }
  instance.validate();
  return instance;
}

}  // namespace detail

inline nlohmann::json instance_file_to_json(const InstanceFile& file) {
  nlohmann::json j;
  j["format_version"] = file.format_version;
  j["kind"] = file.kind == InstanceKind::kCoarse ? "coarse" : "fine";
  if (file.kind == InstanceKind::kCoarse) {
    if (!file.coarse) throw std::invalid_argument("missing coarse payload");
    j["coarse"] = detail::coarse_to_json(*file.coarse);
  } else {
    if (!file.fine) throw std::invalid_argument("missing fine payload");
    j["fine"] = detail::fine_to_json(*file.fine);
  }
  if (file.generator) {
    nlohmann::json g;
    g["name"] = file.generator->name;
    g["seed"] = file.generator->seed;
    g["params"] = detail::params_to_json(file.generator->params);
    j["generator"] = g;
  }
  return j;
}

inline InstanceFile instance_file_from_json(const nlohmann::json& j) {
  InstanceFile file;
  file.format_version = j.at("format_version").get<int>();
  if (file.format_version != kFormatVersion) {
    throw std::invalid_argument("unsupported format_version");
  }
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "coarse") {
    file.kind = InstanceKind::kCoarse;
    file.coarse = detail::coarse_from_json(j.at("coarse"));
  } else if (kind == "fine") {
    file.kind = InstanceKind::kFine;
    file.fine = detail::fine_from_json(j.at("fine"));
  } else {
    throw std::invalid_argument("unknown instance kind: " + kind);
  }
  if (j.contains("generator")) {
    GeneratorMetadata meta;
    meta.name = j.at("generator").at("name").get<std::string>();
    meta.seed = j.at("generator").at("seed").get<std::uint64_t>();
    meta.params =
        detail::params_from_json(j.at("generator").at("params"), meta.seed);
    file.generator = meta;
  }
  return file;
}

// Canonical text form: two-space indent, sorted keys, trailing newline.
inline std::string serialize_instance(const InstanceFile& file) {
  return instance_file_to_json(file).dump(2) + "\n";
}

inline InstanceFile parse_instance(const std::string& text) {
  return instance_file_from_json(nlohmann::json::parse(text));
}

inline void write_instance_file(const std::string& path,
                                const InstanceFile& file) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << serialize_instance(file);
}

inline InstanceFile read_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

// --- solution reports ---

inline nlohmann::json coarse_solution_to_json(const CoarseInstance& instance,
                                              const CoarseSolution& solution) {
  nlohmann::json j;
  j["kind"] = "coarse-solution";
  j["method"] = method_name(solution.method);
  j["metric"] = metric_name(solution.objective.kind);
  j["selected_sites"] = solution.selected_sites;
  j["objective"] = {{"value", solution.objective.value},
                    {"exact", solution.objective.exact.to_string()}};
  nlohmann::json per = nlohmann::json::array();
  for (const SubintervalCoverage& c :
       subinterval_coverage(instance, solution.selected_sites)) {
    nlohmann::json jc;
    jc["covered"] = c.covered;
    jc["total"] = c.total;
    jc["ratio"] = c.total == 0 ? 0.0
                               : static_cast<double>(c.covered) /
                                     static_cast<double>(c.total);
    per.push_back(jc);
  }
  j["per_subinterval"] = per;
  return j;
}

inline nlohmann::json fine_solution_to_json(const FineInstance& instance,
                                            const FineSolution& solution) {
  nlohmann::json j;
  j["kind"] = "fine-solution";
  j["objective_mw"] = format_centi(solution.objective_flow);
  nlohmann::json flows = nlohmann::json::array();
  for (CentiMw f : solution.total_flow_by_period) {
    flows.push_back(format_centi(f));
  }
  j["flow_by_period_mw"] = flows;
  j["total_cost"] = format_centi(solution.total_cost);
  j["budget"] = format_centi(instance.budget);
  // met fraction rendered as a percentage with two decimals
  j["demand_met_percent"] =
      format_centi(std::llround(solution.demand_met_fraction * 10000.0));
  std::vector<int> built_sites;
  nlohmann::json built_lines = nlohmann::json::array();
  for (int i = 0; i < instance.site_count(); ++i) {
    if (solution.decision.build_site[i]) built_sites.push_back(i);
    for (int l = 0; l < instance.load_count(); ++l) {
      if (solution.decision.build_line[i][l]) {
        built_lines.push_back({i, l});
      }
    }
  }
  j["built_sites"] = built_sites;
  j["built_lines"] = built_lines;
  j["search"] = {{"nodes_explored", solution.stats.nodes_explored},
                 {"nodes_pruned", solution.stats.nodes_pruned}};
  return j;
}

// --- sweep CSV ---

inline void write_sweep_csv(std::ostream& out, SweepAxis axis,
                            std::span<const SweepPoint> points) {
  out << "axis,value,objective_mw,demand_met_percent,total_cost,solve_time_ms\n";
  const std::string name = axis_name(axis);
  for (const SweepPoint& p : points) {
    const double percent = p.total_demand == 0
                               ? 0.0
                               : 100.0 * static_cast<double>(p.solution.objective_flow) /
                                     static_cast<double>(p.total_demand);
    char percent_buf[32];
    std::snprintf(percent_buf, sizeof(percent_buf), "%.4f", percent);
    char value_buf[32];
    std::snprintf(value_buf, sizeof(value_buf), "%.2f", p.axis_value);
    char time_buf[32];
    std::snprintf(time_buf, sizeof(time_buf), "%.3f", p.solve_ms);
    out << name << ',' << value_buf << ','
        << format_centi(p.solution.objective_flow) << ',' << percent_buf << ','
        << format_centi(p.solution.total_cost) << ',' << time_buf << '\n';
  }
}

}  // namespace siteflow

#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "scnplan/conformance.hpp"
#include "scnplan/link_budget.hpp"
#include "scnplan/planner.hpp"
#include "scnplan/scenario.hpp"

namespace scnplan {

// Sectioned plain-text configuration: "[section]" headers, "#" comments,
// free-form token lines or "key = value" lines. Grammar documented in the
// README.
struct ParsedConfig {
    std::filesystem::path source;
    std::map<std::string, std::vector<std::string>> sections;

    bool has(const std::string& section) const;
    const std::vector<std::string>& lines(const std::string& section) const;
    // key=value views of a section
    std::vector<std::pair<std::string, std::string>> kv(const std::string& section) const;
    std::string value(const std::string& section, const std::string& key,
                      const std::string& fallback) const;
    bool has_key(const std::string& section, const std::string& key) const;
};

ParsedConfig parse_config(const std::filesystem::path& path);

ScenarioGrid parse_grid(const ParsedConfig& cfg);
NetworkState parse_network(const ParsedConfig& cfg, const ScenarioGrid& grid);
std::vector<Tenant> parse_tenants(const ParsedConfig& cfg);
LinkBudget parse_budget(const ParsedConfig& cfg);
PlannerConfig parse_planner(const ParsedConfig& cfg, const NetworkState& network);
MonitorConfig parse_monitor(const ParsedConfig& cfg, const PlannerConfig& planner);

// Resolves the [traffic] section: per-tenant map files or synthesis
// directives, plus the daily profile. Synthesis draws from the given seed.
TrafficMap parse_traffic(const ParsedConfig& cfg, const ScenarioGrid& grid,
                         uint64_t seed);

// Traffic map files: header "width_m height_m resolution_m name" followed by
// row-major whitespace-delimited values (row 0 = south edge).
struct GridMatrix {
    GridGeometry geom;
    std::string name;
    std::vector<double> values;
};
GridMatrix read_grid_matrix(const std::filesystem::path& path);
void write_grid_matrix(const std::filesystem::path& path, const GridGeometry& geom,
                       const std::string& name, std::span<const double> values);

// 8-bit PGM rendering of a grid matrix (linear scale between min and max).
void write_pgm(const std::filesystem::path& path, const GridGeometry& geom,
               std::span<const double> values);

} // namespace scnplan

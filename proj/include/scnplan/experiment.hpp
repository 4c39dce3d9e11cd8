#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "scnplan/conformance.hpp"
#include "scnplan/planner.hpp"
#include "scnplan/radio_model.hpp"
#include "scnplan/scenario.hpp"
#include "scnplan/sla_spec.hpp"

namespace scnplan {

// Everything a run needs, as loaded from a config file or synthesized.
struct Scenario {
    ScenarioGrid grid;
    std::vector<Tenant> tenants;
    TrafficMap traffic; // busy-hour layers of tenants with known demand
    NetworkState network;
    LinkBudget budget;
    PlannerConfig planner;
    MonitorConfig monitor;

    const Tenant& tenant(const std::string& id) const;
};

Scenario load_scenario(const std::filesystem::path& config_path,
                       std::optional<uint64_t> seed_override = {});

enum class PlannerMode { Alg1, Sota2, Sota3 };
const char* to_string(PlannerMode m);
PlannerMode planner_mode_from_string(const std::string& tag);

struct ExperimentConfig {
    std::string new_tenant;
    SpecMethod method = SpecMethod::CorrSc;
    PlannerMode mode = PlannerMode::Alg1;
    std::vector<double> correlations{0.90, 0.15};
    uint64_t seed = 1;
    bool replan = true;
    bool dump_maps = true;
    std::filesystem::path out_dir = "out";
};

// [experiment] section of a config file; missing keys keep the defaults.
ExperimentConfig parse_experiment(const std::filesystem::path& config_path);

struct StateSummary {
    int n_cells = 0;
    int n_channels = 0;
    double required_bw_mhz = 0.0;
    double cell_bw_mhz = 0.0;
    double shortage_mhz = 0.0;
};
StateSummary summarize(const ModelResult& eval);

struct CorrelationOutcome {
    double rho = 0.0;
    double achieved_rho = 0.0;
    bool triggered = false;
    bool replanned = false;
    StateSummary before; // operation with actual traffic, pre re-planning
    StateSummary after;  // post re-planning (== before when not replanned)
    PlanReport replan_report;
};

struct ExperimentResult {
    int exit_code = 0; // 0 ok, 2 non-convergence, 3 residual shortage at saturation
    int busy_hour_step = 0;
    double a_m_busy_mbps = 0.0;
    PlanReport planning_report;
    StateSummary planned;
    std::vector<CorrelationOutcome> outcomes;
    std::string notes;
};

// The full workflow: spec generation for the new tenant, planning, operation
// with actual (synthesized) traffic per correlation target, conformance check
// and re-planning, summary tables. Writes the result bundle under
// cfg.out_dir.
ExperimentResult run_experiment(const Scenario& scenario, const ExperimentConfig& cfg);

// Demand density, serving partition (cell ids, -1 sentinel) and deployment
// (channel count at site pixels) matrices plus PGM renders.
void emit_maps(const std::filesystem::path& dir, const std::string& prefix,
               const GridGeometry& geom, const NetworkState& state,
               const ServingMap& serving, std::span<const double> demand);

// Seeded synthetic scenario with the default evaluation parameters
// (0.4 km x 0.4 km at 5 m, 4x20 MHz channels, 2% candidate sites, three
// initial cells, one existing tenant plus an unknown-demand newcomer).
struct SyntheticParams {
    double width_m = 400.0;
    double height_m = 400.0;
    double resolution_m = 5.0;
    double candidate_fraction = 0.02;
    int initial_cells = 3;
    int initial_channels_per_cell = 2;
    double existing_total_mbps = 19.4;
    double new_tenant_contracted_mbps = 80.0;
    // Cosine profile with base 0.68 makes peak/mean exactly 1.25, so the
    // newcomer's busy-hour specification lands on 100 Mbps.
    double profile_base = 0.68;
    int smoothing_radius_px = 8;
    double hotspot_sigma = 0.8; // contrast of the log-normal demand field
};
Scenario make_synthetic_scenario(uint64_t seed, const SyntheticParams& params = {});

void write_scenario_file(const std::filesystem::path& path, const Scenario& scenario,
                         const std::filesystem::path& traffic_dir);

} // namespace scnplan

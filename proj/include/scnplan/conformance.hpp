#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "scnplan/scenario.hpp"

namespace scnplan {

struct MonitorConfig {
    double alpha = 0.95;        // spare-capacity margin in the trigger
    int consecutive_periods = 1; // L
    double period_s = 3600.0;   // T, for counter-based demand estimation

    void validate() const;
};

// Required bandwidth per cell from tenant demands capped by their planning
// specifications: (1/SE_i) * sum_m min(D_im, A_mi). Dimensions: [m][i] for
// the demand and cap matrices. A missing cap is +infinity (demand-driven).
// A cell with zero spectral efficiency and nonzero capped demand raises
// ModelError naming the cell.
std::vector<double> required_bw_estimate(
    const std::vector<std::vector<double>>& tenant_cell_demand_mbps,
    const std::vector<std::vector<double>>& spec_cap_mbps,
    std::span<const double> se_avg, std::span<const int> cell_ids);

// Counter-based estimators.
struct CounterRecord {
    int period = 0;
    int sc_id = 0;
    std::string tenant_id;
    double volume_bits = 0.0;
    double resource_s_hz = 0.0;
};

// CSV rows: period,sc_id,tenant_id,volume_bits,resource_s_hz (header allowed).
std::vector<CounterRecord> read_counters_csv(const std::filesystem::path& path);

struct CounterSummary {
    std::vector<int> cell_ids;
    std::vector<std::string> tenant_ids;
    std::vector<double> se_avg;                       // v_i / n_i, b/s/Hz
    std::vector<std::vector<double>> tenant_demand_mbps; // [tenant][cell]
};

// Aggregates one period of counters: SE from volume/resource-use, demand from
// volume/T. A cell with traffic but zero resource use raises ModelError.
CounterSummary summarize_period(std::span<const CounterRecord> records, int period,
                                double period_s);

struct TriggerResult {
    bool fired = false;
    std::vector<int> cell_ids; // offenders, ascending
};

// Condition: required bandwidth strictly above alpha * |F_i| * B in each of
// the last L periods, per cell. bw_history is [period][cell index], oldest
// first, aligned with state.cells.
TriggerResult trigger(const std::vector<std::vector<double>>& bw_history,
                      const NetworkState& state, const MonitorConfig& cfg);

// Advisory: tenants whose total demand strictly exceeds the contracted
// capacity (SLA review needed).
std::vector<bool> sla_exceedance(std::span<const double> tenant_total_demand_mbps,
                                 std::span<const Tenant> tenants);

} // namespace scnplan

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "scnplan/geometry.hpp"

namespace scnplan {

struct Tenant {
    std::string id;
    double contracted_capacity_mbps = 0.0;
    // Whether per-pixel demand of this tenant is available for spec building.
    bool demand_known = true;
};

// Per-tenant busy-hour demand layers plus the daily demand profile.
class TrafficMap {
public:
    TrafficMap() = default;
    explicit TrafficMap(int n_pixels) : n_pixels_(n_pixels) {}

    void add_layer(std::string tenant_id, std::vector<double> demand_mbps);
    void replace_layer(const std::string& tenant_id, std::vector<double> demand_mbps);
    void remove_layer(const std::string& tenant_id);

    int n_pixels() const { return n_pixels_; }
    int n_layers() const { return static_cast<int>(layers_.size()); }
    const std::string& tenant_id(int m) const { return tenant_ids_[m]; }
    int layer_index(const std::string& tenant_id) const; // -1 if absent
    std::span<const double> layer(int m) const { return layers_[m]; }

    // Aggregate demand d_u across tenants.
    std::vector<double> total_per_pixel() const;
    double total_mbps() const;
    double layer_total_mbps(int m) const;

    // Normalized total demand per time step over one day, length T >= 1.
    std::vector<double> daily_profile;

private:
    int n_pixels_ = 0;
    std::vector<std::string> tenant_ids_;
    std::vector<std::vector<double>> layers_;
};

// Geographic grid with the candidate site subset U_C and the initially
// deployed subset U_S (the live deployment evolves inside NetworkState).
struct ScenarioGrid {
    GridGeometry geom;
    std::vector<int> candidate_sites; // U_C, sorted ascending
    std::vector<int> deployed_sites;  // initial U_S, subset of U_C

    void validate() const; // U_S subset of U_C subset of U, no duplicates
};

int channel_count(uint32_t mask);
std::vector<int> channel_list(uint32_t mask); // ascending, 0-based

struct SmallCell {
    int id = 0;         // stable identity, assigned in deployment order
    int site_pixel = -1;
    uint32_t channels = 0; // bitmask over f_0..f_{K-1}
    double tx_power_dbm = 0.0;
    // Model-derived caches, filled by radio model evaluation.
    double capacity_mbps = 0.0;
    double avg_load = 0.0;

    int n_channels() const { return channel_count(channels); }
};

struct NetworkState {
    std::vector<SmallCell> cells; // deployment order; ids strictly increasing
    int num_channels = 4;         // K
    double channel_bandwidth_mhz = 20.0; // B
    int k_max = 3;

    int n_cells() const { return static_cast<int>(cells.size()); }
    int index_of(int cell_id) const; // -1 if absent
    int next_cell_id() const;
    double cell_bw_mhz(int idx) const {
        return cells[idx].n_channels() * channel_bandwidth_mhz;
    }
    int total_channels() const;

    void validate(const ScenarioGrid& grid) const;
};

// Per-cell demand aggregates derived from a serving map (Eq. 1 analogue).
struct CellAggregate {
    std::vector<double> total_mbps;                  // [cell]
    std::vector<std::vector<double>> tenant_mbps;    // [layer][cell]
};

// serving[u] is the index of the serving cell, -1 when unserved. Pixels with
// demand but no serving cell raise ModelError listing the offenders.
CellAggregate aggregate_to_cells(const TrafficMap& map, std::span<const int32_t> serving,
                                 int n_cells);

// Index of the maximum of a required-bandwidth series; ties break to the
// earliest step. Empty series raises ConfigError.
int busy_hour(std::span<const double> required_bw_series);

} // namespace scnplan

#include "scnplan/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "scnplan/error.hpp"

namespace scnplan {

GridGeometry GridGeometry::make(double width_m, double height_m, double resolution_m) {
    if (width_m <= 0 || height_m <= 0 || resolution_m <= 0) {
        throw ConfigError("grid dimensions and resolution must be positive");
    }
    GridGeometry g;
    g.width_m = width_m;
    g.height_m = height_m;
    g.resolution_m = resolution_m;
    double fx = width_m / resolution_m;
    double fy = height_m / resolution_m;
    g.nx = static_cast<int>(std::llround(fx));
    g.ny = static_cast<int>(std::llround(fy));
    if (std::abs(g.nx * resolution_m - width_m) > 1e-9 ||
        std::abs(g.ny * resolution_m - height_m) > 1e-9) {
        throw ConfigError("grid width/height must be exact multiples of the resolution");
    }
    return g;
}

void TrafficMap::add_layer(std::string tenant_id, std::vector<double> demand_mbps) {
    if (static_cast<int>(demand_mbps.size()) != n_pixels_) {
        throw ConfigError("traffic layer size does not match the grid");
    }
    for (double v : demand_mbps) {
        if (v < 0.0 || !std::isfinite(v)) {
            throw ConfigError("traffic demand must be finite and non-negative");
        }
    }
    if (layer_index(tenant_id) >= 0) {
        throw ConfigError("duplicate traffic layer for tenant '" + tenant_id + "'");
    }
    tenant_ids_.push_back(std::move(tenant_id));
    layers_.push_back(std::move(demand_mbps));
}

void TrafficMap::replace_layer(const std::string& tenant_id, std::vector<double> demand_mbps) {
    int m = layer_index(tenant_id);
    if (m < 0) {
        add_layer(tenant_id, std::move(demand_mbps));
        return;
    }
    if (static_cast<int>(demand_mbps.size()) != n_pixels_) {
        throw ConfigError("traffic layer size does not match the grid");
    }
    layers_[m] = std::move(demand_mbps);
}

void TrafficMap::remove_layer(const std::string& tenant_id) {
    int m = layer_index(tenant_id);
    if (m < 0) return;
    tenant_ids_.erase(tenant_ids_.begin() + m);
    layers_.erase(layers_.begin() + m);
}

int TrafficMap::layer_index(const std::string& tenant_id) const {
    for (size_t m = 0; m < tenant_ids_.size(); ++m) {
        if (tenant_ids_[m] == tenant_id) return static_cast<int>(m);
    }
    return -1;
}

std::vector<double> TrafficMap::total_per_pixel() const {
    std::vector<double> total(n_pixels_, 0.0);
    for (const auto& layer : layers_) {
        for (int u = 0; u < n_pixels_; ++u) total[u] += layer[u];
    }
    return total;
}

double TrafficMap::total_mbps() const {
    double s = 0.0;
    for (int m = 0; m < n_layers(); ++m) s += layer_total_mbps(m);
    return s;
}

double TrafficMap::layer_total_mbps(int m) const {
    double s = 0.0;
    for (double v : layers_[m]) s += v;
    return s;
}

void ScenarioGrid::validate() const {
    auto in_grid = [&](int u) { return geom.contains(u); };
    if (!std::is_sorted(candidate_sites.begin(), candidate_sites.end()) ||
        std::adjacent_find(candidate_sites.begin(), candidate_sites.end()) !=
            candidate_sites.end()) {
        throw ConfigError("candidate sites must be sorted and unique");
    }
    for (int u : candidate_sites) {
        if (!in_grid(u)) throw ConfigError("candidate site outside the grid");
    }
    for (int u : deployed_sites) {
        if (!std::binary_search(candidate_sites.begin(), candidate_sites.end(), u)) {
            throw ConfigError("deployed site is not a candidate site");
        }
    }
}

int channel_count(uint32_t mask) { return __builtin_popcount(mask); }

std::vector<int> channel_list(uint32_t mask) {
    std::vector<int> out;
    for (int k = 0; k < 32; ++k) {
        if (mask & (1u << k)) out.push_back(k);
    }
    return out;
}

int NetworkState::index_of(int cell_id) const {
    for (int i = 0; i < n_cells(); ++i) {
        if (cells[i].id == cell_id) return i;
    }
    return -1;
}

int NetworkState::next_cell_id() const {
    int id = 0;
    for (const auto& c : cells) id = std::max(id, c.id);
    return id + 1;
}

int NetworkState::total_channels() const {
    int n = 0;
    for (const auto& c : cells) n += c.n_channels();
    return n;
}

void NetworkState::validate(const ScenarioGrid& grid) const {
    if (num_channels < 1 || num_channels > 32) {
        throw ConfigError("channel count K must be in [1, 32]");
    }
    if (k_max < 1 || k_max > num_channels) {
        throw ConfigError("k_max must be in [1, K]");
    }
    if (channel_bandwidth_mhz <= 0) {
        throw ConfigError("channel bandwidth must be positive");
    }
    int prev_id = 0;
    for (const auto& c : cells) {
        if (c.id <= prev_id) throw ConfigError("cell ids must be strictly increasing");
        prev_id = c.id;
        if (!grid.geom.contains(c.site_pixel)) {
            throw ConfigError("cell site outside the grid");
        }
        int nch = c.n_channels();
        if (nch < 1 || nch > k_max) {
            throw ConfigError("cell channel count must be in [1, k_max]");
        }
        if (c.channels >> num_channels) {
            throw ConfigError("cell uses a channel index >= K");
        }
    }
}

CellAggregate aggregate_to_cells(const TrafficMap& map, std::span<const int32_t> serving,
                                 int n_cells) {
    if (static_cast<int>(serving.size()) != map.n_pixels()) {
        throw ModelError("serving map size does not match the traffic map");
    }
    std::vector<int> uncovered;
    auto total = map.total_per_pixel();
    for (int u = 0; u < map.n_pixels(); ++u) {
        if (total[u] > 0.0 && (serving[u] < 0 || serving[u] >= n_cells)) {
            uncovered.push_back(u);
        }
    }
    if (!uncovered.empty()) {
        std::ostringstream msg;
        msg << uncovered.size() << " pixel(s) with demand but no serving cell:";
        for (size_t i = 0; i < uncovered.size() && i < 16; ++i) msg << ' ' << uncovered[i];
        if (uncovered.size() > 16) msg << " ...";
        throw ModelError(msg.str());
    }

    CellAggregate agg;
    agg.total_mbps.assign(n_cells, 0.0);
    agg.tenant_mbps.assign(map.n_layers(), std::vector<double>(n_cells, 0.0));
    for (int m = 0; m < map.n_layers(); ++m) {
        auto layer = map.layer(m);
        for (int u = 0; u < map.n_pixels(); ++u) {
            double d = layer[u];
            if (d == 0.0) continue;
            agg.tenant_mbps[m][serving[u]] += d;
            agg.total_mbps[serving[u]] += d;
        }
    }
    return agg;
}

int busy_hour(std::span<const double> required_bw_series) {
    if (required_bw_series.empty()) {
        throw ConfigError("busy hour of an empty series is undefined");
    }
    int best = 0;
    for (int t = 1; t < static_cast<int>(required_bw_series.size()); ++t) {
        if (required_bw_series[t] > required_bw_series[best]) best = t;
    }
    return best;
}

} // namespace scnplan

#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "scnplan/link_budget.hpp"
#include "scnplan/scenario.hpp"

namespace scnplan {

// Pixel -> serving cell assignment plus per-pixel link quality for the
// serving cell. cell[u] == -1 means no cell deployed.
struct ServingMap {
    std::vector<int32_t> cell;
    std::vector<double> rx_power_lin; // strongest received power (mW)
    std::vector<double> sinr_lin;     // average SINR over the serving cell's channels
    std::vector<double> se;           // spectral efficiency, b/s/Hz
};

struct CellStats {
    int cell_id = 0;
    int site_pixel = -1;
    int n_channels = 0;
    double tx_power_dbm = 0.0;
    double demand_mbps = 0.0;             // D_i
    std::vector<double> tenant_demand_mbps; // D_{i,m}, traffic-map layer order
    double se_avg = 0.0;                  // average spectral efficiency
    double capacity_mbps = 0.0;           // |F_i| * B * se_avg
    double load = 0.0;                    // alpha_i in [0,1]
    double required_bw_mhz = 0.0;         // B_i, continuous
    double cell_bw_mhz = 0.0;             // |F_i| * B
    bool zero_capacity_with_demand = false;

    double shortage_mhz() const {
        return required_bw_mhz > cell_bw_mhz ? required_bw_mhz - cell_bw_mhz : 0.0;
    }
};

struct ModelResult {
    ServingMap serving;
    std::vector<CellStats> cells;
    NetworkState state; // input state with powers/capacities/loads filled in

    // Pixels with demand the network cannot carry (SE = 0 or unserved).
    std::vector<int> hole_pixels;
    double unserved_demand_mbps = 0.0;

    // Convergence diagnostic of the two-pass load computation: total |delta|
    // of per-cell required bandwidth between passes.
    double load_pass_delta_mhz = 0.0;

    double total_required_bw_mhz() const;
    double total_cell_bw_mhz() const;
    double total_shortage_mhz() const;
    std::vector<double> required_bw() const; // per cell, deployment order
};

struct EvalOptions {
    bool two_pass_loads = true;
    // Use the powers already present in the state instead of re-dimensioning.
    bool recompute_powers = true;
    // Evaluate at fixed interference loads instead of Eq.-19 loads.
    const std::vector<double>* fixed_loads = nullptr;
};

// Caches per-site path gain grids; geometry and budget are fixed per context.
class ModelContext {
public:
    ModelContext(const GridGeometry& geom, const LinkBudget& budget)
        : geom_(geom), budget_(budget) {}

    const GridGeometry& geom() const { return geom_; }
    const LinkBudget& budget() const { return budget_; }

    // Linear gain (antenna + path loss) from a site to every pixel.
    const std::vector<double>& gain_grid(int site_pixel);

private:
    GridGeometry geom_;
    LinkBudget budget_;
    std::unordered_map<int, std::vector<double>> cache_;
};

// Transmit power dimensioning: noise + edge path loss + 10log10|F_i| +
// SINR_edge, clamped to [p_min, p_max]. The cell edge sits at sqrt(3)/2 of
// the distance to the closest other deployed cell; an isolated cell falls
// back to half the scenario diagonal, capped where the power rule would
// exceed p_max.
NetworkState set_powers(const NetworkState& state, ModelContext& ctx);

// Strongest-received-power serving assignment; ties break to the lowest cell
// index. Powers must be set.
ServingMap compute_serving(const NetworkState& state, ModelContext& ctx);

// Full model evaluation: powers, serving, two-pass loads, SINR/SE, required
// bandwidth per pixel and per cell.
ModelResult evaluate(const NetworkState& state, const TrafficMap& demand,
                     ModelContext& ctx, const EvalOptions& opts = {});

// Required bandwidth from per-pixel demand and spectral efficiency
// (continuous MHz). Returns per-pixel values; out parameters collect per-cell
// sums in pixel order and coverage holes.
std::vector<double> required_bandwidth(const ServingMap& serving,
                                       std::span<const double> demand,
                                       int n_cells,
                                       std::vector<double>& per_cell_mhz,
                                       std::vector<int>& hole_pixels,
                                       double& unserved_mbps);

// f_RAT: spectral efficiency from linear SINR.
double se_from_sinr(double sinr_lin, const LinkBudget& budget);

} // namespace scnplan

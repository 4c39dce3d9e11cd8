#pragma once

#include <span>
#include <string>
#include <vector>

#include "scnplan/radio_model.hpp"
#include "scnplan/scenario.hpp"

namespace scnplan {

enum class SpecMethod {
    UniformSc,
    CorrSc,
    UniformPx,
    CorrPx,
    KnownSc,
    KnownPx,
};

const char* to_string(SpecMethod m);
SpecMethod spec_method_from_string(const std::string& tag); // throws ConfigError

// Detailed busy-hour planning specification for one tenant: the contracted
// capacity apportioned per cell and per pixel. Both levels always sum to
// a_m_busy_mbps.
struct PlanningSpec {
    std::string tenant_id;
    SpecMethod method = SpecMethod::UniformSc;
    double a_m_busy_mbps = 0.0;
    std::vector<int> cell_ids;      // deployment order
    std::vector<double> per_cell;   // A_{m,i}, aligned with cell_ids
    std::vector<double> per_pixel;  // A_{m,u}

    double cell_sum() const;
    double pixel_sum() const;
};

// Contracted capacity translated to the busy hour: contracted * D(t_B)/mean(D).
// The series is the total demand over one period; t_b indexes the busy hour.
double busy_hour_contract(double contracted_mbps, std::span<const double> demand_series,
                          int t_b);

// Even split across deployed cells; each share spread uniformly over the
// cell's service area.
PlanningSpec spec_uniform_sc(double a_m_busy, const NetworkState& state,
                             const ServingMap& serving);

// Even split across pixels; cell shares by aggregation over service areas.
PlanningSpec spec_uniform_px(double a_m_busy, const NetworkState& state,
                             const ServingMap& serving);

// Shares proportional to per-cell demand; within a cell spread uniformly.
PlanningSpec spec_correlated_sc(double a_m_busy, const NetworkState& state,
                                const ServingMap& serving,
                                std::span<const double> cell_demand);

// Shares proportional to per-pixel demand; cell level by aggregation.
PlanningSpec spec_correlated_px(double a_m_busy, const NetworkState& state,
                                const ServingMap& serving,
                                std::span<const double> pixel_demand);

// Known-demand variants: the proportional formulas applied to the tenant's
// own demand distribution. level_sc picks the cell-level formula.
PlanningSpec spec_known(double a_m_busy, const Tenant& tenant, bool level_sc,
                        const NetworkState& state, const ServingMap& serving,
                        std::span<const double> tenant_cell_demand,
                        std::span<const double> tenant_pixel_demand);

// Dispatcher used by the experiment pipeline.
PlanningSpec build_spec(SpecMethod method, const std::string& tenant_id,
                        double a_m_busy, const Tenant& tenant,
                        const NetworkState& state, const ServingMap& serving,
                        std::span<const double> cell_demand,
                        std::span<const double> pixel_demand,
                        std::span<const double> tenant_cell_demand,
                        std::span<const double> tenant_pixel_demand);

} // namespace scnplan

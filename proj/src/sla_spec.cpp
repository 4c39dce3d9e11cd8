#include "scnplan/sla_spec.hpp"

#include <cmath>
#include <numeric>

#include "scnplan/error.hpp"

namespace scnplan {

const char* to_string(SpecMethod m) {
    switch (m) {
        case SpecMethod::UniformSc: return "uniform-sc";
        case SpecMethod::CorrSc: return "corr-sc";
        case SpecMethod::UniformPx: return "uniform-px";
        case SpecMethod::CorrPx: return "corr-px";
        case SpecMethod::KnownSc: return "known-sc";
        case SpecMethod::KnownPx: return "known-px";
    }
    return "?";
}

SpecMethod spec_method_from_string(const std::string& tag) {
    if (tag == "uniform-sc") return SpecMethod::UniformSc;
    if (tag == "corr-sc") return SpecMethod::CorrSc;
    if (tag == "uniform-px") return SpecMethod::UniformPx;
    if (tag == "corr-px") return SpecMethod::CorrPx;
    if (tag == "known-sc") return SpecMethod::KnownSc;
    if (tag == "known-px") return SpecMethod::KnownPx;
    throw ConfigError("unknown spec method '" + tag + "'");
}

double PlanningSpec::cell_sum() const {
    return std::accumulate(per_cell.begin(), per_cell.end(), 0.0);
}

double PlanningSpec::pixel_sum() const {
    return std::accumulate(per_pixel.begin(), per_pixel.end(), 0.0);
}

double busy_hour_contract(double contracted_mbps, std::span<const double> demand_series,
                          int t_b) {
    if (demand_series.empty()) throw ConfigError("empty demand series");
    if (t_b < 0 || t_b >= static_cast<int>(demand_series.size())) {
        throw ConfigError("busy hour outside the demand series");
    }
    double mean = std::accumulate(demand_series.begin(), demand_series.end(), 0.0) /
                  static_cast<double>(demand_series.size());
    if (mean <= 0.0) throw ConfigError("demand series has zero mean");
    return contracted_mbps * demand_series[t_b] / mean;
}

namespace {

std::vector<int> cell_ids_of(const NetworkState& state) {
    std::vector<int> ids(state.n_cells());
    for (int i = 0; i < state.n_cells(); ++i) ids[i] = state.cells[i].id;
    return ids;
}

// Spread each cell's share uniformly over its service area. Pixels outside
// every service area get zero; any unplaced share is redistributed
// proportionally so the pixel level conserves the total exactly.
std::vector<double> spread_uniform_within_cells(std::span<const double> per_cell,
                                                const ServingMap& serving, int n_cells,
                                                double total) {
    int n = static_cast<int>(serving.cell.size());
    std::vector<int> area(n_cells, 0);
    for (int u = 0; u < n; ++u) {
        if (serving.cell[u] >= 0) area[serving.cell[u]]++;
    }
    std::vector<double> px(n, 0.0);
    for (int u = 0; u < n; ++u) {
        int32_t i = serving.cell[u];
        if (i >= 0 && area[i] > 0) px[u] = per_cell[i] / area[i];
    }
    double s = std::accumulate(px.begin(), px.end(), 0.0);
    if (s > 0.0 && s != total) {
        double f = total / s;
        for (double& v : px) v *= f;
    }
    return px;
}

// Cell shares by aggregating pixel values over service areas; rescaled when
// coverage holes leave part of the total unassigned.
std::vector<double> aggregate_pixels_to_cells(std::span<const double> px,
                                              const ServingMap& serving, int n_cells,
                                              double total) {
    std::vector<double> per_cell(n_cells, 0.0);
    for (size_t u = 0; u < px.size(); ++u) {
        int32_t i = serving.cell[u];
        if (i >= 0) per_cell[i] += px[u];
    }
    double s = std::accumulate(per_cell.begin(), per_cell.end(), 0.0);
    if (s > 0.0 && s != total) {
        double f = total / s;
        for (double& v : per_cell) v *= f;
    }
    return per_cell;
}

} // namespace

PlanningSpec spec_uniform_sc(double a_m_busy, const NetworkState& state,
                             const ServingMap& serving) {
    if (state.n_cells() == 0) throw ConfigError("uniform-sc needs at least one deployed cell");
    PlanningSpec spec;
    spec.method = SpecMethod::UniformSc;
    spec.a_m_busy_mbps = a_m_busy;
    spec.cell_ids = cell_ids_of(state);
    spec.per_cell.assign(state.n_cells(), a_m_busy / state.n_cells());
    spec.per_pixel = spread_uniform_within_cells(spec.per_cell, serving, state.n_cells(),
                                                 a_m_busy);
    return spec;
}

PlanningSpec spec_uniform_px(double a_m_busy, const NetworkState& state,
                             const ServingMap& serving) {
    int n = static_cast<int>(serving.cell.size());
    if (n == 0) throw ConfigError("uniform-px needs a non-empty grid");
    PlanningSpec spec;
    spec.method = SpecMethod::UniformPx;
    spec.a_m_busy_mbps = a_m_busy;
    spec.cell_ids = cell_ids_of(state);
    spec.per_pixel.assign(n, a_m_busy / n);
    spec.per_cell = aggregate_pixels_to_cells(spec.per_pixel, serving, state.n_cells(),
                                              a_m_busy);
    return spec;
}

PlanningSpec spec_correlated_sc(double a_m_busy, const NetworkState& state,
                                const ServingMap& serving,
                                std::span<const double> cell_demand) {
    double total = std::accumulate(cell_demand.begin(), cell_demand.end(), 0.0);
    if (total <= 0.0) throw ModelError("corr-sc needs non-zero cell demand");
    if (static_cast<int>(cell_demand.size()) != state.n_cells()) {
        throw ConfigError("cell demand size does not match the deployment");
    }
    PlanningSpec spec;
    spec.method = SpecMethod::CorrSc;
    spec.a_m_busy_mbps = a_m_busy;
    spec.cell_ids = cell_ids_of(state);
    spec.per_cell.resize(state.n_cells());
    for (int i = 0; i < state.n_cells(); ++i) {
        spec.per_cell[i] = a_m_busy * cell_demand[i] / total;
    }
    spec.per_pixel = spread_uniform_within_cells(spec.per_cell, serving, state.n_cells(),
                                                 a_m_busy);
    return spec;
}

PlanningSpec spec_correlated_px(double a_m_busy, const NetworkState& state,
                                const ServingMap& serving,
                                std::span<const double> pixel_demand) {
    double total = std::accumulate(pixel_demand.begin(), pixel_demand.end(), 0.0);
    if (total <= 0.0) throw ModelError("corr-px needs non-zero pixel demand");
    PlanningSpec spec;
    spec.method = SpecMethod::CorrPx;
    spec.a_m_busy_mbps = a_m_busy;
    spec.cell_ids = cell_ids_of(state);
    spec.per_pixel.resize(pixel_demand.size());
    for (size_t u = 0; u < pixel_demand.size(); ++u) {
        spec.per_pixel[u] = a_m_busy * pixel_demand[u] / total;
    }
    spec.per_cell = aggregate_pixels_to_cells(spec.per_pixel, serving, state.n_cells(),
                                              a_m_busy);
    return spec;
}

PlanningSpec spec_known(double a_m_busy, const Tenant& tenant, bool level_sc,
                        const NetworkState& state, const ServingMap& serving,
                        std::span<const double> tenant_cell_demand,
                        std::span<const double> tenant_pixel_demand) {
    if (!tenant.demand_known) {
        throw ConfigError("tenant '" + tenant.id + "' has no known demand");
    }
    PlanningSpec spec;
    if (level_sc) {
        spec = spec_correlated_sc(a_m_busy, state, serving, tenant_cell_demand);
        spec.method = SpecMethod::KnownSc;
    } else {
        spec = spec_correlated_px(a_m_busy, state, serving, tenant_pixel_demand);
        spec.method = SpecMethod::KnownPx;
    }
    spec.tenant_id = tenant.id;
    return spec;
}

PlanningSpec build_spec(SpecMethod method, const std::string& tenant_id,
                        double a_m_busy, const Tenant& tenant,
                        const NetworkState& state, const ServingMap& serving,
                        std::span<const double> cell_demand,
                        std::span<const double> pixel_demand,
                        std::span<const double> tenant_cell_demand,
                        std::span<const double> tenant_pixel_demand) {
    PlanningSpec spec;
    switch (method) {
        case SpecMethod::UniformSc:
            spec = spec_uniform_sc(a_m_busy, state, serving);
            break;
        case SpecMethod::UniformPx:
            spec = spec_uniform_px(a_m_busy, state, serving);
            break;
        case SpecMethod::CorrSc:
            spec = spec_correlated_sc(a_m_busy, state, serving, cell_demand);
            break;
        case SpecMethod::CorrPx:
            spec = spec_correlated_px(a_m_busy, state, serving, pixel_demand);
            break;
        case SpecMethod::KnownSc:
            spec = spec_known(a_m_busy, tenant, true, state, serving, tenant_cell_demand,
                              tenant_pixel_demand);
            break;
        case SpecMethod::KnownPx:
            spec = spec_known(a_m_busy, tenant, false, state, serving, tenant_cell_demand,
                              tenant_pixel_demand);
            break;
    }
    spec.tenant_id = tenant_id;
    return spec;
}

} // namespace scnplan

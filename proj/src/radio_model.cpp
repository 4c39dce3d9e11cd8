#include "scnplan/radio_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "scnplan/error.hpp"
#include "scnplan/kernels.hpp"

namespace scnplan {

double ModelResult::total_required_bw_mhz() const {
    double s = 0.0;
    for (const auto& c : cells) s += c.required_bw_mhz;
    return s;
}

double ModelResult::total_cell_bw_mhz() const {
    double s = 0.0;
    for (const auto& c : cells) s += c.cell_bw_mhz;
    return s;
}

double ModelResult::total_shortage_mhz() const {
    double s = 0.0;
    for (const auto& c : cells) s += c.shortage_mhz();
    return s;
}

std::vector<double> ModelResult::required_bw() const {
    std::vector<double> out(cells.size());
    for (size_t i = 0; i < cells.size(); ++i) out[i] = cells[i].required_bw_mhz;
    return out;
}

const std::vector<double>& ModelContext::gain_grid(int site_pixel) {
    auto it = cache_.find(site_pixel);
    if (it != cache_.end()) return it->second;
    int n = geom_.n_pixels();
    std::vector<double> g(n);
    for (int u = 0; u < n; ++u) {
        g[u] = db_to_lin(path_gain_db(site_pixel, u, geom_, budget_));
    }
    return cache_.emplace(site_pixel, std::move(g)).first->second;
}

double se_from_sinr(double sinr_lin, const LinkBudget& budget) {
    double min_lin = db_to_lin(budget.sinr_min_db);
    if (sinr_lin <= min_lin) return 0.0;
    double v = budget.se_attenuation * kernels::log2_poly(1.0 + sinr_lin);
    return v < budget.se_max_bps_hz ? v : budget.se_max_bps_hz;
}

NetworkState set_powers(const NetworkState& state, ModelContext& ctx) {
    const LinkBudget& b = ctx.budget();
    const GridGeometry& geom = ctx.geom();
    NetworkState out = state;
    double pn_dbm = noise_power_dbm(state.channel_bandwidth_mhz, b); // one channel
    double dh = b.height_delta_m();

    for (int i = 0; i < out.n_cells(); ++i) {
        SmallCell& cell = out.cells[i];
        double nch = static_cast<double>(cell.n_channels());
        double ant = b.edge_gain_includes_antenna ? b.antenna_gain_dbi : 0.0;

        double isd = std::numeric_limits<double>::infinity();
        for (int j = 0; j < out.n_cells(); ++j) {
            if (j == i) continue;
            isd = std::min(isd, geom.distance_2d(cell.site_pixel, out.cells[j].site_pixel));
        }

        double edge_2d;
        if (std::isfinite(isd)) {
            edge_2d = 0.5 * std::sqrt(3.0) * isd;
        } else {
            // No neighbor: half the scenario diagonal, capped where the power
            // rule would land above p_max.
            edge_2d = 0.5 * geom.diagonal_m();
            double pl_cap = b.p_max_dbm - pn_dbm - 10.0 * std::log10(nch) -
                            b.sinr_edge_db + ant;
            double d3_cap = path_loss_inverse_m(pl_cap, b);
            if (d3_cap > std::abs(dh)) {
                edge_2d = std::min(edge_2d, std::sqrt(d3_cap * d3_cap - dh * dh));
            }
        }

        double d3 = std::max(std::sqrt(edge_2d * edge_2d + dh * dh),
                             geom.resolution_m * 0.5);
        double p = pn_dbm + path_loss_db(d3, b) - ant + 10.0 * std::log10(nch) +
                   b.sinr_edge_db;
        cell.tx_power_dbm = std::clamp(p, b.p_min_dbm, b.p_max_dbm);
    }
    return out;
}

namespace {

// Received power grids (linear mW), one row per cell.
std::vector<std::vector<double>> rx_grids(const NetworkState& state, ModelContext& ctx) {
    const auto& ops = kernels::active();
    int n = ctx.geom().n_pixels();
    std::vector<std::vector<double>> rx(state.n_cells());
    for (int i = 0; i < state.n_cells(); ++i) {
        rx[i].resize(n);
        double p_lin = db_to_lin(state.cells[i].tx_power_dbm);
        ops.scale(rx[i].data(), ctx.gain_grid(state.cells[i].site_pixel).data(), p_lin,
                  static_cast<size_t>(n));
    }
    return rx;
}

ServingMap serving_from_rx(const std::vector<std::vector<double>>& rx, int n) {
    const auto& ops = kernels::active();
    ServingMap s;
    s.cell.assign(n, -1);
    s.rx_power_lin.assign(n, -1.0);
    s.sinr_lin.assign(n, 0.0);
    s.se.assign(n, 0.0);
    for (size_t i = 0; i < rx.size(); ++i) {
        ops.argmax_update(s.rx_power_lin.data(), s.cell.data(), rx[i].data(),
                          static_cast<int32_t>(i), static_cast<size_t>(n));
    }
    if (rx.empty()) std::fill(s.rx_power_lin.begin(), s.rx_power_lin.end(), 0.0);
    return s;
}

} // namespace

ServingMap compute_serving(const NetworkState& state, ModelContext& ctx) {
    return serving_from_rx(rx_grids(state, ctx), ctx.geom().n_pixels());
}

std::vector<double> required_bandwidth(const ServingMap& serving,
                                       std::span<const double> demand, int n_cells,
                                       std::vector<double>& per_cell_mhz,
                                       std::vector<int>& hole_pixels,
                                       double& unserved_mbps) {
    int n = static_cast<int>(demand.size());
    std::vector<double> per_pixel(n, 0.0);
    per_cell_mhz.assign(n_cells, 0.0);
    hole_pixels.clear();
    unserved_mbps = 0.0;
    for (int u = 0; u < n; ++u) {
        double d = demand[u];
        if (d <= 0.0) continue;
        int32_t i = serving.cell[u];
        if (i < 0 || serving.se[u] <= 0.0) {
            hole_pixels.push_back(u);
            unserved_mbps += d;
            continue;
        }
        // Mbps / (b/s/Hz) = MHz
        per_pixel[u] = d / serving.se[u];
        per_cell_mhz[i] += per_pixel[u];
    }
    return per_pixel;
}

ModelResult evaluate(const NetworkState& state, const TrafficMap& demand,
                     ModelContext& ctx, const EvalOptions& opts) {
    const LinkBudget& b = ctx.budget();
    const auto& ops = kernels::active();
    const int n = ctx.geom().n_pixels();
    if (demand.n_pixels() != n) {
        throw ModelError("traffic map does not match the model grid");
    }

    ModelResult res;
    res.state = opts.recompute_powers ? set_powers(state, ctx) : state;
    const NetworkState& st = res.state;
    const int nc = st.n_cells();
    const auto demand_total = demand.total_per_pixel();

    if (nc == 0) {
        res.serving.cell.assign(n, -1);
        res.serving.rx_power_lin.assign(n, 0.0);
        res.serving.sinr_lin.assign(n, 0.0);
        res.serving.se.assign(n, 0.0);
        for (int u = 0; u < n; ++u) {
            if (demand_total[u] > 0.0) {
                res.hole_pixels.push_back(u);
                res.unserved_demand_mbps += demand_total[u];
            }
        }
        return res;
    }

    auto rx = rx_grids(st, ctx);
    res.serving = serving_from_rx(rx, n);
    const auto& serving = res.serving.cell;

    CellAggregate agg = aggregate_to_cells(demand, serving, nc);

    double pn_lin = db_to_lin(noise_power_dbm(st.channel_bandwidth_mhz, b));
    double min_lin = db_to_lin(b.sinr_min_db);

    struct PassOut {
        std::vector<double> se_avg, capacity, required_bw;
        std::vector<int> holes;
        double unserved = 0.0;
    };

    // SINR/SE for every pixel against its serving cell, then per-cell
    // aggregates, at the given interference loads.
    auto run_pass = [&](const std::vector<double>& alpha, ServingMap& sm) {
        std::vector<double> sinr_sum(n), acc(n), se_i(n);
        for (int i = 0; i < nc; ++i) {
            std::fill(sinr_sum.begin(), sinr_sum.end(), 0.0);
            auto ch = channel_list(st.cells[i].channels);
            for (int k : ch) {
                std::fill(acc.begin(), acc.end(), 0.0);
                // Ascending-j ordered sum; removal monotonicity depends on it.
                for (int j = 0; j < nc; ++j) {
                    if (j == i || !(st.cells[j].channels & (1u << k))) continue;
                    if (alpha[j] == 0.0) continue;
                    ops.axpy(acc.data(), rx[j].data(), alpha[j], static_cast<size_t>(n));
                }
                ops.reciprocal_accumulate(sinr_sum.data(), rx[i].data(), acc.data(),
                                          pn_lin, static_cast<size_t>(n));
            }
            double inv_nch = 1.0 / static_cast<double>(ch.size());
            ops.se_map(se_i.data(), sinr_sum.data(), inv_nch, min_lin,
                       b.se_attenuation, b.se_max_bps_hz, static_cast<size_t>(n));
            for (int u = 0; u < n; ++u) {
                if (serving[u] == i) {
                    sm.sinr_lin[u] = sinr_sum[u] * inv_nch;
                    sm.se[u] = se_i[u];
                }
            }
        }

        PassOut out;
        out.required_bw.assign(nc, 0.0);
        required_bandwidth(sm, demand_total, nc, out.required_bw, out.holes,
                           out.unserved);

        // Average spectral efficiency per cell: demand-weighted harmonic mean
        // (total carried traffic over total spectrum use, the counter-based
        // estimate), falling back to the plain mean over the service area for
        // demand-free cells.
        std::vector<double> carried(nc, 0.0), spectrum(nc, 0.0), se_sum(nc, 0.0);
        std::vector<int> area(nc, 0);
        for (int u = 0; u < n; ++u) {
            int32_t i = serving[u];
            if (i < 0) continue;
            area[i]++;
            se_sum[i] += sm.se[u];
            double d = demand_total[u];
            if (d > 0.0 && sm.se[u] > 0.0) {
                carried[i] += d;
                spectrum[i] += d / sm.se[u];
            }
        }
        out.se_avg.assign(nc, 0.0);
        out.capacity.assign(nc, 0.0);
        for (int i = 0; i < nc; ++i) {
            if (carried[i] > 0.0 && spectrum[i] > 0.0) {
                out.se_avg[i] = carried[i] / spectrum[i];
            } else if (area[i] > 0) {
                out.se_avg[i] = se_sum[i] / area[i];
            }
            out.capacity[i] = st.cells[i].n_channels() * st.channel_bandwidth_mhz *
                              out.se_avg[i];
        }
        return out;
    };

    std::vector<double> alpha(nc, 1.0);
    bool single_pass = opts.fixed_loads != nullptr || !opts.two_pass_loads;
    if (opts.fixed_loads) {
        if (static_cast<int>(opts.fixed_loads->size()) != nc) {
            throw ModelError("fixed_loads size does not match the deployment");
        }
        alpha = *opts.fixed_loads;
    }

    PassOut pass = run_pass(alpha, res.serving);
    if (!single_pass) {
        std::vector<double> alpha2(nc);
        for (int i = 0; i < nc; ++i) {
            double d = agg.total_mbps[i];
            if (d <= 0.0) {
                alpha2[i] = 0.0;
            } else if (pass.capacity[i] <= 0.0) {
                alpha2[i] = 1.0;
            } else {
                alpha2[i] = std::min(d / pass.capacity[i], 1.0);
            }
        }
        PassOut pass2 = run_pass(alpha2, res.serving);
        for (int i = 0; i < nc; ++i) {
            res.load_pass_delta_mhz += std::abs(pass2.required_bw[i] - pass.required_bw[i]);
        }
        pass = std::move(pass2);
        alpha = std::move(alpha2);
    }

    res.hole_pixels = std::move(pass.holes);
    res.unserved_demand_mbps = pass.unserved;
    res.cells.resize(nc);
    for (int i = 0; i < nc; ++i) {
        CellStats& cs = res.cells[i];
        const SmallCell& cell = st.cells[i];
        cs.cell_id = cell.id;
        cs.site_pixel = cell.site_pixel;
        cs.n_channels = cell.n_channels();
        cs.tx_power_dbm = cell.tx_power_dbm;
        cs.demand_mbps = agg.total_mbps[i];
        cs.tenant_demand_mbps.resize(demand.n_layers());
        for (int m = 0; m < demand.n_layers(); ++m) {
            cs.tenant_demand_mbps[m] = agg.tenant_mbps[m][i];
        }
        cs.se_avg = pass.se_avg[i];
        cs.capacity_mbps = pass.capacity[i];
        cs.load = alpha[i];
        cs.required_bw_mhz = pass.required_bw[i];
        cs.cell_bw_mhz = st.cell_bw_mhz(i);
        cs.zero_capacity_with_demand = cs.capacity_mbps <= 0.0 && cs.demand_mbps > 0.0;
        res.state.cells[i].capacity_mbps = cs.capacity_mbps;
        res.state.cells[i].avg_load = cs.load;
    }
    return res;
}

} // namespace scnplan

#include "scnplan/conformance.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include "scnplan/error.hpp"

namespace scnplan {

void MonitorConfig::validate() const {
    if (alpha < 0.0 || alpha > 1.0) throw ConfigError("monitor alpha must be in [0, 1]");
    if (consecutive_periods < 1) throw ConfigError("monitor L must be >= 1");
    if (period_s <= 0.0) throw ConfigError("monitor period must be positive");
}

std::vector<double> required_bw_estimate(
    const std::vector<std::vector<double>>& tenant_cell_demand_mbps,
    const std::vector<std::vector<double>>& spec_cap_mbps,
    std::span<const double> se_avg, std::span<const int> cell_ids) {
    size_t nc = se_avg.size();
    std::vector<double> bw(nc, 0.0);
    for (size_t i = 0; i < nc; ++i) {
        double capped = 0.0;
        for (size_t m = 0; m < tenant_cell_demand_mbps.size(); ++m) {
            double d = tenant_cell_demand_mbps[m][i];
            double cap = m < spec_cap_mbps.size() && i < spec_cap_mbps[m].size()
                             ? spec_cap_mbps[m][i]
                             : std::numeric_limits<double>::infinity();
            capped += std::min(d, cap);
        }
        if (capped > 0.0) {
            if (se_avg[i] <= 0.0) {
                int id = i < cell_ids.size() ? cell_ids[i] : static_cast<int>(i);
                throw ModelError("cell " + std::to_string(id) +
                                 " has demand but zero spectral efficiency");
            }
            bw[i] = capped / se_avg[i];
        }
    }
    return bw;
}

std::vector<CounterRecord> read_counters_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open counters file: " + path.string());
    std::vector<CounterRecord> records;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        for (char& c : line) {
            if (c == ',') c = ' ';
        }
        std::istringstream ss(line);
        CounterRecord r;
        if (!(ss >> r.period)) {
            // header row
            if (lineno == 1) continue;
            throw ConfigError("bad counters row at line " + std::to_string(lineno));
        }
        if (!(ss >> r.sc_id >> r.tenant_id >> r.volume_bits >> r.resource_s_hz)) {
            throw ConfigError("bad counters row at line " + std::to_string(lineno));
        }
        records.push_back(std::move(r));
    }
    return records;
}

CounterSummary summarize_period(std::span<const CounterRecord> records, int period,
                                double period_s) {
    if (period_s <= 0.0) throw ConfigError("period must be positive");
    CounterSummary out;
    auto cell_slot = [&](int id) {
        for (size_t i = 0; i < out.cell_ids.size(); ++i) {
            if (out.cell_ids[i] == id) return i;
        }
        out.cell_ids.push_back(id);
        return out.cell_ids.size() - 1;
    };
    auto tenant_slot = [&](const std::string& id) {
        for (size_t i = 0; i < out.tenant_ids.size(); ++i) {
            if (out.tenant_ids[i] == id) return i;
        }
        out.tenant_ids.push_back(id);
        return out.tenant_ids.size() - 1;
    };

    for (const auto& r : records) {
        if (r.period != period) continue;
        cell_slot(r.sc_id);
        tenant_slot(r.tenant_id);
    }
    std::sort(out.cell_ids.begin(), out.cell_ids.end());

    size_t nc = out.cell_ids.size();
    std::vector<double> volume(nc, 0.0), resource(nc, 0.0);
    out.tenant_demand_mbps.assign(out.tenant_ids.size(), std::vector<double>(nc, 0.0));

    for (const auto& r : records) {
        if (r.period != period) continue;
        size_t i = static_cast<size_t>(
            std::lower_bound(out.cell_ids.begin(), out.cell_ids.end(), r.sc_id) -
            out.cell_ids.begin());
        size_t m = tenant_slot(r.tenant_id);
        volume[i] += r.volume_bits;
        resource[i] += r.resource_s_hz;
        out.tenant_demand_mbps[m][i] += r.volume_bits / period_s / 1e6;
    }

    out.se_avg.assign(nc, 0.0);
    for (size_t i = 0; i < nc; ++i) {
        if (resource[i] <= 0.0) {
            if (volume[i] > 0.0) {
                throw ModelError("cell " + std::to_string(out.cell_ids[i]) +
                                 " reports traffic with zero resource use");
            }
            continue;
        }
        out.se_avg[i] = volume[i] / resource[i];
    }
    return out;
}

TriggerResult trigger(const std::vector<std::vector<double>>& bw_history,
                      const NetworkState& state, const MonitorConfig& cfg) {
    cfg.validate();
    TriggerResult res;
    int periods = static_cast<int>(bw_history.size());
    if (periods < cfg.consecutive_periods) return res;
    for (int i = 0; i < state.n_cells(); ++i) {
        double threshold = cfg.alpha * state.cell_bw_mhz(i);
        bool persistent = true;
        for (int p = periods - cfg.consecutive_periods; p < periods; ++p) {
            if (static_cast<int>(bw_history[p].size()) <= i ||
                !(bw_history[p][i] > threshold)) {
                persistent = false;
                break;
            }
        }
        if (persistent) res.cell_ids.push_back(state.cells[i].id);
    }
    res.fired = !res.cell_ids.empty();
    return res;
}

std::vector<bool> sla_exceedance(std::span<const double> tenant_total_demand_mbps,
                                 std::span<const Tenant> tenants) {
    std::vector<bool> flags(tenants.size(), false);
    for (size_t m = 0; m < tenants.size() && m < tenant_total_demand_mbps.size(); ++m) {
        flags[m] = tenant_total_demand_mbps[m] > tenants[m].contracted_capacity_mbps;
    }
    return flags;
}

} // namespace scnplan

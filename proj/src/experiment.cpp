#include "scnplan/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "scnplan/error.hpp"
#include "scnplan/kernels.hpp"
#include "scnplan/rng.hpp"
#include "scnplan/scenario_io.hpp"
#include "scnplan/traffic_synth.hpp"

namespace scnplan {

const Tenant& Scenario::tenant(const std::string& id) const {
    for (const auto& t : tenants) {
        if (t.id == id) return t;
    }
    throw ConfigError("unknown tenant '" + id + "'");
}

const char* to_string(PlannerMode m) {
    switch (m) {
        case PlannerMode::Alg1: return "alg1";
        case PlannerMode::Sota2: return "sota2";
        case PlannerMode::Sota3: return "sota3";
    }
    return "?";
}

PlannerMode planner_mode_from_string(const std::string& tag) {
    if (tag == "alg1") return PlannerMode::Alg1;
    if (tag == "sota2") return PlannerMode::Sota2;
    if (tag == "sota3") return PlannerMode::Sota3;
    throw ConfigError("unknown planner mode '" + tag + "'");
}

Scenario load_scenario(const std::filesystem::path& config_path,
                       std::optional<uint64_t> seed_override) {
    ParsedConfig parsed = parse_config(config_path);
    Scenario s;
    s.grid = parse_grid(parsed);
    s.network = parse_network(parsed, s.grid);
    for (const auto& c : s.network.cells) s.grid.deployed_sites.push_back(c.site_pixel);
    std::sort(s.grid.deployed_sites.begin(), s.grid.deployed_sites.end());
    s.grid.validate();
    s.tenants = parse_tenants(parsed);
    s.budget = parse_budget(parsed);
    s.planner = parse_planner(parsed, s.network);
    s.monitor = parse_monitor(parsed, s.planner);

    uint64_t seed = seed_override
                        ? *seed_override
                        : static_cast<uint64_t>(std::stoull(
                              parsed.value("experiment", "seed", "1")));
    s.traffic = parse_traffic(parsed, s.grid, seed);
    for (int m = 0; m < s.traffic.n_layers(); ++m) {
        s.tenant(s.traffic.tenant_id(m)); // must exist
    }
    return s;
}

ExperimentConfig parse_experiment(const std::filesystem::path& config_path) {
    ParsedConfig parsed = parse_config(config_path);
    ExperimentConfig ec;
    ec.new_tenant = parsed.value("experiment", "new_tenant", "");
    ec.method = spec_method_from_string(parsed.value("experiment", "method", "corr-sc"));
    ec.mode = planner_mode_from_string(parsed.value("experiment", "mode", "alg1"));
    std::istringstream corr(parsed.value("experiment", "correlations", "0.90 0.15"));
    ec.correlations.clear();
    double v;
    while (corr >> v) ec.correlations.push_back(v);
    ec.seed = static_cast<uint64_t>(
        std::stoull(parsed.value("experiment", "seed", "1")));
    ec.replan = parsed.value("experiment", "replan", "true") == "true";
    ec.dump_maps = parsed.value("experiment", "dump_maps", "true") == "true";
    ec.out_dir = parsed.value("experiment", "out", "out");
    return ec;
}

StateSummary summarize(const ModelResult& eval) {
    StateSummary s;
    s.n_cells = eval.state.n_cells();
    s.n_channels = eval.state.total_channels();
    s.required_bw_mhz = eval.total_required_bw_mhz();
    s.cell_bw_mhz = eval.total_cell_bw_mhz();
    s.shortage_mhz = eval.total_shortage_mhz();
    return s;
}

namespace {

std::vector<CellSnapshot> snapshot_of(const ModelResult& eval) {
    std::vector<CellSnapshot> rows(eval.cells.size());
    for (size_t i = 0; i < eval.cells.size(); ++i) {
        const CellStats& c = eval.cells[i];
        rows[i] = {c.cell_id, c.site_pixel, c.n_channels,
                   c.required_bw_mhz, c.cell_bw_mhz, c.shortage_mhz()};
    }
    return rows;
}

std::string fmt_rho(double rho) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", rho);
    return buf;
}

TrafficMap with_layer(const TrafficMap& base, const std::string& tenant,
                      std::vector<double> layer) {
    TrafficMap out = base;
    out.replace_layer(tenant, std::move(layer));
    return out;
}

// Busy hour of the required-bandwidth series obtained by sweeping the daily
// profile over the busy-hour demand map.
int busy_hour_from_model(const NetworkState& state, const TrafficMap& map,
                         ModelContext& ctx) {
    const auto& profile = map.daily_profile;
    double peak = *std::max_element(profile.begin(), profile.end());
    if (peak <= 0.0) throw ConfigError("daily profile has no positive step");
    std::vector<double> series(profile.size());
    auto total = map.total_per_pixel();
    TrafficMap scaled(map.n_pixels());
    scaled.add_layer("total", total);
    for (size_t t = 0; t < profile.size(); ++t) {
        double f = profile[t] / peak;
        std::vector<double> d(total.size());
        for (size_t u = 0; u < total.size(); ++u) d[u] = total[u] * f;
        scaled.replace_layer("total", std::move(d));
        ModelResult ev = evaluate(state, scaled, ctx);
        series[t] = ev.total_required_bw_mhz();
    }
    return busy_hour(series);
}

// Per-cell caps for the new tenant on an arbitrary deployment: the pixel
// spec aggregated over the current serving map.
std::vector<double> caps_on_deployment(const PlanningSpec& spec,
                                       const ServingMap& serving, int n_cells) {
    std::vector<double> caps(n_cells, 0.0);
    for (size_t u = 0; u < spec.per_pixel.size(); ++u) {
        int32_t i = serving.cell[u];
        if (i >= 0) caps[i] += spec.per_pixel[u];
    }
    return caps;
}

struct BundleWriter {
    std::filesystem::path dir;
    bool dump_maps;

    std::filesystem::path p(const std::string& name) const { return dir / name; }

    void matrix(const std::string& name, const GridGeometry& geom,
                std::span<const double> values) const {
        write_grid_matrix(p(name + ".map"), geom, name, values);
        write_pgm(p(name + ".pgm"), geom, values);
    }
};

void emit_spec_files(const BundleWriter& w, const GridGeometry& geom,
                     const PlanningSpec& spec) {
    std::ofstream out(w.p("spec_cells.csv"));
    out << "sc_id,a_mi_mbps\n";
    char buf[96];
    for (size_t i = 0; i < spec.per_cell.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%d,%.6f\n", spec.cell_ids[i], spec.per_cell[i]);
        out << buf;
    }
    if (w.dump_maps) {
        write_grid_matrix(w.p("spec_pixels.map"), geom, "spec_" + spec.tenant_id,
                          spec.per_pixel);
    }
}

} // namespace

void emit_maps(const std::filesystem::path& dir, const std::string& prefix,
               const GridGeometry& geom, const NetworkState& state,
               const ServingMap& serving, std::span<const double> demand) {
    std::filesystem::create_directories(dir);
    BundleWriter w{dir, true};
    w.matrix(prefix + "_demand", geom, demand);
    std::vector<double> serv(serving.cell.size());
    for (size_t u = 0; u < serving.cell.size(); ++u) {
        int32_t i = serving.cell[u];
        serv[u] = i >= 0 ? static_cast<double>(state.cells[i].id) : -1.0;
    }
    w.matrix(prefix + "_serving", geom, serv);
    std::vector<double> dep(geom.n_pixels(), 0.0);
    for (const auto& c : state.cells) {
        dep[c.site_pixel] = static_cast<double>(c.n_channels());
    }
    w.matrix(prefix + "_deployment", geom, dep);
}

ExperimentResult run_experiment(const Scenario& scenario, const ExperimentConfig& cfg) {
    if (cfg.new_tenant.empty()) {
        throw ConfigError("experiment needs new_tenant");
    }
    const Tenant& newcomer = scenario.tenant(cfg.new_tenant);
    if ((cfg.method == SpecMethod::KnownSc || cfg.method == SpecMethod::KnownPx) &&
        !newcomer.demand_known) {
        throw ConfigError("known-demand method requires demand_known for the tenant");
    }

    std::filesystem::create_directories(cfg.out_dir);
    BundleWriter w{cfg.out_dir, cfg.dump_maps};
    ExperimentResult result;
    std::ostringstream notes;

    ModelContext ctx(scenario.grid.geom, scenario.budget);

    // Existing demand: every known layer except the newcomer's own.
    TrafficMap existing = scenario.traffic;
    std::vector<double> newcomer_known_layer;
    if (int m = existing.layer_index(cfg.new_tenant); m >= 0) {
        newcomer_known_layer.assign(existing.layer(m).begin(), existing.layer(m).end());
        existing.remove_layer(cfg.new_tenant);
    }
    if (existing.n_layers() == 0) {
        throw ConfigError("experiment needs at least one existing tenant with traffic");
    }
    auto existing_pixels = existing.total_per_pixel();

    // Busy hour and the newcomer's busy-hour specification.
    result.busy_hour_step = busy_hour_from_model(scenario.network, existing, ctx);
    const auto& profile = existing.daily_profile;
    double peak = *std::max_element(profile.begin(), profile.end());
    std::vector<double> demand_series(profile.size());
    double existing_total = existing.total_mbps();
    for (size_t t = 0; t < profile.size(); ++t) {
        demand_series[t] = existing_total * profile[t] / peak;
    }
    result.a_m_busy_mbps = busy_hour_contract(newcomer.contracted_capacity_mbps,
                                              demand_series, result.busy_hour_step);

    // Detailed planning specification on the initial deployment.
    ModelResult eval0 = evaluate(scenario.network, existing, ctx);
    std::vector<double> cell_demand(eval0.cells.size());
    for (size_t i = 0; i < eval0.cells.size(); ++i) {
        cell_demand[i] = eval0.cells[i].demand_mbps;
    }
    std::vector<double> tenant_cell_demand, tenant_pixel_demand;
    if (!newcomer_known_layer.empty()) {
        tenant_pixel_demand = newcomer_known_layer;
        ServingMap& sm = eval0.serving;
        tenant_cell_demand.assign(eval0.cells.size(), 0.0);
        for (size_t u = 0; u < tenant_pixel_demand.size(); ++u) {
            if (sm.cell[u] >= 0) tenant_cell_demand[sm.cell[u]] += tenant_pixel_demand[u];
        }
    }
    PlanningSpec spec = build_spec(cfg.method, cfg.new_tenant, result.a_m_busy_mbps,
                                   newcomer, eval0.state, eval0.serving, cell_demand,
                                   existing_pixels, tenant_cell_demand,
                                   tenant_pixel_demand);
    emit_spec_files(w, scenario.grid.geom, spec);

    // Planning with the estimated demand.
    TrafficMap planning_map = with_layer(existing, cfg.new_tenant, spec.per_pixel);
    PlannerConfig pc = scenario.planner;
    if (cfg.mode != PlannerMode::Alg1) {
        pc.baseline = PlannerConfig::Baseline::SotaFixedK;
        pc.sota_k = cfg.mode == PlannerMode::Sota2 ? 2 : 3;
    }

    auto run_planner = [&](const NetworkState& from, std::span<const int> sites,
                           const TrafficMap& demand) {
        return cfg.mode == PlannerMode::Alg1 ? plan(from, sites, demand, ctx, pc)
                                             : plan_sota(from, sites, demand, ctx, pc);
    };

    PlanOutcome planned;
    try {
        planned = run_planner(scenario.network, scenario.grid.candidate_sites,
                              planning_map);
    } catch (const NonConvergenceError& e) {
        write_actions_csv(w.p("planning_actions.csv"), e.partial_report.actions);
        write_summary_csv(w.p("planning_before.csv"), e.partial_report.before);
        write_summary_csv(w.p("planning_after.csv"), e.partial_report.after);
        result.exit_code = 2;
        result.notes = std::string("planning did not converge: ") + e.what();
        std::ofstream(w.p("summary.txt")) << result.notes << '\n';
        return result;
    }
    result.planning_report = planned.report;
    result.planned = summarize(planned.final_eval);
    write_actions_csv(w.p("planning_actions.csv"), planned.report.actions);
    write_summary_csv(w.p("planning_before.csv"), planned.report.before);
    write_summary_csv(w.p("planning_after.csv"), planned.report.after);
    if (cfg.dump_maps) {
        emit_maps(cfg.out_dir, "planning", scenario.grid.geom, planned.state,
                  planned.final_eval.serving, planning_map.total_per_pixel());
    }

    // Operation with the actual newcomer traffic at each correlation target.
    bool any_saturated_shortage = false;
    for (double rho : cfg.correlations) {
        CorrelationOutcome oc;
        oc.rho = rho;
        std::string tag = "rho" + fmt_rho(rho);

        std::vector<double> actual_layer;
        if (newcomer.demand_known && !newcomer_known_layer.empty()) {
            actual_layer = newcomer_known_layer;
            oc.achieved_rho = pearson(actual_layer, existing_pixels);
        } else {
            SynthesisConfig sc;
            sc.target_total_mbps = result.a_m_busy_mbps;
            sc.target_pearson = rho;
            sc.seed = Rng(cfg.seed).substream("actual-" + tag).seed();
            actual_layer = synth_correlated_map(existing_pixels, scenario.grid.geom, sc);
            oc.achieved_rho = pearson(actual_layer, existing_pixels);
        }
        TrafficMap actual_map = with_layer(existing, cfg.new_tenant, actual_layer);
        if (cfg.dump_maps) {
            w.matrix("actual_demand_" + tag, scenario.grid.geom, actual_layer);
        }

        ModelResult operation = evaluate(planned.state, actual_map, ctx);
        oc.before = summarize(operation);
        write_summary_csv(w.p("operation_" + tag + ".csv"), snapshot_of(operation));

        // Eq. 10 monitoring view: newcomer capped by its spec, existing
        // tenants demand-driven.
        {
            int nc = operation.state.n_cells();
            std::vector<std::vector<double>> demands, caps;
            std::vector<int> ids(nc);
            for (int i = 0; i < nc; ++i) ids[i] = operation.state.cells[i].id;
            for (int m = 0; m < actual_map.n_layers(); ++m) {
                std::vector<double> d(nc);
                for (int i = 0; i < nc; ++i) {
                    d[i] = operation.cells[i].tenant_demand_mbps[m];
                }
                demands.push_back(std::move(d));
                caps.push_back(actual_map.tenant_id(m) == cfg.new_tenant
                                   ? caps_on_deployment(spec, operation.serving, nc)
                                   : std::vector<double>(
                                         nc, std::numeric_limits<double>::infinity()));
            }
            std::vector<double> se(nc);
            for (int i = 0; i < nc; ++i) se[i] = operation.cells[i].se_avg;
            std::vector<double> monitor_bw;
            try {
                monitor_bw = required_bw_estimate(demands, caps, se, ids);
            } catch (const ModelError& e) {
                notes << "monitor view (" << tag << "): " << e.what() << '\n';
                monitor_bw.assign(nc, 0.0);
            }
            std::ofstream mout(w.p("monitor_" + tag + ".csv"));
            mout << "sc_id,monitor_bw_mhz,model_bw_mhz,cell_bw_mhz\n";
            char buf[128];
            for (int i = 0; i < nc; ++i) {
                std::snprintf(buf, sizeof buf, "%d,%.6f,%.6f,%.6f\n", ids[i],
                              monitor_bw[i], operation.cells[i].required_bw_mhz,
                              operation.cells[i].cell_bw_mhz);
                mout << buf;
            }
            std::vector<double> tenant_totals(actual_map.n_layers());
            for (int m = 0; m < actual_map.n_layers(); ++m) {
                tenant_totals[m] = actual_map.layer_total_mbps(m);
            }
            std::vector<Tenant> order;
            for (int m = 0; m < actual_map.n_layers(); ++m) {
                order.push_back(scenario.tenant(actual_map.tenant_id(m)));
            }
            auto flags = sla_exceedance(tenant_totals, order);
            mout << "# tenant,total_mbps,contracted_mbps,exceeds\n";
            for (size_t m = 0; m < order.size(); ++m) {
                std::snprintf(buf, sizeof buf, "# %s,%.6f,%.6f,%d\n",
                              order[m].id.c_str(), tenant_totals[m],
                              order[m].contracted_capacity_mbps, flags[m] ? 1 : 0);
                mout << buf;
            }
        }

        // Conformance trigger on the model-required bandwidth, then re-plan.
        TriggerResult tr =
            trigger({operation.required_bw()}, operation.state, scenario.monitor);
        oc.triggered = tr.fired;
        if (tr.fired && cfg.replan) {
            try {
                PlanOutcome re = run_planner(planned.state, planned.candidates, actual_map);
                oc.replanned = true;
                oc.replan_report = re.report;
                oc.after = summarize(re.final_eval);
                write_actions_csv(w.p("replan_actions_" + tag + ".csv"),
                                  re.report.actions);
                write_summary_csv(w.p("replan_after_" + tag + ".csv"), re.report.after);
                if (cfg.dump_maps) {
                    emit_maps(cfg.out_dir, "replanned_" + tag, scenario.grid.geom,
                              re.state, re.final_eval.serving,
                              actual_map.total_per_pixel());
                }
                if (re.report.saturated && oc.after.shortage_mhz > 0.0) {
                    any_saturated_shortage = true;
                    notes << tag << ": saturated with residual shortage "
                          << oc.after.shortage_mhz << " MHz\n";
                }
            } catch (const NonConvergenceError& e) {
                result.exit_code = 2;
                notes << tag << ": re-planning did not converge: " << e.what() << '\n';
                oc.after = oc.before;
            }
        } else {
            oc.after = oc.before;
            if (oc.before.shortage_mhz > 0.0 && !tr.fired) {
                notes << tag << ": shortage without trigger (below alpha margin)\n";
            }
        }
        result.outcomes.push_back(std::move(oc));
    }

    // Table III analogue.
    {
        std::ofstream out(w.p("replan_summary.csv"));
        out << "rho,method,mode,n_sc_before,n_sc_after,n_ch_before,n_ch_after,"
               "req_bw_before,req_bw_after,shortage_before,shortage_after\n";
        char buf[256];
        for (const auto& oc : result.outcomes) {
            std::snprintf(buf, sizeof buf, "%.2f,%s,%s,%d,%d,%d,%d,%.6f,%.6f,%.6f,%.6f\n",
                          oc.rho, to_string(cfg.method), to_string(cfg.mode),
                          oc.before.n_cells, oc.after.n_cells, oc.before.n_channels,
                          oc.after.n_channels, oc.before.required_bw_mhz,
                          oc.after.required_bw_mhz, oc.before.shortage_mhz,
                          oc.after.shortage_mhz);
            out << buf;
        }
    }

    if (result.exit_code == 0 && any_saturated_shortage) result.exit_code = 3;
    result.notes += notes.str();

    {
        std::ofstream out(w.p("summary.txt"));
        char buf[256];
        out << "method " << to_string(cfg.method) << ", mode " << to_string(cfg.mode)
            << ", seed " << cfg.seed << ", kernels " << kernels::active().name << '\n';
        std::snprintf(buf, sizeof buf, "busy hour step %d, A_m_busy %.6f Mbps\n",
                      result.busy_hour_step, result.a_m_busy_mbps);
        out << buf;
        std::snprintf(buf, sizeof buf,
                      "planned: %d cells, %d channels, req %.3f MHz, shortage %.3f MHz, "
                      "%zu actions\n",
                      result.planned.n_cells, result.planned.n_channels,
                      result.planned.required_bw_mhz, result.planned.shortage_mhz,
                      result.planning_report.actions.size());
        out << buf;
        for (const auto& oc : result.outcomes) {
            std::snprintf(buf, sizeof buf,
                          "rho %.2f (achieved %.4f): trigger %d, replanned %d, "
                          "before %d/%d %.3f/%.3f, after %d/%d %.3f/%.3f\n",
                          oc.rho, oc.achieved_rho, oc.triggered ? 1 : 0,
                          oc.replanned ? 1 : 0, oc.before.n_cells, oc.before.n_channels,
                          oc.before.required_bw_mhz, oc.before.shortage_mhz,
                          oc.after.n_cells, oc.after.n_channels,
                          oc.after.required_bw_mhz, oc.after.shortage_mhz);
            out << buf;
        }
        if (!result.notes.empty()) out << result.notes;
        std::snprintf(buf, sizeof buf, "exit %d\n", result.exit_code);
        out << buf;
    }
    return result;
}

Scenario make_synthetic_scenario(uint64_t seed, const SyntheticParams& params) {
    Scenario s;
    s.grid.geom = GridGeometry::make(params.width_m, params.height_m, params.resolution_m);
    int n = s.grid.geom.n_pixels();

    Rng seeder(seed);
    Rng cand_rng = seeder.substream("candidates");
    int n_candidates = std::max(params.initial_cells,
                                static_cast<int>(params.candidate_fraction * n));
    std::set<int> sites;
    while (static_cast<int>(sites.size()) < n_candidates) {
        sites.insert(cand_rng.uniform_int(n));
    }
    s.grid.candidate_sites.assign(sites.begin(), sites.end());

    // Demand map first; initial cells then sit where the traffic is.
    s.traffic = TrafficMap(n);
    Rng traffic_rng = seeder.substream("traffic:base");
    s.traffic.add_layer("base",
                        synth_lognormal_map(s.grid.geom, params.existing_total_mbps,
                                            traffic_rng.seed(),
                                            params.smoothing_radius_px,
                                            params.hotspot_sigma));

    // Initial deployment: greedy demand coverage over the candidates (each
    // pick maximizes the demand it would serve under nearest-site
    // assignment), mirroring a grown brownfield network.
    auto demand = s.traffic.total_per_pixel();
    std::vector<int> chosen;
    while (static_cast<int>(chosen.size()) < params.initial_cells) {
        int best = -1;
        double best_gain = -1.0;
        for (int c : s.grid.candidate_sites) {
            if (std::find(chosen.begin(), chosen.end(), c) != chosen.end()) continue;
            double gain = 0.0;
            for (int u = 0; u < n; ++u) {
                if (demand[u] <= 0.0) continue;
                double dc = s.grid.geom.distance_2d(c, u);
                double dmin = std::numeric_limits<double>::infinity();
                for (int o : chosen) dmin = std::min(dmin, s.grid.geom.distance_2d(o, u));
                if (dc < dmin) gain += demand[u];
            }
            if (gain > best_gain) {
                best_gain = gain;
                best = c;
            }
        }
        chosen.push_back(best);
    }

    s.network.num_channels = 4;
    s.network.channel_bandwidth_mhz = 20.0;
    s.network.k_max = 3;
    for (int site : chosen) {
        SmallCell cell;
        cell.id = s.network.next_cell_id();
        cell.site_pixel = site;
        s.network.cells.push_back(cell);
    }
    for (int i = 0; i < s.network.n_cells(); ++i) {
        int k = std::min(params.initial_channels_per_cell, s.network.k_max);
        auto ch = channel_selection(s.network, s.grid.geom, i, k);
        uint32_t m = 0;
        for (int c : ch) m |= 1u << c;
        s.network.cells[i].channels = m;
    }
    s.grid.deployed_sites = chosen;
    std::sort(s.grid.deployed_sites.begin(), s.grid.deployed_sites.end());
    s.grid.validate();

    s.tenants.push_back({"base", std::max(25.0, params.existing_total_mbps * 1.3), true});
    s.tenants.push_back({"newco", params.new_tenant_contracted_mbps, false});

    SynthesisConfig prof;
    prof.profile_steps = 24;
    prof.profile_peak_step = 20;
    prof.profile_shape = 2.0;
    prof.profile_base = params.profile_base;
    s.traffic.daily_profile = synth_daily_profile(prof);

    s.planner = PlannerConfig{};
    s.monitor = MonitorConfig{};
    return s;
}

void write_scenario_file(const std::filesystem::path& path, const Scenario& scenario,
                         const std::filesystem::path& traffic_dir) {
    std::filesystem::create_directories(path.parent_path().empty() ? "."
                                                                   : path.parent_path());
    std::filesystem::create_directories(traffic_dir);
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path.string());
    char buf[128];

    out << "[grid]\n";
    std::snprintf(buf, sizeof buf, "width_m = %.17g\nheight_m = %.17g\nresolution_m = %.17g\n",
                  scenario.grid.geom.width_m, scenario.grid.geom.height_m,
                  scenario.grid.geom.resolution_m);
    out << buf;

    out << "\n[channels]\n";
    std::snprintf(buf, sizeof buf, "k = %d\nbandwidth_mhz = %.17g\nk_max = %d\n",
                  scenario.network.num_channels, scenario.network.channel_bandwidth_mhz,
                  scenario.network.k_max);
    out << buf;

    out << "\n[candidates]\n";
    for (size_t i = 0; i < scenario.grid.candidate_sites.size(); ++i) {
        out << scenario.grid.candidate_sites[i];
        out << ((i + 1) % 16 == 0 || i + 1 == scenario.grid.candidate_sites.size() ? '\n'
                                                                                   : ' ');
    }

    out << "\n[deployed]\n";
    for (const auto& c : scenario.network.cells) {
        out << c.site_pixel;
        for (int ch : channel_list(c.channels)) out << ' ' << ch + 1;
        out << '\n';
    }

    out << "\n[tenants]\n";
    for (const auto& t : scenario.tenants) {
        std::snprintf(buf, sizeof buf, "%s %.17g %s\n", t.id.c_str(),
                      t.contracted_capacity_mbps, t.demand_known ? "known" : "unknown");
        out << buf;
    }

    out << "\n[traffic]\n";
    {
        auto prof_path = traffic_dir / "profile.txt";
        std::ofstream pf(prof_path);
        for (double v : scenario.traffic.daily_profile) {
            std::snprintf(buf, sizeof buf, "%.17g\n", v);
            pf << buf;
        }
        out << "profile = file " << prof_path.filename().string() << '\n';
        for (int m = 0; m < scenario.traffic.n_layers(); ++m) {
            auto name = "traffic_" + scenario.traffic.tenant_id(m) + ".map";
            write_grid_matrix(traffic_dir / name, scenario.grid.geom,
                              scenario.traffic.tenant_id(m), scenario.traffic.layer(m));
            out << "map " << scenario.traffic.tenant_id(m) << " file " << name << '\n';
        }
    }

    out << "\n[planner]\n";
    std::snprintf(buf, sizeof buf,
                  "alpha = %.17g\nbeta = %.17g\ngamma = %.17g\nn_max_sc = %d\n",
                  scenario.planner.alpha, scenario.planner.beta, scenario.planner.gamma,
                  scenario.planner.n_max_sc);
    out << buf;

    out << "\n[monitor]\n";
    std::snprintf(buf, sizeof buf, "alpha = %.17g\nl = %d\nperiod_s = %.17g\n",
                  scenario.monitor.alpha, scenario.monitor.consecutive_periods,
                  scenario.monitor.period_s);
    out << buf;
}

} // namespace scnplan

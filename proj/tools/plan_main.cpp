#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scnplan/error.hpp"
#include "scnplan/experiment.hpp"
#include "scnplan/kernels.hpp"
#include "scnplan/rng.hpp"
#include "scnplan/scenario_io.hpp"
#include "scnplan/traffic_synth.hpp"

using namespace scnplan;

namespace {

int cmd_run(const std::string& config, std::optional<uint64_t> seed,
            const std::string& out, const std::string& method, const std::string& mode,
            bool no_replan, bool no_maps) {
    Scenario scenario = load_scenario(config, seed);
    ExperimentConfig ec = parse_experiment(config);
    if (seed) ec.seed = *seed;
    if (!out.empty()) ec.out_dir = out;
    if (!method.empty()) ec.method = spec_method_from_string(method);
    if (!mode.empty()) ec.mode = planner_mode_from_string(mode);
    if (no_replan) ec.replan = false;
    if (no_maps) ec.dump_maps = false;

    ExperimentResult res = run_experiment(scenario, ec);
    std::printf("busy hour %d, A_m_busy %.3f Mbps\n", res.busy_hour_step,
                res.a_m_busy_mbps);
    std::printf("planned: %d cells, %d channels, required %.3f MHz, shortage %.3f MHz\n",
                res.planned.n_cells, res.planned.n_channels,
                res.planned.required_bw_mhz, res.planned.shortage_mhz);
    for (const auto& oc : res.outcomes) {
        std::printf("rho %.2f: trigger=%d before %d sc/%d ch shortage %.3f -> "
                    "after %d sc/%d ch shortage %.3f\n",
                    oc.rho, oc.triggered ? 1 : 0, oc.before.n_cells,
                    oc.before.n_channels, oc.before.shortage_mhz, oc.after.n_cells,
                    oc.after.n_channels, oc.after.shortage_mhz);
    }
    if (!res.notes.empty()) std::printf("%s", res.notes.c_str());
    std::printf("bundle written to %s\n", ec.out_dir.string().c_str());
    return res.exit_code;
}

int cmd_synth_map(const std::string& mode, const std::string& ref, double rho,
                  double total, uint64_t seed, int smooth, const std::string& name,
                  double width, double height, double res, const std::string& out) {
    if (mode == "correlated") {
        if (ref.empty()) throw ConfigError("correlated mode needs --ref");
        GridMatrix reference = read_grid_matrix(ref);
        SynthesisConfig sc;
        sc.target_total_mbps = total;
        sc.target_pearson = rho;
        sc.seed = seed;
        sc.smoothing_radius_px = smooth;
        auto map = synth_correlated_map(reference.values, reference.geom, sc);
        write_grid_matrix(out, reference.geom, name, map);
        std::printf("achieved Pearson %.4f, total %.6f Mbps -> %s\n",
                    pearson(map, reference.values),
                    std::accumulate(map.begin(), map.end(), 0.0), out.c_str());
        return 0;
    }
    if (mode == "lognormal") {
        GridGeometry geom = GridGeometry::make(width, height, res);
        auto map = synth_lognormal_map(geom, total, seed, smooth);
        write_grid_matrix(out, geom, name, map);
        std::printf("total %.6f Mbps -> %s\n",
                    std::accumulate(map.begin(), map.end(), 0.0), out.c_str());
        return 0;
    }
    throw ConfigError("synth-map mode must be correlated|lognormal");
}

int cmd_check(const std::string& config, const std::string& counters_path,
              std::optional<int> period) {
    Scenario scenario = load_scenario(config);
    auto records = read_counters_csv(counters_path);
    if (records.empty()) throw ConfigError("counters file has no records");

    std::vector<int> periods;
    for (const auto& r : records) {
        if (periods.empty() || periods.back() != r.period) periods.push_back(r.period);
    }
    std::sort(periods.begin(), periods.end());
    periods.erase(std::unique(periods.begin(), periods.end()), periods.end());
    if (period) periods = {*period};

    // Required bandwidth per period from the counters (demand-driven; Eq. 10
    // caps apply when specs are attached to the scenario's newcomer flow).
    std::vector<std::vector<double>> history;
    for (int p : periods) {
        CounterSummary cs = summarize_period(records, p, scenario.monitor.period_s);
        std::vector<double> bw(scenario.network.n_cells(), 0.0);
        std::vector<std::vector<double>> demands(cs.tenant_ids.size());
        for (size_t m = 0; m < cs.tenant_ids.size(); ++m) {
            demands[m].assign(scenario.network.n_cells(), 0.0);
        }
        std::vector<double> se(scenario.network.n_cells(), 0.0);
        std::vector<int> ids(scenario.network.n_cells());
        for (int i = 0; i < scenario.network.n_cells(); ++i) {
            ids[i] = scenario.network.cells[i].id;
            for (size_t c = 0; c < cs.cell_ids.size(); ++c) {
                if (cs.cell_ids[c] != ids[i]) continue;
                se[i] = cs.se_avg[c];
                for (size_t m = 0; m < cs.tenant_ids.size(); ++m) {
                    demands[m][i] = cs.tenant_demand_mbps[m][c];
                }
            }
        }
        bw = required_bw_estimate(demands, {}, se, ids);
        history.push_back(bw);

        std::printf("period %d:", p);
        for (int i = 0; i < scenario.network.n_cells(); ++i) {
            std::printf(" sc%d=%.2fMHz/%.0fMHz", ids[i], bw[i],
                        scenario.network.cell_bw_mhz(i));
        }
        std::printf("\n");

        std::vector<double> totals(cs.tenant_ids.size(), 0.0);
        std::vector<Tenant> order;
        for (size_t m = 0; m < cs.tenant_ids.size(); ++m) {
            for (double v : cs.tenant_demand_mbps[m]) totals[m] += v;
            order.push_back(scenario.tenant(cs.tenant_ids[m]));
        }
        auto flags = sla_exceedance(totals, order);
        for (size_t m = 0; m < order.size(); ++m) {
            if (flags[m]) {
                std::printf("  SLA exceedance: tenant %s demand %.2f > contracted %.2f\n",
                            order[m].id.c_str(), totals[m],
                            order[m].contracted_capacity_mbps);
            }
        }
    }

    TriggerResult tr = trigger(history, scenario.network, scenario.monitor);
    if (tr.fired) {
        std::printf("TRIGGER: condition held %d period(s) for cell(s):",
                    scenario.monitor.consecutive_periods);
        for (int id : tr.cell_ids) std::printf(" %d", id);
        std::printf("\n");
    } else {
        std::printf("no trigger (L=%d)\n", scenario.monitor.consecutive_periods);
    }
    return 0;
}

int cmd_compare(const std::string& config, std::optional<uint64_t> seed,
                const std::string& out, std::vector<std::string> modes,
                std::vector<std::string> methods) {
    if (modes.empty()) modes = {"alg1", "sota2", "sota3"};
    Scenario scenario = load_scenario(config, seed);
    ExperimentConfig base = parse_experiment(config);
    if (seed) base.seed = *seed;
    std::filesystem::path out_dir = out.empty() ? base.out_dir : std::filesystem::path(out);
    if (methods.empty()) methods = {to_string(base.method)};

    std::filesystem::create_directories(out_dir);
    std::ofstream table(out_dir / "comparison.csv");
    table << "mode,method,rho,n_sc,n_channels,req_bw_mhz,cell_bw_mhz,shortage_mhz\n";
    int exit_code = 0;
    for (const auto& mode : modes) {
        for (const auto& method : methods) {
            ExperimentConfig ec = base;
            ec.mode = planner_mode_from_string(mode);
            ec.method = spec_method_from_string(method);
            ec.out_dir = out_dir / (mode + "_" + method);
            ec.dump_maps = false;
            ExperimentResult res = run_experiment(scenario, ec);
            exit_code = std::max(exit_code, res.exit_code);
            char buf[256];
            for (const auto& oc : res.outcomes) {
                std::snprintf(buf, sizeof buf, "%s,%s,%.2f,%d,%d,%.6f,%.6f,%.6f\n",
                              mode.c_str(), method.c_str(), oc.rho, oc.after.n_cells,
                              oc.after.n_channels, oc.after.required_bw_mhz,
                              oc.after.cell_bw_mhz, oc.after.shortage_mhz);
                table << buf;
                std::printf("%s/%s rho %.2f: %d cells, %d channels, shortage %.3f\n",
                            mode.c_str(), method.c_str(), oc.rho, oc.after.n_cells,
                            oc.after.n_channels, oc.after.shortage_mhz);
            }
        }
    }
    std::printf("comparison written to %s\n", (out_dir / "comparison.csv").c_str());
    return exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-tenant small-cell capacity dimensioning and planning"};
    app.require_subcommand(1);

    std::string kernels_choice = "auto";
    app.add_option("--kernels", kernels_choice, "Kernel variant: auto|scalar|avx2");

    // run
    auto* run = app.add_subcommand("run", "Full planning/operation/re-planning workflow");
    std::string run_config, run_out, run_method, run_mode;
    std::optional<uint64_t> run_seed;
    bool run_no_replan = false, run_no_maps = false;
    run->add_option("--config", run_config, "Scenario/experiment config file")->required();
    run->add_option("--seed", run_seed, "Override the experiment seed");
    run->add_option("--out", run_out, "Output directory");
    run->add_option("--method", run_method, "Spec method (uniform-sc|corr-sc|uniform-px|corr-px|known-sc|known-px)");
    run->add_option("--mode", run_mode, "Planner mode (alg1|sota2|sota3)");
    run->add_flag("--no-replan", run_no_replan, "Skip the re-planning stage");
    run->add_flag("--no-maps", run_no_maps, "Skip map dumps");

    // synth-map
    auto* synth = app.add_subcommand("synth-map", "Synthesize a traffic map file");
    std::string sm_mode = "correlated", sm_ref, sm_name = "tenant", sm_out = "map.out";
    double sm_rho = 0.9, sm_total = 100.0, sm_w = 400, sm_h = 400, sm_res = 5;
    uint64_t sm_seed = 1;
    int sm_smooth = 6;
    synth->add_option("--mode", sm_mode, "correlated|lognormal");
    synth->add_option("--ref", sm_ref, "Reference map file (correlated mode)");
    synth->add_option("--rho", sm_rho, "Pearson target");
    synth->add_option("--total", sm_total, "Total Mbps");
    synth->add_option("--seed", sm_seed, "Seed");
    synth->add_option("--smooth", sm_smooth, "Smoothing radius, pixels");
    synth->add_option("--name", sm_name, "Layer name written to the header");
    synth->add_option("--width", sm_w, "Grid width m (lognormal mode)");
    synth->add_option("--height", sm_h, "Grid height m (lognormal mode)");
    synth->add_option("--resolution", sm_res, "Grid resolution m (lognormal mode)");
    synth->add_option("--out", sm_out, "Output map file")->required();

    // check
    auto* check = app.add_subcommand("check", "Conformance monitoring on counter data");
    std::string ck_config, ck_counters;
    std::optional<int> ck_period;
    check->add_option("--config", ck_config, "Scenario config file")->required();
    check->add_option("--counters", ck_counters, "Counters CSV")->required();
    check->add_option("--period", ck_period, "Restrict to one period");

    // compare
    auto* compare = app.add_subcommand("compare", "Sweep planner modes/methods");
    std::string cp_config, cp_out;
    std::optional<uint64_t> cp_seed;
    std::vector<std::string> cp_modes, cp_methods;
    compare->add_option("--config", cp_config, "Scenario/experiment config file")->required();
    compare->add_option("--seed", cp_seed, "Override the experiment seed");
    compare->add_option("--out", cp_out, "Output directory");
    compare->add_option("--modes", cp_modes, "Planner modes")->delimiter(',');
    compare->add_option("--methods", cp_methods, "Spec methods")->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        if (!kernels::select(kernels_choice)) {
            throw ConfigError("kernel variant '" + kernels_choice + "' unavailable");
        }
        if (*run) {
            return cmd_run(run_config, run_seed, run_out, run_method, run_mode,
                           run_no_replan, run_no_maps);
        }
        if (*synth) {
            return cmd_synth_map(sm_mode, sm_ref, sm_rho, sm_total, sm_seed, sm_smooth,
                                 sm_name, sm_w, sm_h, sm_res, sm_out);
        }
        if (*check) return cmd_check(ck_config, ck_counters, ck_period);
        if (*compare) return cmd_compare(cp_config, cp_seed, cp_out, cp_modes, cp_methods);
    } catch (const NonConvergenceError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return 1;
    }
    return 0;
}

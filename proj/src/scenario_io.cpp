#include "scnplan/scenario_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "scnplan/error.hpp"
#include "scnplan/rng.hpp"
#include "scnplan/traffic_synth.hpp"

namespace scnplan {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string t;
    while (ss >> t) out.push_back(t);
    return out;
}

double to_double(const std::string& s, const std::string& what) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad number '" + s + "' for " + what);
    }
}

int to_int(const std::string& s, const std::string& what) {
    try {
        size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return static_cast<int>(v);
    } catch (const std::exception&) {
        throw ConfigError("bad integer '" + s + "' for " + what);
    }
}

bool to_bool(const std::string& s, const std::string& what) {
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    throw ConfigError("bad boolean '" + s + "' for " + what);
}

std::filesystem::path resolve(const ParsedConfig& cfg, const std::string& rel) {
    std::filesystem::path p(rel);
    if (p.is_absolute()) return p;
    return cfg.source.parent_path() / p;
}

} // namespace

bool ParsedConfig::has(const std::string& section) const {
    return sections.count(section) > 0;
}

const std::vector<std::string>& ParsedConfig::lines(const std::string& section) const {
    auto it = sections.find(section);
    if (it == sections.end()) {
        throw ConfigError("missing [" + section + "] section in " + source.string());
    }
    return it->second;
}

std::vector<std::pair<std::string, std::string>> ParsedConfig::kv(
    const std::string& section) const {
    std::vector<std::pair<std::string, std::string>> out;
    auto it = sections.find(section);
    if (it == sections.end()) return out;
    for (const auto& line : it->second) {
        size_t eq = line.find('=');
        if (eq == std::string::npos) continue;
        out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return out;
}

std::string ParsedConfig::value(const std::string& section, const std::string& key,
                                const std::string& fallback) const {
    for (const auto& [k, v] : kv(section)) {
        if (k == key) return v;
    }
    return fallback;
}

bool ParsedConfig::has_key(const std::string& section, const std::string& key) const {
    for (const auto& [k, v] : kv(section)) {
        if (k == key) return true;
    }
    return false;
}

ParsedConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    ParsedConfig cfg;
    cfg.source = path;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                                  ": malformed section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            cfg.sections[section]; // section may stay empty
            continue;
        }
        if (section.empty()) {
            throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                              ": content before the first section");
        }
        cfg.sections[section].push_back(line);
    }
    return cfg;
}

ScenarioGrid parse_grid(const ParsedConfig& cfg) {
    ScenarioGrid grid;
    grid.geom = GridGeometry::make(
        to_double(cfg.value("grid", "width_m", ""), "grid width_m"),
        to_double(cfg.value("grid", "height_m", ""), "grid height_m"),
        to_double(cfg.value("grid", "resolution_m", ""), "grid resolution_m"));
    if (cfg.has("candidates")) {
        for (const auto& line : cfg.lines("candidates")) {
            for (const auto& t : tokens(line)) {
                grid.candidate_sites.push_back(to_int(t, "candidate site"));
            }
        }
    }
    std::sort(grid.candidate_sites.begin(), grid.candidate_sites.end());
    auto dup = std::adjacent_find(grid.candidate_sites.begin(), grid.candidate_sites.end());
    if (dup != grid.candidate_sites.end()) {
        throw ConfigError("duplicate candidate site " + std::to_string(*dup));
    }
    return grid;
}

NetworkState parse_network(const ParsedConfig& cfg, const ScenarioGrid& grid) {
    NetworkState state;
    state.num_channels = to_int(cfg.value("channels", "k", "4"), "channels k");
    state.channel_bandwidth_mhz =
        to_double(cfg.value("channels", "bandwidth_mhz", "20"), "channel bandwidth");
    state.k_max = to_int(cfg.value("channels", "k_max", "3"), "k_max");

    std::vector<int> pending_default; // cells without an explicit channel list
    if (cfg.has("deployed")) {
        for (const auto& line : cfg.lines("deployed")) {
            auto t = tokens(line);
            if (t.empty()) continue;
            SmallCell cell;
            cell.id = state.next_cell_id();
            cell.site_pixel = to_int(t[0], "deployed site");
            for (size_t i = 1; i < t.size(); ++i) {
                int ch = to_int(t[i], "channel id");
                if (ch < 1 || ch > state.num_channels) {
                    throw ConfigError("channel id " + t[i] + " outside [1, K]");
                }
                cell.channels |= 1u << (ch - 1);
            }
            if (t.size() == 1) pending_default.push_back(state.n_cells());
            state.cells.push_back(cell);
        }
    }
    // Default allocation for cells listed without channels: two channels via
    // greedy selection, in deployment order.
    for (int idx : pending_default) {
        int k = std::min(2, state.k_max);
        auto ch = channel_selection(state, grid.geom, idx, k);
        uint32_t m = 0;
        for (int c : ch) m |= 1u << c;
        state.cells[idx].channels = m;
    }
    state.validate(grid);
    return state;
}

std::vector<Tenant> parse_tenants(const ParsedConfig& cfg) {
    std::vector<Tenant> tenants;
    if (!cfg.has("tenants")) return tenants;
    for (const auto& line : cfg.lines("tenants")) {
        auto t = tokens(line);
        if (t.size() < 2 || t.size() > 3) {
            throw ConfigError("tenant line must be: id contracted_mbps [known|unknown]");
        }
        Tenant tn;
        tn.id = t[0];
        tn.contracted_capacity_mbps = to_double(t[1], "contracted capacity");
        if (tn.contracted_capacity_mbps <= 0.0) {
            throw ConfigError("tenant '" + tn.id + "' needs a positive contracted capacity");
        }
        if (t.size() == 3) {
            if (t[2] == "known") {
                tn.demand_known = true;
            } else if (t[2] == "unknown") {
                tn.demand_known = false;
            } else {
                throw ConfigError("tenant flag must be known|unknown");
            }
        }
        for (const auto& other : tenants) {
            if (other.id == tn.id) throw ConfigError("duplicate tenant '" + tn.id + "'");
        }
        tenants.push_back(std::move(tn));
    }
    return tenants;
}

LinkBudget parse_budget(const ParsedConfig& cfg) {
    LinkBudget b;
    for (const auto& [k, v] : cfg.kv("radio")) {
        if (k == "noise_psd_dbm_hz") b.noise_psd_dbm_hz = to_double(v, k);
        else if (k == "noise_figure_db") b.noise_figure_db = to_double(v, k);
        else if (k == "antenna_gain_dbi") b.antenna_gain_dbi = to_double(v, k);
        else if (k == "sc_height_m") b.sc_height_m = to_double(v, k);
        else if (k == "ue_height_m") b.ue_height_m = to_double(v, k);
        else if (k == "carrier_ghz") b.carrier_ghz = to_double(v, k);
        else if (k == "sinr_edge_db") b.sinr_edge_db = to_double(v, k);
        else if (k == "sinr_min_db") b.sinr_min_db = to_double(v, k);
        else if (k == "se_max_bps_hz") b.se_max_bps_hz = to_double(v, k);
        else if (k == "se_attenuation") b.se_attenuation = to_double(v, k);
        else if (k == "p_min_dbm") b.p_min_dbm = to_double(v, k);
        else if (k == "p_max_dbm") b.p_max_dbm = to_double(v, k);
        else if (k == "propagation") {
            if (v == "los") b.los = true;
            else if (v == "nlos") b.los = false;
            else throw ConfigError("propagation must be los|nlos");
        } else if (k == "edge_gain_includes_antenna") {
            b.edge_gain_includes_antenna = to_bool(v, k);
        } else {
            throw ConfigError("unknown [radio] key '" + k + "'");
        }
    }
    if (b.p_min_dbm > b.p_max_dbm) throw ConfigError("p_min must not exceed p_max");
    if (b.se_max_bps_hz <= 0.0) throw ConfigError("se_max must be positive");
    return b;
}

PlannerConfig parse_planner(const ParsedConfig& cfg, const NetworkState& network) {
    PlannerConfig p;
    p.k_max = network.k_max;
    p.alpha = to_double(cfg.value("planner", "alpha", "0.95"), "planner alpha");
    p.beta = to_double(cfg.value("planner", "beta", "0.7"), "planner beta");
    p.gamma = to_double(cfg.value("planner", "gamma", "0.05"), "planner gamma");
    p.n_max_sc = to_int(cfg.value("planner", "n_max_sc", "10"), "n_max_sc");
    p.sota_k = to_int(cfg.value("planner", "sota_k", "2"), "sota_k");
    p.max_passes = to_int(cfg.value("planner", "max_passes", "8"), "max_passes");
    return p;
}

MonitorConfig parse_monitor(const ParsedConfig& cfg, const PlannerConfig& planner) {
    MonitorConfig m;
    m.alpha = to_double(cfg.value("monitor", "alpha", std::to_string(planner.alpha)),
                        "monitor alpha");
    m.consecutive_periods = to_int(cfg.value("monitor", "l", "1"), "monitor l");
    m.period_s = to_double(cfg.value("monitor", "period_s", "3600"), "monitor period");
    m.validate();
    return m;
}

TrafficMap parse_traffic(const ParsedConfig& cfg, const ScenarioGrid& grid,
                         uint64_t seed) {
    TrafficMap map(grid.geom.n_pixels());
    if (!cfg.has("traffic")) {
        map.daily_profile = {1.0};
        return map;
    }
    for (const auto& line : cfg.lines("traffic")) {
        auto t = tokens(line);
        if (t.size() >= 3 && t[0] == "profile" && t[1] == "=") {
            if (t[2] == "cosine") {
                if (t.size() != 7) {
                    throw ConfigError("profile = cosine T peak shape base");
                }
                SynthesisConfig sc;
                sc.profile_steps = to_int(t[3], "profile T");
                sc.profile_peak_step = to_int(t[4], "profile peak");
                sc.profile_shape = to_double(t[5], "profile shape");
                sc.profile_base = to_double(t[6], "profile base");
                map.daily_profile = synth_daily_profile(sc);
            } else if (t[2] == "flat") {
                if (t.size() != 4) throw ConfigError("profile = flat T");
                map.daily_profile.assign(to_int(t[3], "profile T"), 1.0);
            } else if (t[2] == "file") {
                if (t.size() != 4) throw ConfigError("profile = file <path>");
                std::ifstream in(resolve(cfg, t[3]));
                if (!in) throw ConfigError("cannot open profile file " + t[3]);
                double v;
                map.daily_profile.clear();
                while (in >> v) map.daily_profile.push_back(v);
            } else {
                throw ConfigError("unknown profile kind '" + t[2] + "'");
            }
            if (map.daily_profile.empty()) throw ConfigError("empty daily profile");
            for (double v : map.daily_profile) {
                if (v < 0.0) throw ConfigError("daily profile values must be >= 0");
            }
            continue;
        }
        if (t.size() >= 3 && t[0] == "map") {
            const std::string& tenant = t[1];
            const std::string& kind = t[2];
            if (kind == "file") {
                if (t.size() != 4) throw ConfigError("map <tenant> file <path>");
                GridMatrix m = read_grid_matrix(resolve(cfg, t[3]));
                if (m.geom.nx != grid.geom.nx || m.geom.ny != grid.geom.ny) {
                    throw ConfigError("traffic map grid mismatch for tenant " + tenant);
                }
                map.add_layer(tenant, std::move(m.values));
            } else if (kind == "lognormal") {
                if (t.size() < 4 || t.size() > 5) {
                    throw ConfigError("map <tenant> lognormal <total_mbps> [radius]");
                }
                double total = to_double(t[3], "map total");
                int radius = t.size() == 5 ? to_int(t[4], "map radius") : 6;
                Rng stream = Rng(seed).substream("traffic:" + tenant);
                map.add_layer(tenant, synth_lognormal_map(grid.geom, total,
                                                          stream.seed(), radius));
            } else {
                throw ConfigError("unknown traffic map kind '" + kind + "'");
            }
            continue;
        }
        throw ConfigError("bad [traffic] line: " + line);
    }
    if (map.daily_profile.empty()) map.daily_profile = {1.0};
    return map;
}

GridMatrix read_grid_matrix(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open map file: " + path.string());
    double w, h, res;
    GridMatrix m;
    if (!(in >> w >> h >> res >> m.name)) {
        throw ConfigError("bad map header in " + path.string());
    }
    m.geom = GridGeometry::make(w, h, res);
    m.values.resize(m.geom.n_pixels());
    for (int u = 0; u < m.geom.n_pixels(); ++u) {
        if (!(in >> m.values[u])) {
            throw ConfigError("map " + path.string() + " is truncated at value " +
                              std::to_string(u));
        }
    }
    return m;
}

void write_grid_matrix(const std::filesystem::path& path, const GridGeometry& geom,
                       const std::string& name, std::span<const double> values) {
    if (static_cast<int>(values.size()) != geom.n_pixels()) {
        throw ConfigError("matrix size does not match the grid");
    }
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path.string());
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g", geom.width_m, geom.height_m,
                  geom.resolution_m);
    out << buf << ' ' << name << '\n';
    for (int r = 0; r < geom.ny; ++r) {
        for (int c = 0; c < geom.nx; ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", values[geom.index(c, r)]);
            out << buf << (c + 1 == geom.nx ? '\n' : ' ');
        }
    }
}

void write_pgm(const std::filesystem::path& path, const GridGeometry& geom,
               std::span<const double> values) {
    if (static_cast<int>(values.size()) != geom.n_pixels()) {
        throw ConfigError("matrix size does not match the grid");
    }
    double lo = values[0], hi = values[0];
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    double scale = hi > lo ? 255.0 / (hi - lo) : 0.0;
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << "P2\n" << geom.nx << ' ' << geom.ny << "\n255\n";
    // PGM rows run top-down; grid rows run south-up.
    for (int r = geom.ny - 1; r >= 0; --r) {
        for (int c = 0; c < geom.nx; ++c) {
            int g = static_cast<int>(std::lround((values[geom.index(c, r)] - lo) * scale));
            out << g << (c + 1 == geom.nx ? '\n' : ' ');
        }
    }
}

} // namespace scnplan

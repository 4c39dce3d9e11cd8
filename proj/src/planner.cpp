#include "scnplan/planner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace scnplan {

const char* to_string(ActionKind k) {
    switch (k) {
        case ActionKind::AddChannel: return "add_channel";
        case ActionKind::RemoveChannel: return "remove_channel";
        case ActionKind::DeploySc: return "deploy_sc";
        case ActionKind::RemoveSc: return "remove_sc";
    }
    return "?";
}

void PlannerConfig::validate(const NetworkState& state) const {
    auto in01 = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!in01(alpha) || !in01(beta) || !in01(gamma)) {
        throw ConfigError("planner alpha/beta/gamma must be in [0, 1]");
    }
    if (!(beta < alpha)) {
        throw ConfigError("planner requires beta < alpha (channel add/release hysteresis)");
    }
    if (k_max < 1 || k_max > state.num_channels) {
        throw ConfigError("planner k_max must be in [1, K]");
    }
    if (n_max_sc < state.n_cells()) {
        throw ConfigError("planner n_max_sc below the current deployment size");
    }
    if (baseline == Baseline::SotaFixedK && (sota_k < 1 || sota_k > k_max)) {
        throw ConfigError("sota_k must be in [1, k_max]");
    }
}

int PlanReport::total_channels_after() const {
    int s = 0;
    for (const auto& c : after) s += c.n_channels;
    return s;
}

double PlanReport::total_required_after_mhz() const {
    double s = 0.0;
    for (const auto& c : after) s += c.required_bw_mhz;
    return s;
}

double PlanReport::total_shortage_after_mhz() const {
    double s = 0.0;
    for (const auto& c : after) s += c.shortage_mhz;
    return s;
}

double PlanReport::total_shortage_before_mhz() const {
    double s = 0.0;
    for (const auto& c : before) s += c.shortage_mhz;
    return s;
}

std::vector<int> channel_selection(const NetworkState& state, const GridGeometry& geom,
                                   int target_index, int k) {
    const int K = state.num_channels;
    if (k < 1 || k > K) {
        throw ConfigError("channel selection needs 1 <= k <= K");
    }
    const int target_site = state.cells[target_index].site_pixel;

    std::vector<bool> available(K, true);
    std::vector<int> picked;
    picked.reserve(k);
    while (static_cast<int>(picked.size()) < k) {
        int best_j = -1;
        double best_s = -1.0;
        for (int j = 0; j < K; ++j) {
            if (!available[j]) continue;
            // Distance to the closest other deployed cell using channel j;
            // an unused channel scores +inf.
            double s = std::numeric_limits<double>::infinity();
            for (int y = 0; y < state.n_cells(); ++y) {
                if (y == target_index) continue;
                if (!(state.cells[y].channels & (1u << j))) continue;
                s = std::min(s, geom.distance_2d(target_site, state.cells[y].site_pixel));
            }
            if (best_j < 0 || s > best_s) { // ties keep the lowest channel index
                best_j = j;
                best_s = s;
            }
        }
        picked.push_back(best_j);
        available[best_j] = false;
    }
    return picked;
}

namespace {

uint32_t mask_of(std::span<const int> channels) {
    uint32_t m = 0;
    for (int c : channels) m |= 1u << c;
    return m;
}

std::vector<CellSnapshot> snapshot(const ModelResult& eval) {
    std::vector<CellSnapshot> rows(eval.cells.size());
    for (size_t i = 0; i < eval.cells.size(); ++i) {
        const CellStats& c = eval.cells[i];
        rows[i] = {c.cell_id, c.site_pixel, c.n_channels,
                   c.required_bw_mhz, c.cell_bw_mhz, c.shortage_mhz()};
    }
    return rows;
}

struct Working {
    NetworkState st;
    std::vector<int> uc; // sorted ascending
    ModelResult eval;
    std::vector<double> bw;
    PlanReport report;
    int step = 0;

    const TrafficMap* demand = nullptr;
    ModelContext* ctx = nullptr;
    const PlannerConfig* cfg = nullptr;

    void re_eval() {
        eval = evaluate(st, *demand, *ctx);
        bw = eval.required_bw();
    }

    [[noreturn]] void fail(const std::string& what) {
        PlanReport partial = report;
        partial.after = snapshot(eval);
        throw NonConvergenceError("planning did not converge: " + what, std::move(partial));
    }

    void record(ActionKind kind, int cell_id, int site, std::vector<int> channels, int k) {
        report.actions.push_back({step++, kind, cell_id, site, std::move(channels), k});
    }
};

Working make_working(const NetworkState& initial, std::span<const int> candidate_sites,
                     const TrafficMap& demand, ModelContext& ctx,
                     const PlannerConfig& cfg) {
    initial.validate(ScenarioGrid{ctx.geom(), {}, {}}); // channel/site sanity only
    cfg.validate(initial);
    Working w;
    w.st = initial;
    w.uc.assign(candidate_sites.begin(), candidate_sites.end());
    std::sort(w.uc.begin(), w.uc.end());
    // Committed sites are not candidates.
    for (const auto& c : initial.cells) {
        auto it = std::lower_bound(w.uc.begin(), w.uc.end(), c.site_pixel);
        if (it != w.uc.end() && *it == c.site_pixel) w.uc.erase(it);
    }
    w.demand = &demand;
    w.ctx = &ctx;
    w.cfg = &cfg;
    w.re_eval();
    w.report.before = snapshot(w.eval);
    return w;
}

// Largest violation first; ties to the lowest cell index.
int pick_violator(const std::vector<double>& margins) {
    int best = -1;
    for (int j = 0; j < static_cast<int>(margins.size()); ++j) {
        if (margins[j] <= 0.0) continue;
        if (best < 0 || margins[j] > margins[best]) best = j;
    }
    return best;
}

bool phase_add_channel(Working& w) {
    const PlannerConfig& cfg = *w.cfg;
    bool acted = false;
    int iter = 0;
    for (;;) {
        std::vector<double> margins(w.st.n_cells(), 0.0);
        for (int j = 0; j < w.st.n_cells(); ++j) {
            if (w.st.cells[j].n_channels() >= cfg.k_max) continue;
            margins[j] = w.bw[j] - cfg.alpha * w.st.cell_bw_mhz(j);
        }
        int j = pick_violator(margins);
        if (j < 0) break;
        if (++iter > cfg.phase_iteration_cap()) w.fail("add-channel phase cap exceeded");
        int new_k = w.st.cells[j].n_channels() + 1;
        auto ch = channel_selection(w.st, w.ctx->geom(), j, new_k);
        w.st.cells[j].channels = mask_of(ch);
        w.record(ActionKind::AddChannel, w.st.cells[j].id, w.st.cells[j].site_pixel, ch,
                 new_k);
        w.re_eval();
        acted = true;
    }
    return acted;
}

// Candidate enumeration shared by Algorithm 1's deploy phase and the
// deploy-only baseline: tentatively deploy every remaining candidate with k
// channels and keep the one minimizing the total required bandwidth.
struct CandidatePick {
    int site = -1;
    std::vector<int> channels;
    NetworkState state;
    ModelResult eval;
};

CandidatePick best_candidate(Working& w, int k) {
    CandidatePick best;
    double best_obj = std::numeric_limits<double>::infinity();
    for (int x : w.uc) {
        NetworkState tmp = w.st;
        SmallCell cell;
        cell.id = w.st.next_cell_id();
        cell.site_pixel = x;
        tmp.cells.push_back(cell);
        auto ch = channel_selection(tmp, w.ctx->geom(), tmp.n_cells() - 1, k);
        tmp.cells.back().channels = mask_of(ch);
        ModelResult ev = evaluate(tmp, *w.demand, *w.ctx);
        double obj = ev.total_required_bw_mhz();
        if (obj < best_obj) {
            best_obj = obj;
            best.site = x;
            best.channels = std::move(ch);
            best.state = std::move(tmp);
            best.eval = std::move(ev);
        }
    }
    return best;
}

void commit_candidate(Working& w, CandidatePick&& pick, int k) {
    w.st = std::move(pick.state);
    w.uc.erase(std::find(w.uc.begin(), w.uc.end(), pick.site));
    w.record(ActionKind::DeploySc, w.st.cells.back().id, pick.site,
             std::move(pick.channels), k);
    w.eval = std::move(pick.eval);
    w.bw = w.eval.required_bw();
}

bool phase_deploy(Working& w) {
    const PlannerConfig& cfg = *w.cfg;
    double B = w.st.channel_bandwidth_mhz;
    bool acted = false;
    int iter = 0;
    for (;;) {
        // Threshold grows with the deployment and reaches K_max*B at
        // saturation.
        double threshold = B * w.st.n_cells() * cfg.k_max / cfg.n_max_sc;
        bool violated = false;
        for (int j = 0; j < w.st.n_cells(); ++j) {
            if (w.bw[j] > threshold) violated = true;
        }
        if (!violated) break;
        if (w.st.n_cells() >= cfg.n_max_sc || w.uc.empty()) {
            w.report.saturated = true;
            break;
        }
        if (++iter > cfg.phase_iteration_cap()) w.fail("deploy phase cap exceeded");

        int k = 0;
        CandidatePick pick;
        double bx = 0.0;
        do {
            ++k;
            pick = best_candidate(w, k);
            bx = pick.eval.cells.back().required_bw_mhz;
        } while (bx > cfg.alpha * k * B && k < cfg.k_max);
        commit_candidate(w, std::move(pick), k);
        acted = true;
    }
    return acted;
}

bool phase_remove_channel(Working& w) {
    const PlannerConfig& cfg = *w.cfg;
    double B = w.st.channel_bandwidth_mhz;
    bool acted = false;
    int iter = 0;
    for (;;) {
        std::vector<double> margins(w.st.n_cells(), 0.0);
        for (int j = 0; j < w.st.n_cells(); ++j) {
            int nch = w.st.cells[j].n_channels();
            if (nch <= 1) continue;
            margins[j] = cfg.beta * (nch - 1) * B - w.bw[j];
        }
        int j = pick_violator(margins);
        if (j < 0) break;
        if (++iter > cfg.phase_iteration_cap()) w.fail("remove-channel phase cap exceeded");
        int new_k = w.st.cells[j].n_channels() - 1;
        auto ch = channel_selection(w.st, w.ctx->geom(), j, new_k);
        w.st.cells[j].channels = mask_of(ch);
        w.record(ActionKind::RemoveChannel, w.st.cells[j].id, w.st.cells[j].site_pixel, ch,
                 new_k);
        w.re_eval();
        acted = true;
    }
    return acted;
}

bool phase_remove_cell(Working& w) {
    const PlannerConfig& cfg = *w.cfg;
    double B = w.st.channel_bandwidth_mhz;
    bool acted = false;
    int iter = 0;
    for (;;) {
        std::vector<double> margins(w.st.n_cells(), 0.0);
        for (int j = 0; j < w.st.n_cells(); ++j) {
            margins[j] = cfg.gamma * B - w.bw[j];
        }
        int j = pick_violator(margins);
        if (j < 0) break;
        if (++iter > cfg.phase_iteration_cap()) w.fail("remove-cell phase cap exceeded");
        SmallCell removed = w.st.cells[j];
        w.st.cells.erase(w.st.cells.begin() + j);
        w.uc.insert(std::lower_bound(w.uc.begin(), w.uc.end(), removed.site_pixel),
                    removed.site_pixel);
        w.record(ActionKind::RemoveSc, removed.id, removed.site_pixel, {}, 0);
        w.re_eval();
        acted = true;
    }
    return acted;
}

PlanOutcome finish(Working&& w) {
    w.report.after = snapshot(w.eval);
    // Saturation: a grow condition still holds but every guard blocks it.
    const PlannerConfig& cfg = *w.cfg;
    for (int j = 0; j < w.st.n_cells(); ++j) {
        bool wants_channel = w.bw[j] > cfg.alpha * w.st.cell_bw_mhz(j);
        bool channel_blocked = w.st.cells[j].n_channels() >= cfg.k_max;
        double deploy_thr =
            w.st.channel_bandwidth_mhz * w.st.n_cells() * cfg.k_max / cfg.n_max_sc;
        bool wants_cell = w.bw[j] > deploy_thr;
        bool cell_blocked = w.st.n_cells() >= cfg.n_max_sc || w.uc.empty();
        if ((wants_channel && channel_blocked) || (wants_cell && cell_blocked)) {
            w.report.saturated = true;
        }
    }
    PlanOutcome out;
    out.state = std::move(w.st);
    out.candidates = std::move(w.uc);
    out.report = std::move(w.report);
    out.final_eval = std::move(w.eval);
    return out;
}

} // namespace

namespace {

uint64_t state_hash(const NetworkState& st, const std::vector<int>& uc) {
    uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&](uint64_t v) {
        h ^= v;
        h *= 0x100000001b3ull;
    };
    for (const auto& c : st.cells) {
        mix(static_cast<uint64_t>(c.id));
        mix(static_cast<uint64_t>(c.site_pixel));
        mix(c.channels);
    }
    mix(0xabcdefull);
    for (int u : uc) mix(static_cast<uint64_t>(u));
    return h;
}

struct PassCheckpoint {
    NetworkState st;
    std::vector<int> uc;
    ModelResult eval;
    std::vector<double> bw;
    size_t n_actions = 0;
    double conformance_gap = 0.0; // total excess over alpha*|F|*B
    double shortage = 0.0;
    int channels = 0;
    int cells = 0;

    bool better_than(const PassCheckpoint& o) const {
        if (conformance_gap != o.conformance_gap) return conformance_gap < o.conformance_gap;
        if (shortage != o.shortage) return shortage < o.shortage;
        if (channels != o.channels) return channels < o.channels;
        if (cells != o.cells) return cells < o.cells;
        return false; // earlier checkpoint wins ties
    }
};

PassCheckpoint checkpoint(const Working& w, double alpha) {
    PassCheckpoint cp{w.st, w.uc, w.eval, w.bw, w.report.actions.size(), 0.0, 0.0, 0, 0};
    for (int j = 0; j < w.st.n_cells(); ++j) {
        double excess = w.bw[j] - alpha * w.st.cell_bw_mhz(j);
        if (excess > 0.0) cp.conformance_gap += excess;
    }
    cp.shortage = cp.eval.total_shortage_mhz();
    cp.channels = cp.st.total_channels();
    cp.cells = cp.st.n_cells();
    return cp;
}

} // namespace

PlanOutcome plan(const NetworkState& initial, std::span<const int> candidate_sites,
                 const TrafficMap& demand, ModelContext& ctx, const PlannerConfig& cfg) {
    Working w = make_working(initial, candidate_sites, demand, ctx, cfg);
    // The four phases run in order; a full pass repeats until stable so the
    // returned deployment is a fixed point of the planner. Interference
    // coupling can make opposing actions cycle between passes; a revisited
    // state ends the loop at the best checkpoint seen (least shortage, then
    // fewest channels), with the action log truncated to match.
    std::set<uint64_t> seen{state_hash(w.st, w.uc)};
    PassCheckpoint best = checkpoint(w, cfg.alpha);
    bool settled = true;
    for (int pass = 1;; ++pass) {
        w.report.passes = pass;
        bool acted = false;
        acted |= phase_add_channel(w);
        acted |= phase_deploy(w);
        acted |= phase_remove_channel(w);
        acted |= phase_remove_cell(w);
        if (!acted) break;
        PassCheckpoint cp = checkpoint(w, cfg.alpha);
        if (cp.better_than(best)) best = cp;
        if (!seen.insert(state_hash(w.st, w.uc)).second || pass >= cfg.max_passes) {
            settled = false;
            break;
        }
    }
    if (!settled && best.n_actions != w.report.actions.size()) {
        w.st = std::move(best.st);
        w.uc = std::move(best.uc);
        w.eval = std::move(best.eval);
        w.bw = std::move(best.bw);
        w.report.actions.resize(best.n_actions);
    }
    if (!settled) {
        w.report.settled = false;
        w.report.notes += "phase cycle detected; stopped at the best visited state\n";
    }
    return finish(std::move(w));
}

PlanOutcome plan_sota(const NetworkState& initial, std::span<const int> candidate_sites,
                      const TrafficMap& demand, ModelContext& ctx,
                      const PlannerConfig& cfg) {
    if (cfg.baseline != PlannerConfig::Baseline::SotaFixedK) {
        throw ConfigError("plan_sota requires baseline_mode = sota-fixed-k");
    }
    Working w = make_working(initial, candidate_sites, demand, ctx, cfg);
    w.report.passes = 1;
    int iter = 0;
    for (;;) {
        bool violated = false;
        for (int j = 0; j < w.st.n_cells(); ++j) {
            if (w.bw[j] > cfg.alpha * w.st.cell_bw_mhz(j)) violated = true;
        }
        if (!violated) break;
        if (w.st.n_cells() >= cfg.n_max_sc || w.uc.empty()) {
            w.report.saturated = true;
            break;
        }
        if (++iter > cfg.phase_iteration_cap()) w.fail("baseline deploy cap exceeded");
        CandidatePick pick = best_candidate(w, cfg.sota_k);
        commit_candidate(w, std::move(pick), cfg.sota_k);
    }
    return finish(std::move(w));
}

NetworkState replay_actions(const NetworkState& initial,
                            std::span<const PlanAction> actions) {
    NetworkState st = initial;
    for (const auto& a : actions) {
        switch (a.kind) {
            case ActionKind::AddChannel:
            case ActionKind::RemoveChannel: {
                int idx = st.index_of(a.cell_id);
                if (idx < 0) throw ModelError("replay: unknown cell id");
                st.cells[idx].channels = mask_of(a.channels);
                break;
            }
            case ActionKind::DeploySc: {
                SmallCell cell;
                cell.id = a.cell_id;
                cell.site_pixel = a.site_pixel;
                cell.channels = mask_of(a.channels);
                st.cells.push_back(cell);
                break;
            }
            case ActionKind::RemoveSc: {
                int idx = st.index_of(a.cell_id);
                if (idx < 0) throw ModelError("replay: unknown cell id");
                st.cells.erase(st.cells.begin() + idx);
                break;
            }
        }
    }
    return st;
}

void write_actions_csv(const std::filesystem::path& path,
                       std::span<const PlanAction> actions) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << "step,action,sc_id,site_pixel,channels,k\n";
    for (const auto& a : actions) {
        out << a.step << ',' << to_string(a.kind) << ',' << a.cell_id << ','
            << a.site_pixel << ',';
        for (size_t i = 0; i < a.channels.size(); ++i) {
            if (i) out << '|';
            out << a.channels[i] + 1; // 1-based in files
        }
        out << ',' << a.k << '\n';
    }
}

void write_summary_csv(const std::filesystem::path& path,
                       std::span<const CellSnapshot> rows) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << "sc_id,req_bw_mhz,cell_bw_mhz,shortage_mhz\n";
    char buf[160];
    double req = 0.0, cbw = 0.0, sh = 0.0;
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%d,%.6f,%.6f,%.6f\n", r.cell_id,
                      r.required_bw_mhz, r.cell_bw_mhz, r.shortage_mhz);
        out << buf;
        req += r.required_bw_mhz;
        cbw += r.cell_bw_mhz;
        sh += r.shortage_mhz;
    }
    std::snprintf(buf, sizeof buf, "total,%.6f,%.6f,%.6f\n", req, cbw, sh);
    out << buf;
}

} // namespace scnplan

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "scnplan/error.hpp"
#include "scnplan/radio_model.hpp"
#include "scnplan/scenario.hpp"

namespace scnplan {

struct PlannerConfig {
    double alpha = 0.95;
    double beta = 0.7;
    double gamma = 0.05;
    int k_max = 3;
    int n_max_sc = 10;

    enum class Baseline { Off, SotaFixedK };
    Baseline baseline = Baseline::Off;
    int sota_k = 2;

    // Guard against livelock; generous relative to any sane run.
    int phase_iteration_cap() const { return 4 * n_max_sc * k_max; }
    int max_passes = 8;

    void validate(const NetworkState& state) const;
};

enum class ActionKind { AddChannel, RemoveChannel, DeploySc, RemoveSc };
const char* to_string(ActionKind k);

// One planning action. channels holds the cell's full channel set after the
// action, in selection order (a channel change re-runs channel selection for
// the whole set), which is what makes the log replayable.
struct PlanAction {
    int step = 0;
    ActionKind kind = ActionKind::AddChannel;
    int cell_id = 0;
    int site_pixel = -1;
    std::vector<int> channels; // 0-based
    int k = 0;                 // |channels| after the action
};

struct CellSnapshot {
    int cell_id = 0;
    int site_pixel = -1;
    int n_channels = 0;
    double required_bw_mhz = 0.0;
    double cell_bw_mhz = 0.0;
    double shortage_mhz = 0.0;
};

struct PlanReport {
    std::vector<PlanAction> actions;
    std::vector<CellSnapshot> before;
    std::vector<CellSnapshot> after;
    bool saturated = false; // a condition still holds but every guard blocks
    bool settled = true;    // false when the pass loop stopped on a revisited state
    int passes = 0;
    std::string notes;

    int n_cells_after() const { return static_cast<int>(after.size()); }
    int total_channels_after() const;
    double total_required_after_mhz() const;
    double total_shortage_after_mhz() const;
    double total_shortage_before_mhz() const;
};

class NonConvergenceError : public Error {
public:
    NonConvergenceError(const std::string& msg, PlanReport partial)
        : Error(msg), partial_report(std::move(partial)) {}
    PlanReport partial_report;
};

// Greedy channel selection for cell at index target_index: each pick
// maximizes the distance to the closest other deployed cell using the same
// channel (unused channels count as +inf); ties break to the lowest channel
// index. Returns k channels in pick order. k > K raises ConfigError.
std::vector<int> channel_selection(const NetworkState& state, const GridGeometry& geom,
                                   int target_index, int k);

struct PlanOutcome {
    NetworkState state;
    std::vector<int> candidates; // U_C after planning (committed sites removed)
    PlanReport report;
    ModelResult final_eval;
};

// Capacity dimensioning and planning: grow channels where required bandwidth
// exceeds alpha*|F|*B, deploy cells while demand outgrows the deployment
// threshold, then shrink channels and remove near-idle cells. Deterministic:
// the largest violation is processed first, ties break to the lowest cell id.
PlanOutcome plan(const NetworkState& initial, std::span<const int> candidate_sites,
                 const TrafficMap& demand, ModelContext& ctx, const PlannerConfig& cfg);

// Deploy-only baseline: adds cells with a fixed channel count (cfg.sota_k)
// while any cell exceeds alpha*|F|*B; never touches existing channel sets.
PlanOutcome plan_sota(const NetworkState& initial, std::span<const int> candidate_sites,
                      const TrafficMap& demand, ModelContext& ctx, const PlannerConfig& cfg);

// Applies a recorded action list to a state (structure only, no model
// evaluation): reproduces the planner's final deployment exactly.
NetworkState replay_actions(const NetworkState& initial, std::span<const PlanAction> actions);

void write_actions_csv(const std::filesystem::path& path, std::span<const PlanAction> actions);
void write_summary_csv(const std::filesystem::path& path, std::span<const CellSnapshot> rows);

} // namespace scnplan

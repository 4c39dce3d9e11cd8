#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "scnplan/geometry.hpp"

namespace scnplan {

struct SynthesisConfig {
    double target_total_mbps = 0.0;
    double target_pearson = 0.0; // in [-1, 1]
    uint64_t seed = 0;
    int smoothing_radius_px = 6;

    // Daily profile knobs.
    int profile_steps = 24;       // T
    int profile_peak_step = 20;
    double profile_shape = 2.0;   // 0 = flat
    double profile_base = 0.2;

    void validate() const;
};

// Pearson correlation coefficient over all entries (zeros included).
double pearson(std::span<const double> a, std::span<const double> b);

// Synthesizes a non-negative per-pixel demand layer with the requested total
// and a Pearson correlation against the reference within +-0.02 of the
// target. Mixes the standardized reference with an independent smoothed
// field; the mixing weight is calibrated by bisection against the achieved
// correlation (clipping at zero shifts it). Raises CalibrationError with the
// best achieved value when the target is unreachable.
std::vector<double> synth_correlated_map(std::span<const double> reference,
                                         const GridGeometry& geom,
                                         const SynthesisConfig& cfg);

// Standalone non-uniform demand layer (log-normal hotspots over a smoothed
// field), summing to the requested total.
std::vector<double> synth_lognormal_map(const GridGeometry& geom, double total_mbps,
                                        uint64_t seed, int smoothing_radius_px,
                                        double sigma = 1.0);

// Daily demand profile: raised-cosine bump with a unique maximum at
// profile_peak_step (shape 0 gives a flat profile). Values in (0, 1].
std::vector<double> synth_daily_profile(const SynthesisConfig& cfg);

} // namespace scnplan

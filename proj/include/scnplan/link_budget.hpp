#pragma once

#include <cmath>

#include "scnplan/geometry.hpp"

namespace scnplan {

// Link-level parameters of the radio model (defaults: urban 5 GHz small
// cells, ITU InH propagation).
struct LinkBudget {
    double noise_psd_dbm_hz = -174.0;
    double noise_figure_db = 9.0;
    double antenna_gain_dbi = 2.0;
    double sc_height_m = 6.0;
    double ue_height_m = 1.5;
    double carrier_ghz = 5.0;
    double sinr_edge_db = 9.0;   // power dimensioning target at the cell edge
    double sinr_min_db = -10.0;  // below (or at) this the pixel carries nothing
    double se_max_bps_hz = 4.4;
    double se_attenuation = 0.75;
    double p_min_dbm = 10.0;
    double p_max_dbm = 24.0;
    bool los = true; // InH LOS branch; NLOS selectable per scenario
    // Whether the edge path term in the power rule includes the antenna gain.
    // The default uses path loss only.
    bool edge_gain_includes_antenna = false;

    double height_delta_m() const { return sc_height_m - ue_height_m; }
};

inline double db_to_lin(double db) { return std::pow(10.0, db / 10.0); }
inline double lin_to_db(double lin) { return 10.0 * std::log10(lin); }

// ITU InH path loss in dB at 3D distance d (meters).
inline double path_loss_db(double distance_m, const LinkBudget& budget) {
    if (budget.los) {
        return 16.9 * std::log10(distance_m) + 32.8 + 20.0 * std::log10(budget.carrier_ghz);
    }
    return 43.3 * std::log10(distance_m) + 11.5 + 20.0 * std::log10(budget.carrier_ghz);
}

// Inverse of path_loss_db: 3D distance at which the given loss is reached.
inline double path_loss_inverse_m(double loss_db, const LinkBudget& budget) {
    double coef = budget.los ? 16.9 : 43.3;
    double offset = (budget.los ? 32.8 : 11.5) + 20.0 * std::log10(budget.carrier_ghz);
    return std::pow(10.0, (loss_db - offset) / coef);
}

// 3D link distance between an SC site and a pixel, floored at resolution/2
// to keep the loss finite at the site pixel itself.
inline double link_distance_m(int site, int u, const GridGeometry& geom,
                              const LinkBudget& budget) {
    double d2 = geom.distance_2d(site, u);
    double dh = budget.height_delta_m();
    double d3 = std::sqrt(d2 * d2 + dh * dh);
    return std::max(d3, geom.resolution_m * 0.5);
}

// Overall gain (dB) between SC site and pixel: antenna gain minus path loss.
inline double path_gain_db(int site, int u, const GridGeometry& geom,
                           const LinkBudget& budget) {
    return budget.antenna_gain_dbi - path_loss_db(link_distance_m(site, u, geom, budget), budget);
}

// Noise power over the given bandwidth, dBm.
inline double noise_power_dbm(double bandwidth_mhz, const LinkBudget& budget) {
    return budget.noise_psd_dbm_hz + 10.0 * std::log10(bandwidth_mhz * 1e6) +
           budget.noise_figure_db;
}

} // namespace scnplan

#include "scnplan/traffic_synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "scnplan/error.hpp"
#include "scnplan/rng.hpp"

namespace scnplan {

void SynthesisConfig::validate() const {
    if (target_total_mbps < 0.0) throw ConfigError("synthesis total must be >= 0");
    if (std::abs(target_pearson) > 1.0) throw ConfigError("Pearson target must be in [-1, 1]");
    if (smoothing_radius_px < 0) throw ConfigError("smoothing radius must be >= 0");
}

double pearson(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.empty()) {
        throw ConfigError("Pearson needs two equally-sized non-empty series");
    }
    double n = static_cast<double>(a.size());
    double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
    double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        double da = a[i] - ma, db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa <= 0.0 || sbb <= 0.0) {
        throw ModelError("Pearson undefined for a constant series");
    }
    return sab / std::sqrt(saa * sbb);
}

namespace {

// One box-blur pass along each axis, edge-replicated. Three passes
// approximate a Gaussian well enough for hotspot shaping.
void box_blur(std::vector<double>& v, int nx, int ny, int radius) {
    if (radius <= 0) return;
    std::vector<double> tmp(v.size());
    double inv = 1.0 / (2 * radius + 1);
    for (int y = 0; y < ny; ++y) {
        for (int x = 0; x < nx; ++x) {
            double s = 0.0;
            for (int d = -radius; d <= radius; ++d) {
                int xx = std::clamp(x + d, 0, nx - 1);
                s += v[y * nx + xx];
            }
            tmp[y * nx + x] = s * inv;
        }
    }
    for (int x = 0; x < nx; ++x) {
        for (int y = 0; y < ny; ++y) {
            double s = 0.0;
            for (int d = -radius; d <= radius; ++d) {
                int yy = std::clamp(y + d, 0, ny - 1);
                s += tmp[yy * nx + x];
            }
            v[y * nx + x] = s * inv;
        }
    }
}

void standardize(std::vector<double>& v) {
    double n = static_cast<double>(v.size());
    double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    var /= n;
    if (var <= 0.0) throw ModelError("degenerate random field (zero variance)");
    double inv_sd = 1.0 / std::sqrt(var);
    for (double& x : v) x = (x - mean) * inv_sd;
}

std::vector<double> smoothed_field(const GridGeometry& geom, Rng rng, int radius) {
    std::vector<double> f(geom.n_pixels());
    for (double& x : f) x = rng.gaussian();
    for (int pass = 0; pass < 3; ++pass) box_blur(f, geom.nx, geom.ny, radius);
    standardize(f);
    return f;
}

void rescale_to_total(std::vector<double>& v, double total) {
    double s = std::accumulate(v.begin(), v.end(), 0.0);
    if (s <= 0.0) throw ModelError("synthesized map sums to zero");
    double f = total / s;
    for (double& x : v) x *= f;
}

} // namespace

std::vector<double> synth_correlated_map(std::span<const double> reference,
                                         const GridGeometry& geom,
                                         const SynthesisConfig& cfg) {
    cfg.validate();
    if (cfg.target_total_mbps <= 0.0) {
        throw ConfigError("correlated synthesis needs a positive total");
    }
    int n = geom.n_pixels();
    if (static_cast<int>(reference.size()) != n) {
        throw ConfigError("reference map does not match the grid");
    }

    double mean_d = std::accumulate(reference.begin(), reference.end(), 0.0) / n;
    double var_d = 0.0;
    for (double d : reference) var_d += (d - mean_d) * (d - mean_d);
    var_d /= n;
    if (var_d <= 0.0) {
        throw ModelError("correlation against a constant reference is undefined");
    }
    double sd_d = std::sqrt(var_d);
    std::vector<double> z_d(n);
    for (int u = 0; u < n; ++u) z_d[u] = (reference[u] - mean_d) / sd_d;

    std::vector<double> z_e =
        smoothed_field(geom, Rng(cfg.seed).substream("corr-field"), cfg.smoothing_radius_px);

    auto realize = [&](double w) {
        double w2 = std::sqrt(std::max(0.0, 1.0 - w * w));
        std::vector<double> y(n);
        for (int u = 0; u < n; ++u) {
            double g = w * z_d[u] + w2 * z_e[u];
            y[u] = std::max(0.0, mean_d + sd_d * g); // back to demand scale, clipped
        }
        rescale_to_total(y, cfg.target_total_mbps);
        return y;
    };
    auto rho_of = [&](const std::vector<double>& y) { return pearson(y, reference); };

    // Clipping shifts the achieved correlation, so the mixing weight is
    // calibrated by bisection on the realized value.
    const double accept_tol = 0.005;
    const int max_iterations = 50;

    double lo = -1.0, hi = 1.0;
    auto y_hi = realize(hi);
    double r_hi = rho_of(y_hi);
    if (std::abs(r_hi - cfg.target_pearson) <= accept_tol) return y_hi;
    auto y_lo = realize(lo);
    double r_lo = rho_of(y_lo);
    if (std::abs(r_lo - cfg.target_pearson) <= accept_tol) return y_lo;

    if (cfg.target_pearson > r_hi || cfg.target_pearson < r_lo) {
        double best = std::abs(r_hi - cfg.target_pearson) <
                              std::abs(r_lo - cfg.target_pearson)
                          ? r_hi
                          : r_lo;
        std::ostringstream msg;
        msg << "Pearson target " << cfg.target_pearson
            << " unreachable after clipping; best achieved " << best;
        throw CalibrationError(msg.str(), best);
    }

    std::vector<double> best_y;
    double best_rho = r_hi;
    double best_err = std::abs(r_hi - cfg.target_pearson);
    for (int it = 0; it < max_iterations; ++it) {
        double mid = 0.5 * (lo + hi);
        auto y = realize(mid);
        double r = rho_of(y);
        double err = std::abs(r - cfg.target_pearson);
        if (err < best_err) {
            best_err = err;
            best_rho = r;
            best_y = std::move(y);
        }
        if (err <= accept_tol) return best_y;
        if (r < cfg.target_pearson) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if (best_err <= 0.02 && !best_y.empty()) return best_y;
    std::ostringstream msg;
    msg << "Pearson calibration did not converge; best achieved " << best_rho;
    throw CalibrationError(msg.str(), best_rho);
}

std::vector<double> synth_lognormal_map(const GridGeometry& geom, double total_mbps,
                                        uint64_t seed, int smoothing_radius_px,
                                        double sigma) {
    if (total_mbps < 0.0) throw ConfigError("map total must be >= 0");
    if (sigma < 0.0) throw ConfigError("map sigma must be >= 0");
    int n = geom.n_pixels();
    if (total_mbps == 0.0) return std::vector<double>(n, 0.0);
    std::vector<double> f =
        smoothed_field(geom, Rng(seed).substream("lognormal-field"), smoothing_radius_px);
    for (double& x : f) x = std::exp(sigma * x);
    rescale_to_total(f, total_mbps);
    return f;
}

std::vector<double> synth_daily_profile(const SynthesisConfig& cfg) {
    int T = cfg.profile_steps;
    if (T < 2) throw ConfigError("daily profile needs T >= 2");
    if (cfg.profile_peak_step < 0 || cfg.profile_peak_step >= T) {
        throw ConfigError("profile peak step outside [0, T)");
    }
    if (cfg.profile_base < 0.0 || cfg.profile_base > 1.0) {
        throw ConfigError("profile base must be in [0, 1]");
    }
    if (cfg.profile_shape < 0.0) throw ConfigError("profile shape must be >= 0");
    std::vector<double> p(T);
    for (int t = 0; t < T; ++t) {
        double theta = 2.0 * M_PI * static_cast<double>(t - cfg.profile_peak_step) / T;
        double c = 0.5 * (1.0 + std::cos(theta));
        p[t] = cfg.profile_base + (1.0 - cfg.profile_base) * std::pow(c, cfg.profile_shape);
    }
    return p;
}

} // namespace scnplan

#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace scnplan::kernels {

// Grid kernels behind the radio model's per-pixel loops. Every variant of a
// kernel must produce bit-identical output: same operation order, no fp
// contraction, correctly-rounded primitives only. The equivalence tests
// assert exact equality between variants, so any change here has to keep the
// scalar and vector code paths in lockstep.
struct Ops {
    const char* name;

    // out[i] = c * in[i]
    void (*scale)(double* out, const double* in, double c, size_t n);

    // acc[i] += a * in[i]
    // Callers accumulate interference terms in ascending cell order; dropping
    // a term from that ordered sum can never increase it, which is what makes
    // the SINR interferer-removal monotonicity exact.
    void (*axpy)(double* acc, const double* in, double a, size_t n);

    // Running argmax update: where vals[i] > best[i] (strictly), set
    // best[i] = vals[i], arg[i] = idx. Ties keep the earlier index.
    void (*argmax_update)(double* best, int32_t* arg, const double* vals,
                          int32_t idx, size_t n);

    // acc[i] += num[i] / (den[i] + den_add)
    void (*reciprocal_accumulate)(double* acc, const double* num, const double* den,
                                  double den_add, size_t n);

    // Spectral efficiency map from an accumulated per-channel SINR sum:
    //   s = sinr_sum[i] * inv_nch
    //   se[i] = 0                         if s <= sinr_min_lin
    //           min(se_max, att*log2(1+s)) otherwise
    void (*se_map)(double* se, const double* sinr_sum, double inv_nch,
                   double sinr_min_lin, double att, double se_max, size_t n);
};

const Ops& scalar_ops();

// AVX2 variant, or nullptr when unsupported by the build or the CPU.
const Ops* avx2_ops();

// Active variant. Defaults to the best supported one; the SCNPLAN_KERNELS
// environment variable ("scalar"/"avx2"/"auto") overrides at startup.
const Ops& active();

// Force a variant by name ("scalar", "avx2", "auto"). Returns false if the
// requested variant is unavailable (selection unchanged).
bool select(std::string_view name);

// log2 used by se_map. Shared scalar form of the polynomial evaluated by the
// vector variants; valid for x >= 1.
double log2_poly(double x);

} // namespace scnplan::kernels

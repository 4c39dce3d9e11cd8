#include "scnplan/kernels.hpp"

#include <bit>
#include <cstdint>

// Scalar reference kernels. The AVX2 variant mirrors these operation for
// operation; see the lockstep note in kernels.hpp before touching anything.

namespace scnplan::kernels {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880168872420969808;
constexpr double kTwoOverLn2 = 2.8853900817779268147198493620038695;

// atanh-series coefficients: 1/(2k+1)
constexpr double kC0 = 1.0;
constexpr double kC1 = 1.0 / 3.0;
constexpr double kC2 = 1.0 / 5.0;
constexpr double kC3 = 1.0 / 7.0;
constexpr double kC4 = 1.0 / 9.0;
constexpr double kC5 = 1.0 / 11.0;
constexpr double kC6 = 1.0 / 13.0;
constexpr double kC7 = 1.0 / 15.0;

void scale_impl(double* out, const double* in, double c, size_t n) {
    for (size_t i = 0; i < n; ++i) out[i] = c * in[i];
}

void axpy_impl(double* acc, const double* in, double a, size_t n) {
    for (size_t i = 0; i < n; ++i) acc[i] = acc[i] + a * in[i];
}

void argmax_update_impl(double* best, int32_t* arg, const double* vals, int32_t idx,
                        size_t n) {
    for (size_t i = 0; i < n; ++i) {
        if (vals[i] > best[i]) {
            best[i] = vals[i];
            arg[i] = idx;
        }
    }
}

void reciprocal_accumulate_impl(double* acc, const double* num, const double* den,
                                double den_add, size_t n) {
    for (size_t i = 0; i < n; ++i) {
        double d = den[i] + den_add;
        double q = num[i] / d;
        acc[i] = acc[i] + q;
    }
}

void se_map_impl(double* se, const double* sinr_sum, double inv_nch,
                 double sinr_min_lin, double att, double se_max, size_t n) {
    for (size_t i = 0; i < n; ++i) {
        double s = sinr_sum[i] * inv_nch;
        double v = att * log2_poly(1.0 + s);
        v = v < se_max ? v : se_max;
        se[i] = s <= sinr_min_lin ? 0.0 : v;
    }
}

const Ops kScalarOps = {
    "scalar",
    &scale_impl,
    &axpy_impl,
    &argmax_update_impl,
    &reciprocal_accumulate_impl,
    &se_map_impl,
};

} // namespace

double log2_poly(double x) {
    // x >= 1: normal, positive, no subnormal handling needed.
    uint64_t bits = std::bit_cast<uint64_t>(x);
    double e = static_cast<double>(static_cast<int64_t>((bits >> 52) & 0x7ff) - 1023);
    double m = std::bit_cast<double>((bits & 0x000fffffffffffffull) | 0x3ff0000000000000ull);
    // Fold the mantissa into [sqrt(2)/2, sqrt(2)); the *0.5 is exact.
    if (m > kSqrt2) {
        m = m * 0.5;
        e = e + 1.0;
    }
    double t = (m - 1.0) / (m + 1.0);
    double t2 = t * t;
    double p = kC7;
    p = p * t2 + kC6;
    p = p * t2 + kC5;
    p = p * t2 + kC4;
    p = p * t2 + kC3;
    p = p * t2 + kC2;
    p = p * t2 + kC1;
    p = p * t2 + kC0;
    double r = t * p;
    r = r * kTwoOverLn2;
    return e + r;
}

const Ops& scalar_ops() { return kScalarOps; }

} // namespace scnplan::kernels

#include "scnplan/kernels.hpp"

#include <cstdint>
#include <immintrin.h>

// AVX2 kernel variant. Operation order mirrors kernels_scalar.cpp exactly
// (no fma, correctly-rounded mul/add/div only), so each lane computes the
// same bits as the scalar reference; the equivalence tests assert that.

namespace scnplan::kernels {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880168872420969808;
constexpr double kTwoOverLn2 = 2.8853900817779268147198493620038695;
constexpr double kC0 = 1.0;
constexpr double kC1 = 1.0 / 3.0;
constexpr double kC2 = 1.0 / 5.0;
constexpr double kC3 = 1.0 / 7.0;
constexpr double kC4 = 1.0 / 9.0;
constexpr double kC5 = 1.0 / 11.0;
constexpr double kC6 = 1.0 / 13.0;
constexpr double kC7 = 1.0 / 15.0;

inline __m256d log2_poly_pd(__m256d x) {
    const __m256i mant_mask = _mm256_set1_epi64x(0x000fffffffffffffll);
    const __m256i one_exp = _mm256_set1_epi64x(0x3ff0000000000000ll);
    const __m256d one = _mm256_set1_pd(1.0);

    __m256i bits = _mm256_castpd_si256(x);
    // Exponent field to double; x >= 1 so the sign bit is clear and the
    // shifted value fits in 32 bits.
    __m256i expi = _mm256_srli_epi64(bits, 52);
    __m128i expi32 = _mm256_castsi256_si128(
        _mm256_permutevar8x32_epi32(expi, _mm256_setr_epi32(0, 2, 4, 6, 0, 0, 0, 0)));
    __m256d e = _mm256_sub_pd(_mm256_cvtepi32_pd(expi32), _mm256_set1_pd(1023.0));

    __m256d m = _mm256_castsi256_pd(
        _mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_exp));
    __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(kSqrt2), _CMP_GT_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
    e = _mm256_add_pd(e, _mm256_and_pd(big, one));

    __m256d t = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
    __m256d t2 = _mm256_mul_pd(t, t);
    __m256d p = _mm256_set1_pd(kC7);
    p = _mm256_add_pd(_mm256_mul_pd(p, t2), _mm256_set1_pd(kC6));
    p = _mm256_add_pd(_mm256_mul_pd(p, t2), _mm256_set1_pd(kC5));
    p = _mm256_add_pd(_mm256_mul_pd(p, t2), _mm256_set1_pd(kC4));
    p = _mm256_add_pd(_mm256_mul_pd(p, t2), _mm256_set1_pd(kC3));
    p = _mm256_add_pd(_mm256_mul_pd(p, t2), _mm256_set1_pd(kC2));
    p = _mm256_add_pd(_mm256_mul_pd(p, t2), _mm256_set1_pd(kC1));
    p = _mm256_add_pd(_mm256_mul_pd(p, t2), _mm256_set1_pd(kC0));
    __m256d r = _mm256_mul_pd(t, p);
    r = _mm256_mul_pd(r, _mm256_set1_pd(kTwoOverLn2));
    return _mm256_add_pd(e, r);
}

void scale_impl(double* out, const double* in, double c, size_t n) {
    size_t i = 0;
    __m256d cv = _mm256_set1_pd(c);
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(out + i, _mm256_mul_pd(cv, _mm256_loadu_pd(in + i)));
    }
    for (; i < n; ++i) out[i] = c * in[i];
}

void axpy_impl(double* acc, const double* in, double a, size_t n) {
    size_t i = 0;
    __m256d av = _mm256_set1_pd(a);
    for (; i + 4 <= n; i += 4) {
        __m256d t = _mm256_mul_pd(av, _mm256_loadu_pd(in + i));
        _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), t));
    }
    for (; i < n; ++i) acc[i] = acc[i] + a * in[i];
}

void argmax_update_impl(double* best, int32_t* arg, const double* vals, int32_t idx,
                        size_t n) {
    size_t i = 0;
    const __m128i idxv = _mm_set1_epi32(idx);
    const __m256i pick = _mm256_setr_epi32(0, 2, 4, 6, 0, 0, 0, 0);
    for (; i + 4 <= n; i += 4) {
        __m256d b = _mm256_loadu_pd(best + i);
        __m256d v = _mm256_loadu_pd(vals + i);
        __m256d gt = _mm256_cmp_pd(v, b, _CMP_GT_OQ);
        _mm256_storeu_pd(best + i, _mm256_blendv_pd(b, v, gt));
        __m128i m32 = _mm256_castsi256_si128(
            _mm256_permutevar8x32_epi32(_mm256_castpd_si256(gt), pick));
        __m128i a = _mm_loadu_si128(reinterpret_cast<const __m128i*>(arg + i));
        a = _mm_blendv_epi8(a, idxv, m32);
        _mm_storeu_si128(reinterpret_cast<__m128i*>(arg + i), a);
    }
    for (; i < n; ++i) {
        if (vals[i] > best[i]) {
            best[i] = vals[i];
            arg[i] = idx;
        }
    }
}

void reciprocal_accumulate_impl(double* acc, const double* num, const double* den,
                                double den_add, size_t n) {
    size_t i = 0;
    __m256d addv = _mm256_set1_pd(den_add);
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_add_pd(_mm256_loadu_pd(den + i), addv);
        __m256d q = _mm256_div_pd(_mm256_loadu_pd(num + i), d);
        _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), q));
    }
    for (; i < n; ++i) {
        double d = den[i] + den_add;
        double q = num[i] / d;
        acc[i] = acc[i] + q;
    }
}

void se_map_impl(double* se, const double* sinr_sum, double inv_nch,
                 double sinr_min_lin, double att, double se_max, size_t n) {
    size_t i = 0;
    const __m256d invv = _mm256_set1_pd(inv_nch);
    const __m256d minv = _mm256_set1_pd(sinr_min_lin);
    const __m256d attv = _mm256_set1_pd(att);
    const __m256d maxv = _mm256_set1_pd(se_max);
    const __m256d one = _mm256_set1_pd(1.0);
    for (; i + 4 <= n; i += 4) {
        __m256d s = _mm256_mul_pd(_mm256_loadu_pd(sinr_sum + i), invv);
        __m256d v = _mm256_mul_pd(attv, log2_poly_pd(_mm256_add_pd(one, s)));
        v = _mm256_min_pd(v, maxv);
        __m256d drop = _mm256_cmp_pd(s, minv, _CMP_LE_OQ);
        _mm256_storeu_pd(se + i, _mm256_andnot_pd(drop, v));
    }
    for (; i < n; ++i) {
        double s = sinr_sum[i] * inv_nch;
        double v = att * log2_poly(1.0 + s);
        v = v < se_max ? v : se_max;
        se[i] = s <= sinr_min_lin ? 0.0 : v;
    }
}

const Ops kAvx2Ops = {
    "avx2",
    &scale_impl,
    &axpy_impl,
    &argmax_update_impl,
    &reciprocal_accumulate_impl,
    &se_map_impl,
};

} // namespace

const Ops* avx2_ops_impl() { return &kAvx2Ops; }

} // namespace scnplan::kernels

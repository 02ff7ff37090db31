// AVX2+FMA variants of the row kernels. Compiled with -mavx2 -mfma and
// selected at runtime only when the CPU reports both features, so the
// rest of the binary stays runnable on older x86-64.

#if defined(__x86_64__) || defined(_M_X64) || defined(__i386__)

#include "biswarm/kernels.hpp"

#include <immintrin.h>

namespace biswarm::kernels {

namespace {

inline double hsum(__m256d x) {
    const __m128d lo = _mm256_castpd256_pd128(x);
    const __m128d hi = _mm256_extractf128_pd(x, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void accum_means_avx2(const double* v, const double* pres, const double* sel,
                      std::size_t n, double* row_sum, double* row_cnt,
                      double* col_sum, double* col_cnt) {
    __m256d vs = _mm256_setzero_pd();
    __m256d vc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d m = _mm256_mul_pd(_mm256_loadu_pd(pres + j), _mm256_loadu_pd(sel + j));
        const __m256d mv = _mm256_mul_pd(m, _mm256_loadu_pd(v + j));
        vs = _mm256_add_pd(vs, mv);
        vc = _mm256_add_pd(vc, m);
        _mm256_storeu_pd(col_sum + j, _mm256_add_pd(_mm256_loadu_pd(col_sum + j), mv));
        _mm256_storeu_pd(col_cnt + j, _mm256_add_pd(_mm256_loadu_pd(col_cnt + j), m));
    }
    double s = hsum(vs), c = hsum(vc);
    for (; j < n; ++j) {
        const double m = pres[j] * sel[j];
        s += m * v[j];
        c += m;
        col_sum[j] += m * v[j];
        col_cnt[j] += m;
    }
    *row_sum += s;
    *row_cnt += c;
}

void accum_residue_avx2(const double* v, const double* pres, const double* sel,
                        const double* cmadj, double rm, std::size_t n,
                        double* sq_sum, double* var_sum) {
    const __m256d vrm = _mm256_set1_pd(rm);
    __m256d vsq = _mm256_setzero_pd();
    __m256d vvar = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d m = _mm256_mul_pd(_mm256_loadu_pd(pres + j), _mm256_loadu_pd(sel + j));
        const __m256d dv = _mm256_sub_pd(_mm256_loadu_pd(v + j), vrm);
        const __m256d d = _mm256_sub_pd(dv, _mm256_loadu_pd(cmadj + j));
        vsq = _mm256_fmadd_pd(_mm256_mul_pd(m, d), d, vsq);
        vvar = _mm256_fmadd_pd(_mm256_mul_pd(m, dv), dv, vvar);
    }
    double sq = hsum(vsq), var = hsum(vvar);
    for (; j < n; ++j) {
        const double m = pres[j] * sel[j];
        const double dv = v[j] - rm;
        const double d = dv - cmadj[j];
        sq += m * d * d;
        var += m * dv * dv;
    }
    *sq_sum += sq;
    *var_sum += var;
}

void accum_residue_cols_avx2(const double* v, const double* pres, const double* sel,
                             const double* cmadj, double rm, std::size_t n,
                             double* col_sq) {
    const __m256d vrm = _mm256_set1_pd(rm);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d m = _mm256_mul_pd(_mm256_loadu_pd(pres + j), _mm256_loadu_pd(sel + j));
        const __m256d d = _mm256_sub_pd(_mm256_sub_pd(_mm256_loadu_pd(v + j), vrm),
                                        _mm256_loadu_pd(cmadj + j));
        const __m256d acc = _mm256_fmadd_pd(_mm256_mul_pd(m, d), d, _mm256_loadu_pd(col_sq + j));
        _mm256_storeu_pd(col_sq + j, acc);
    }
    for (; j < n; ++j) {
        const double m = pres[j] * sel[j];
        const double d = v[j] - rm - cmadj[j];
        col_sq[j] += m * d * d;
    }
}

void row_sum_count_avx2(const double* v, const double* pres, const double* sel,
                        std::size_t n, double* sum, double* cnt) {
    __m256d vs = _mm256_setzero_pd();
    __m256d vc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d m = _mm256_mul_pd(_mm256_loadu_pd(pres + j), _mm256_loadu_pd(sel + j));
        vs = _mm256_fmadd_pd(m, _mm256_loadu_pd(v + j), vs);
        vc = _mm256_add_pd(vc, m);
    }
    double s = hsum(vs), c = hsum(vc);
    for (; j < n; ++j) {
        const double m = pres[j] * sel[j];
        s += m * v[j];
        c += m;
    }
    *sum = s;
    *cnt = c;
}

double row_residue_avx2(const double* v, const double* pres, const double* sel,
                        const double* cmadj, double rm, std::size_t n) {
    const __m256d vrm = _mm256_set1_pd(rm);
    __m256d vsq = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d m = _mm256_mul_pd(_mm256_loadu_pd(pres + j), _mm256_loadu_pd(sel + j));
        const __m256d d = _mm256_sub_pd(_mm256_sub_pd(_mm256_loadu_pd(v + j), vrm),
                                        _mm256_loadu_pd(cmadj + j));
        vsq = _mm256_fmadd_pd(_mm256_mul_pd(m, d), d, vsq);
    }
    double sq = hsum(vsq);
    for (; j < n; ++j) {
        const double m = pres[j] * sel[j];
        const double d = v[j] - rm - cmadj[j];
        sq += m * d * d;
    }
    return sq;
}

} // namespace

const Ops* avx2() {
#if defined(__GNUC__) || defined(__clang__)
    if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma")) {
        return nullptr;
    }
#endif
    static const Ops ops{
        "avx2",
        accum_means_avx2,
        accum_residue_avx2,
        accum_residue_cols_avx2,
        row_sum_count_avx2,
        row_residue_avx2,
    };
    return &ops;
}

} // namespace biswarm::kernels

#endif

// NEON variants of the row kernels for aarch64, where 128-bit NEON is
// baseline and needs no runtime feature check.

#if defined(__aarch64__) || defined(_M_ARM64)

#include "biswarm/kernels.hpp"

#include <arm_neon.h>

namespace biswarm::kernels {

namespace {

inline double hsum(float64x2_t x) { return vgetq_lane_f64(x, 0) + vgetq_lane_f64(x, 1); }

void accum_means_neon(const double* v, const double* pres, const double* sel,
                      std::size_t n, double* row_sum, double* row_cnt,
                      double* col_sum, double* col_cnt) {
    float64x2_t vs = vdupq_n_f64(0.0);
    float64x2_t vc = vdupq_n_f64(0.0);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        const float64x2_t m = vmulq_f64(vld1q_f64(pres + j), vld1q_f64(sel + j));
        const float64x2_t mv = vmulq_f64(m, vld1q_f64(v + j));
        vs = vaddq_f64(vs, mv);
        vc = vaddq_f64(vc, m);
        vst1q_f64(col_sum + j, vaddq_f64(vld1q_f64(col_sum + j), mv));
        vst1q_f64(col_cnt + j, vaddq_f64(vld1q_f64(col_cnt + j), m));
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

void accum_residue_neon(const double* v, const double* pres, const double* sel,
                        const double* cmadj, double rm, std::size_t n,
                        double* sq_sum, double* var_sum) {
    const float64x2_t vrm = vdupq_n_f64(rm);
    float64x2_t vsq = vdupq_n_f64(0.0);
    float64x2_t vvar = vdupq_n_f64(0.0);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        const float64x2_t m = vmulq_f64(vld1q_f64(pres + j), vld1q_f64(sel + j));
        const float64x2_t dv = vsubq_f64(vld1q_f64(v + j), vrm);
        const float64x2_t d = vsubq_f64(dv, vld1q_f64(cmadj + j));
        vsq = vfmaq_f64(vsq, vmulq_f64(m, d), d);
        vvar = vfmaq_f64(vvar, vmulq_f64(m, dv), dv);
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

void accum_residue_cols_neon(const double* v, const double* pres, const double* sel,
                             const double* cmadj, double rm, std::size_t n,
                             double* col_sq) {
    const float64x2_t vrm = vdupq_n_f64(rm);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        const float64x2_t m = vmulq_f64(vld1q_f64(pres + j), vld1q_f64(sel + j));
        const float64x2_t d = vsubq_f64(vsubq_f64(vld1q_f64(v + j), vrm), vld1q_f64(cmadj + j));
        vst1q_f64(col_sq + j, vfmaq_f64(vld1q_f64(col_sq + j), vmulq_f64(m, d), d));
    }
    for (; j < n; ++j) {
        const double m = pres[j] * sel[j];
        const double d = v[j] - rm - cmadj[j];
        col_sq[j] += m * d * d;
    }
}

void row_sum_count_neon(const double* v, const double* pres, const double* sel,
                        std::size_t n, double* sum, double* cnt) {
    float64x2_t vs = vdupq_n_f64(0.0);
    float64x2_t vc = vdupq_n_f64(0.0);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        const float64x2_t m = vmulq_f64(vld1q_f64(pres + j), vld1q_f64(sel + j));
        vs = vfmaq_f64(vs, m, vld1q_f64(v + j));
        vc = vaddq_f64(vc, m);
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

double row_residue_neon(const double* v, const double* pres, const double* sel,
                        const double* cmadj, double rm, std::size_t n) {
    const float64x2_t vrm = vdupq_n_f64(rm);
    float64x2_t vsq = vdupq_n_f64(0.0);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        const float64x2_t m = vmulq_f64(vld1q_f64(pres + j), vld1q_f64(sel + j));
        const float64x2_t d = vsubq_f64(vsubq_f64(vld1q_f64(v + j), vrm), vld1q_f64(cmadj + j));
        vsq = vfmaq_f64(vsq, vmulq_f64(m, d), d);
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

const Ops* neon() {
    static const Ops ops{
        "neon",
        accum_means_neon,
        accum_residue_neon,
        accum_residue_cols_neon,
        row_sum_count_neon,
        row_residue_neon,
    };
    return &ops;
}

} // namespace biswarm::kernels

#endif

#include "biswarm/kernels.hpp"

namespace biswarm::kernels {

namespace {

void accum_means_scalar(const double* v, const double* pres, const double* sel,
                        std::size_t n, double* row_sum, double* row_cnt,
                        double* col_sum, double* col_cnt) {
    double s = 0.0, c = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double m = pres[j] * sel[j];
        s += m * v[j];
        c += m;
        col_sum[j] += m * v[j];
        col_cnt[j] += m;
    }
    *row_sum += s;
    *row_cnt += c;
}

void accum_residue_scalar(const double* v, const double* pres, const double* sel,
                          const double* cmadj, double rm, std::size_t n,
                          double* sq_sum, double* var_sum) {
    double sq = 0.0, var = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double m = pres[j] * sel[j];
        const double dv = v[j] - rm;
        const double d = dv - cmadj[j];
        sq += m * d * d;
        var += m * dv * dv;
    }
    *sq_sum += sq;
    *var_sum += var;
}

void accum_residue_cols_scalar(const double* v, const double* pres, const double* sel,
                               const double* cmadj, double rm, std::size_t n,
                               double* col_sq) {
    for (std::size_t j = 0; j < n; ++j) {
        const double m = pres[j] * sel[j];
        const double d = v[j] - rm - cmadj[j];
        col_sq[j] += m * d * d;
    }
}

void row_sum_count_scalar(const double* v, const double* pres, const double* sel,
                          std::size_t n, double* sum, double* cnt) {
    double s = 0.0, c = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double m = pres[j] * sel[j];
        s += m * v[j];
        c += m;
    }
    *sum = s;
    *cnt = c;
}

double row_residue_scalar(const double* v, const double* pres, const double* sel,
                          const double* cmadj, double rm, std::size_t n) {
    double sq = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double m = pres[j] * sel[j];
        const double d = v[j] - rm - cmadj[j];
        sq += m * d * d;
    }
    return sq;
}

} // namespace

const Ops& scalar() {
    static const Ops ops{
        "scalar",
        accum_means_scalar,
        accum_residue_scalar,
        accum_residue_cols_scalar,
        row_sum_count_scalar,
        row_residue_scalar,
    };
    return ops;
}

} // namespace biswarm::kernels

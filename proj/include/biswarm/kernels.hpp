#pragma once

#include <cstddef>

namespace biswarm::kernels {

// Row-oriented accumulation kernels over one matrix row of width n.
//
// All kernels take the row's values `v`, its presence mask `pres`
// (1.0 = observed, 0.0 = missing) and a condition-selection mask `sel`
// (1.0 = condition in J). Cells only contribute where pres*sel == 1, so
// missing and unselected cells add exactly zero to every accumulator.
// `cmadj` is the per-column adjusted mean, col_mean[j] - grand_mean, and
// `rm` the row mean, so the residue term is v[j] - rm - cmadj[j].
struct Ops {
    const char* name;

    // Pass 1 of the stats sweep: row sum/count plus column accumulators.
    void (*accum_means)(const double* v, const double* pres, const double* sel,
                        std::size_t n, double* row_sum, double* row_cnt,
                        double* col_sum, double* col_cnt);

    // Pass 2: squared residue and row-variance sums for one row.
    void (*accum_residue)(const double* v, const double* pres, const double* sel,
                          const double* cmadj, double rm, std::size_t n,
                          double* sq_sum, double* var_sum);

    // Per-column squared residue accumulation (column contributions).
    void (*accum_residue_cols)(const double* v, const double* pres, const double* sel,
                               const double* cmadj, double rm, std::size_t n,
                               double* col_sq);

    // Masked sum and present-cell count of one row.
    void (*row_sum_count)(const double* v, const double* pres, const double* sel,
                          std::size_t n, double* sum, double* cnt);

    // Squared residue sum of one row (gene contributions).
    double (*row_residue)(const double* v, const double* pres, const double* sel,
                          const double* cmadj, double rm, std::size_t n);
};

/// Portable reference implementation; the definition the SIMD variants
/// are equivalence-tested against.
const Ops& scalar();

/// Best implementation for the running CPU. The BISWARM_KERNEL environment
/// variable ("scalar", "avx2", "neon") pins the choice; unknown or
/// unsupported names fall back to scalar. The selection is made once per
/// process.
const Ops& active();

/// The selection rule behind active(), applied to an explicit name
/// (nullptr or "" = pick for the CPU). Unsupported names yield scalar.
const Ops& select(const char* forced_name);

#if defined(__x86_64__) || defined(_M_X64) || defined(__i386__)
/// AVX2+FMA variant, or nullptr when the CPU lacks support.
const Ops* avx2();
#endif

#if defined(__aarch64__) || defined(_M_ARM64)
/// NEON variant (baseline on aarch64).
const Ops* neon();
#endif

} // namespace biswarm::kernels

#include "biswarm/stats.hpp"

#include "biswarm/errors.hpp"
#include "biswarm/kernels.hpp"

#include <limits>

namespace biswarm {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void compute_stats(const ExpressionMatrix& matrix, const Bicluster& bicluster,
                   SubmatrixStats& out) {
    const std::size_t n = matrix.n_genes();
    const std::size_t m = matrix.n_conditions();
    if (bicluster.gene_mask.size() != n || bicluster.cond_mask.size() != m) {
        throw DimensionError("bicluster masks do not match matrix dimensions");
    }

    out.genes.clear();
    for (std::size_t i = 0; i < n; ++i) {
        if (bicluster.gene_mask[i]) out.genes.push_back(i);
    }
    out.cond_sel.assign(m, 0.0);
    out.n_cols = 0;
    for (std::size_t j = 0; j < m; ++j) {
        if (bicluster.cond_mask[j]) {
            out.cond_sel[j] = 1.0;
            ++out.n_cols;
        }
    }
    if (out.genes.empty() || out.n_cols == 0) {
        throw EmptySelectionError("bicluster selects no gene or no condition");
    }

    const auto& K = kernels::active();
    out.row_means.assign(out.genes.size(), 0.0);
    out.col_means.assign(m, 0.0);
    out.col_counts.assign(m, 0.0);
    out.cmadj.assign(m, 0.0);

    double grand_sum = 0.0;
    double volume = 0.0;
    for (std::size_t k = 0; k < out.genes.size(); ++k) {
        const std::size_t i = out.genes[k];
        double rs = 0.0, rc = 0.0;
        K.accum_means(matrix.row_values(i), matrix.row_present(i), out.cond_sel.data(), m,
                      &rs, &rc, out.col_means.data(), out.col_counts.data());
        out.row_means[k] = rc > 0.0 ? rs / rc : 0.0;
        grand_sum += rs;
        volume += rc;
    }
    if (volume == 0.0) {
        throw DegenerateSubmatrixError("submatrix has no present cell");
    }
    out.volume = static_cast<std::size_t>(volume);
    out.grand_mean = grand_sum / volume;
    for (std::size_t j = 0; j < m; ++j) {
        if (out.cond_sel[j] != 0.0) {
            out.col_means[j] = out.col_counts[j] > 0.0 ? out.col_means[j] / out.col_counts[j] : 0.0;
            out.cmadj[j] = out.col_means[j] - out.grand_mean;
        } else {
            out.col_means[j] = 0.0;
        }
    }

    double sq = 0.0, var = 0.0;
    for (std::size_t k = 0; k < out.genes.size(); ++k) {
        const std::size_t i = out.genes[k];
        K.accum_residue(matrix.row_values(i), matrix.row_present(i), out.cond_sel.data(),
                        out.cmadj.data(), out.row_means[k], m, &sq, &var);
    }
    out.residue = sq / volume;
    out.row_variance = var / volume;
}

SubmatrixStats compute_stats(const ExpressionMatrix& matrix, const Bicluster& bicluster) {
    SubmatrixStats stats;
    compute_stats(matrix, bicluster, stats);
    return stats;
}

double gene_contribution(const ExpressionMatrix& matrix, const SubmatrixStats& stats,
                         std::size_t gene) {
    const auto& K = kernels::active();
    const std::size_t m = matrix.n_conditions();
    double rs = 0.0, rc = 0.0;
    K.row_sum_count(matrix.row_values(gene), matrix.row_present(gene), stats.cond_sel.data(), m,
                    &rs, &rc);
    if (rc == 0.0) {
        return kInf;
    }
    const double rm = rs / rc;
    const double sq = K.row_residue(matrix.row_values(gene), matrix.row_present(gene),
                                    stats.cond_sel.data(), stats.cmadj.data(), rm, m);
    return sq / rc;
}

void all_gene_contributions(const ExpressionMatrix& matrix, const SubmatrixStats& stats,
                            std::vector<double>& out) {
    const std::size_t n = matrix.n_genes();
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = gene_contribution(matrix, stats, i);
    }
}

void all_column_contributions(const ExpressionMatrix& matrix, const SubmatrixStats& stats,
                              std::vector<double>& out) {
    const auto& K = kernels::active();
    const std::size_t m = matrix.n_conditions();
    std::vector<double> ones(m, 1.0);
    std::vector<double> col_sum(m, 0.0), col_cnt(m, 0.0), col_sq(m, 0.0), cmadj(m, 0.0);

    for (std::size_t k = 0; k < stats.genes.size(); ++k) {
        const std::size_t i = stats.genes[k];
        double rs = 0.0, rc = 0.0;
        K.accum_means(matrix.row_values(i), matrix.row_present(i), ones.data(), m,
                      &rs, &rc, col_sum.data(), col_cnt.data());
    }
    for (std::size_t j = 0; j < m; ++j) {
        const double mean = col_cnt[j] > 0.0 ? col_sum[j] / col_cnt[j] : 0.0;
        cmadj[j] = mean - stats.grand_mean;
    }
    for (std::size_t k = 0; k < stats.genes.size(); ++k) {
        const std::size_t i = stats.genes[k];
        K.accum_residue_cols(matrix.row_values(i), matrix.row_present(i), ones.data(),
                             cmadj.data(), stats.row_means[k], m, col_sq.data());
    }
    out.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        out[j] = col_cnt[j] > 0.0 ? col_sq[j] / col_cnt[j] : kInf;
    }
}

double residue_contribution_row(const ExpressionMatrix& matrix, const Bicluster& bicluster,
                                std::size_t gene) {
    if (gene >= matrix.n_genes()) {
        throw DimensionError("gene index out of range");
    }
    const SubmatrixStats stats = compute_stats(matrix, bicluster);
    return gene_contribution(matrix, stats, gene);
}

double residue_contribution_col(const ExpressionMatrix& matrix, const Bicluster& bicluster,
                                std::size_t condition) {
    if (condition >= matrix.n_conditions()) {
        throw DimensionError("condition index out of range");
    }
    const SubmatrixStats stats = compute_stats(matrix, bicluster);
    std::vector<double> contributions;
    all_column_contributions(matrix, stats, contributions);
    return contributions[condition];
}

} // namespace biswarm

#pragma once

#include "biswarm/bicluster.hpp"
#include "biswarm/expression_matrix.hpp"

#include <cstddef>
#include <vector>

namespace biswarm {

/// Means, mean squared residue and row variance of one bicluster's
/// submatrix. Every mean uses its own present-cell count as denominator,
/// missing cells contribute no residue terms, and the residue/variance
/// denominator is the submatrix volume (count of present cells), so a
/// fully observed submatrix reduces to the plain |I||J| formulas.
struct SubmatrixStats {
    double residue = 0.0;
    double row_variance = 0.0;
    double grand_mean = 0.0;
    std::size_t volume = 0;

    std::vector<std::size_t> genes;   ///< selected gene indices, ascending
    std::vector<double> row_means;    ///< parallel to genes
    std::vector<double> col_means;    ///< full width M; 0 at unselected conditions
    std::vector<double> col_counts;   ///< present cells per selected column over I
    std::vector<double> cond_sel;     ///< full width M; 1.0 where condition selected
    std::vector<double> cmadj;        ///< col_means - grand_mean at selected columns, else 0

    std::size_t n_rows() const { return genes.size(); }
    std::size_t n_cols = 0;
};

/// Evaluate the submatrix statistics of `bicluster` in place, reusing the
/// output object's buffers. Throws EmptySelectionError when either mask is
/// empty and DegenerateSubmatrixError when the submatrix has no present cell.
void compute_stats(const ExpressionMatrix& matrix, const Bicluster& bicluster,
                   SubmatrixStats& out);

SubmatrixStats compute_stats(const ExpressionMatrix& matrix, const Bicluster& bicluster);

/// Mean squared residue of one gene against the bicluster's column means,
/// with the gene's own mean over J. For genes inside I this is the
/// deletion-phase score; for genes outside I the addition-phase score.
/// Returns +infinity when the gene has no present cell over J.
double gene_contribution(const ExpressionMatrix& matrix, const SubmatrixStats& stats,
                         std::size_t gene);

/// gene_contribution for every gene of the matrix, in one sweep.
void all_gene_contributions(const ExpressionMatrix& matrix, const SubmatrixStats& stats,
                            std::vector<double>& out);

/// Column contributions for every column of the matrix: each column's mean
/// is taken over the bicluster's gene set, so columns inside J carry their
/// deletion-phase score and columns outside J their addition-phase score.
/// Columns with no present cell over I get +infinity.
void all_column_contributions(const ExpressionMatrix& matrix, const SubmatrixStats& stats,
                              std::vector<double>& out);

/// Spec-level conveniences that recompute the bicluster stats internally.
double residue_contribution_row(const ExpressionMatrix& matrix, const Bicluster& bicluster,
                                std::size_t gene);
double residue_contribution_col(const ExpressionMatrix& matrix, const Bicluster& bicluster,
                                std::size_t condition);

} // namespace biswarm

#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

namespace biswarm {

/// N x M log-expression matrix with an optional missing-value mask.
/// Values are stored row-major; missing cells hold 0.0 and are flagged
/// absent in the presence mask, which is kept as 0.0/1.0 doubles so the
/// stats kernels can fold it into their accumulations branch-free.
/// Immutable after construction and shareable across threads.
class ExpressionMatrix {
public:
    ExpressionMatrix(std::vector<double> values, std::vector<double> present,
                     std::size_t n_genes, std::size_t n_conditions,
                     std::vector<std::string> gene_labels,
                     std::vector<std::string> condition_labels);

    /// Parse a tab-separated matrix: header row of condition labels
    /// (with or without a corner label), one leading gene-label column,
    /// cells equal to missing_marker recorded as absent.
    static ExpressionMatrix load_tsv(std::istream& in, const std::string& missing_marker = "-1");
    static ExpressionMatrix load_tsv_file(const std::filesystem::path& path,
                                          const std::string& missing_marker = "-1");

    /// Build from a dense grid with every cell present. Rows must be rectangular.
    static ExpressionMatrix from_dense(const std::vector<std::vector<double>>& grid);

    std::size_t n_genes() const { return n_genes_; }
    std::size_t n_conditions() const { return n_conditions_; }

    double value(std::size_t gene, std::size_t cond) const {
        return values_[gene * n_conditions_ + cond];
    }
    bool is_present(std::size_t gene, std::size_t cond) const {
        return present_[gene * n_conditions_ + cond] != 0.0;
    }

    const double* row_values(std::size_t gene) const { return values_.data() + gene * n_conditions_; }
    const double* row_present(std::size_t gene) const { return present_.data() + gene * n_conditions_; }

    const std::vector<std::string>& gene_labels() const { return gene_labels_; }
    const std::vector<std::string>& condition_labels() const { return condition_labels_; }

private:
    std::vector<double> values_;
    std::vector<double> present_;
    std::size_t n_genes_ = 0;
    std::size_t n_conditions_ = 0;
    std::vector<std::string> gene_labels_;
    std::vector<std::string> condition_labels_;
};

} // namespace biswarm

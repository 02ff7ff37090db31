#pragma once

#include "biswarm/expression_matrix.hpp"

#include <cstdint>
#include <vector>

namespace biswarm {

/// Binary encoding of a bicluster: one mask over genes (I) and one over
/// conditions (J). A bicluster is evaluable only when both masks have at
/// least one set bit.
struct Bicluster {
    std::vector<std::uint8_t> gene_mask;
    std::vector<std::uint8_t> cond_mask;

    Bicluster() = default;
    Bicluster(std::size_t n_genes, std::size_t n_conditions)
        : gene_mask(n_genes, 0), cond_mask(n_conditions, 0) {}

    static Bicluster from_indices(std::size_t n_genes, std::size_t n_conditions,
                                  const std::vector<std::size_t>& genes,
                                  const std::vector<std::size_t>& conditions);

    /// Bicluster spanning the whole matrix.
    static Bicluster full(std::size_t n_genes, std::size_t n_conditions);

    std::size_t n_genes_selected() const;
    std::size_t n_conditions_selected() const;
    bool evaluable() const { return n_genes_selected() > 0 && n_conditions_selected() > 0; }

    std::vector<std::size_t> gene_indices() const;
    std::vector<std::size_t> cond_indices() const;

    bool operator==(const Bicluster&) const = default;
};

/// Cell overlap between two biclusters: |cells(a) & cells(b)| divided by
/// the smaller cell count, in [0,1]. A bicluster nested inside another
/// scores 1. Non-evaluable operands score 0.
double overlap(const Bicluster& a, const Bicluster& b);

struct Coverage {
    double gene_pct = 0.0;
    double cond_pct = 0.0;
    double cell_pct = 0.0;
};

/// Fraction of genes, conditions and matrix cells touched by at least one
/// bicluster in the set, as percentages.
Coverage coverage(const ExpressionMatrix& matrix, const std::vector<Bicluster>& set);

} // namespace biswarm

#include "biswarm/bicluster.hpp"

#include "biswarm/errors.hpp"

#include <algorithm>
#include <numeric>

namespace biswarm {

namespace {

std::size_t count_set(const std::vector<std::uint8_t>& mask) {
    std::size_t n = 0;
    for (const auto b : mask) n += b != 0;
    return n;
}

std::vector<std::size_t> set_indices(const std::vector<std::uint8_t>& mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask[i]) idx.push_back(i);
    }
    return idx;
}

std::size_t intersection_size(const std::vector<std::uint8_t>& a,
                              const std::vector<std::uint8_t>& b) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) n += (a[i] & b[i]) != 0;
    return n;
}

} // namespace

Bicluster Bicluster::from_indices(std::size_t n_genes, std::size_t n_conditions,
                                  const std::vector<std::size_t>& genes,
                                  const std::vector<std::size_t>& conditions) {
    Bicluster b(n_genes, n_conditions);
    for (const auto g : genes) {
        if (g >= n_genes) {
            throw DimensionError("gene index " + std::to_string(g) + " out of range for " +
                                 std::to_string(n_genes) + " genes");
        }
        b.gene_mask[g] = 1;
    }
    for (const auto c : conditions) {
        if (c >= n_conditions) {
            throw DimensionError("condition index " + std::to_string(c) + " out of range for " +
                                 std::to_string(n_conditions) + " conditions");
        }
        b.cond_mask[c] = 1;
    }
    return b;
}

Bicluster Bicluster::full(std::size_t n_genes, std::size_t n_conditions) {
    Bicluster b(n_genes, n_conditions);
    std::fill(b.gene_mask.begin(), b.gene_mask.end(), std::uint8_t{1});
    std::fill(b.cond_mask.begin(), b.cond_mask.end(), std::uint8_t{1});
    return b;
}

std::size_t Bicluster::n_genes_selected() const { return count_set(gene_mask); }
std::size_t Bicluster::n_conditions_selected() const { return count_set(cond_mask); }

std::vector<std::size_t> Bicluster::gene_indices() const { return set_indices(gene_mask); }
std::vector<std::size_t> Bicluster::cond_indices() const { return set_indices(cond_mask); }

double overlap(const Bicluster& a, const Bicluster& b) {
    if (a.gene_mask.size() != b.gene_mask.size() || a.cond_mask.size() != b.cond_mask.size()) {
        throw DimensionError("overlap requires biclusters over the same matrix dimensions");
    }
    const std::size_t cells_a = a.n_genes_selected() * a.n_conditions_selected();
    const std::size_t cells_b = b.n_genes_selected() * b.n_conditions_selected();
    if (cells_a == 0 || cells_b == 0) {
        return 0.0;
    }
    const std::size_t common =
        intersection_size(a.gene_mask, b.gene_mask) * intersection_size(a.cond_mask, b.cond_mask);
    return static_cast<double>(common) / static_cast<double>(std::min(cells_a, cells_b));
}

Coverage coverage(const ExpressionMatrix& matrix, const std::vector<Bicluster>& set) {
    const std::size_t n = matrix.n_genes();
    const std::size_t m = matrix.n_conditions();
    std::vector<std::uint8_t> gene_hit(n, 0), cond_hit(m, 0), cell_hit(n * m, 0);
    for (const auto& b : set) {
        if (b.gene_mask.size() != n || b.cond_mask.size() != m) {
            throw DimensionError("coverage: bicluster dimensions do not match the matrix");
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (!b.gene_mask[i]) continue;
            gene_hit[i] = 1;
            std::uint8_t* row = cell_hit.data() + i * m;
            for (std::size_t j = 0; j < m; ++j) {
                row[j] |= b.cond_mask[j];
            }
        }
        for (std::size_t j = 0; j < m; ++j) cond_hit[j] |= b.cond_mask[j];
    }
    const auto pct = [](std::size_t hits, std::size_t total) {
        return 100.0 * static_cast<double>(hits) / static_cast<double>(total);
    };
    Coverage cov;
    cov.gene_pct = pct(std::accumulate(gene_hit.begin(), gene_hit.end(), std::size_t{0}), n);
    cov.cond_pct = pct(std::accumulate(cond_hit.begin(), cond_hit.end(), std::size_t{0}), m);
    cov.cell_pct = pct(std::accumulate(cell_hit.begin(), cell_hit.end(), std::size_t{0}), n * m);
    return cov;
}

} // namespace biswarm

#include "biswarm/local_search.hpp"

#include "biswarm/errors.hpp"
#include "biswarm/stats.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace biswarm {

namespace {

// Lowest-contribution member, lowest index on ties.
std::size_t best_member(const std::vector<std::size_t>& members,
                        const std::vector<double>& contribution) {
    std::size_t best = members.front();
    for (const auto i : members) {
        if (contribution[i] < contribution[best]) {
            best = i;
        }
    }
    return best;
}

} // namespace

void LocalSearchConfig::validate() const {
    if (delta <= 0.0) {
        throw ConfigError("local search requires delta > 0");
    }
    if (alpha <= 1.0) {
        throw ConfigError("local search requires alpha > 1");
    }
    if (max_iterations == 0) {
        throw ConfigError("local search requires max_iterations >= 1");
    }
}

Bicluster multiple_node_deletion(const ExpressionMatrix& matrix, const Bicluster& bicluster,
                                 const LocalSearchConfig& config) {
    config.validate();
    Bicluster work = bicluster;
    SubmatrixStats stats;
    std::vector<double> contribution;

    for (std::size_t iter = 0; iter < config.max_iterations; ++iter) {
        compute_stats(matrix, work, stats);
        if (stats.residue <= config.delta) {
            break;
        }
        bool removed = false;

        // Gene pass against the current stats.
        {
            contribution.assign(matrix.n_genes(), 0.0);
            for (const auto i : stats.genes) {
                contribution[i] = gene_contribution(matrix, stats, i);
            }
            const double threshold = config.alpha * stats.residue;
            std::vector<std::size_t> victims;
            for (const auto i : stats.genes) {
                if (contribution[i] > threshold) {
                    victims.push_back(i);
                }
            }
            if (victims.size() == stats.genes.size()) {
                const std::size_t keep = best_member(stats.genes, contribution);
                std::erase(victims, keep);
            }
            for (const auto i : victims) {
                work.gene_mask[i] = 0;
            }
            removed |= !victims.empty();
        }

        compute_stats(matrix, work, stats);

        // Condition pass against the recomputed stats.
        {
            all_column_contributions(matrix, stats, contribution);
            const double threshold = config.alpha * stats.residue;
            std::vector<std::size_t> members;
            std::vector<std::size_t> victims;
            for (std::size_t j = 0; j < matrix.n_conditions(); ++j) {
                if (work.cond_mask[j]) {
                    members.push_back(j);
                    if (contribution[j] > threshold) {
                        victims.push_back(j);
                    }
                }
            }
            if (victims.size() == members.size()) {
                const std::size_t keep = best_member(members, contribution);
                std::erase(victims, keep);
            }
            for (const auto j : victims) {
                work.cond_mask[j] = 0;
            }
            removed |= !victims.empty();
        }

        if (!removed) {
            break;
        }
    }
    return work;
}

Bicluster single_node_deletion(const ExpressionMatrix& matrix, const Bicluster& bicluster,
                               const LocalSearchConfig& config) {
    config.validate();
    Bicluster work = bicluster;
    SubmatrixStats stats;
    std::vector<double> col_contribution;

    compute_stats(matrix, work, stats);
    while (stats.residue > config.delta) {
        const std::size_t n_rows = stats.n_rows();
        const std::size_t n_cols = stats.n_cols;
        if (n_rows <= 1 && n_cols <= 1) {
            break;
        }

        double best_gene_value = -1.0;
        std::size_t best_gene = 0;
        if (n_rows > 1) {
            for (const auto i : stats.genes) {
                const double c = gene_contribution(matrix, stats, i);
                if (c > best_gene_value) {
                    best_gene_value = c;
                    best_gene = i;
                }
            }
        }

        double best_cond_value = -1.0;
        std::size_t best_cond = 0;
        if (n_cols > 1) {
            all_column_contributions(matrix, stats, col_contribution);
            for (std::size_t j = 0; j < matrix.n_conditions(); ++j) {
                if (work.cond_mask[j] && col_contribution[j] > best_cond_value) {
                    best_cond_value = col_contribution[j];
                    best_cond = j;
                }
            }
        }

        // Gene wins ties; strict > keeps the lowest index within each kind.
        if (n_rows > 1 && (n_cols <= 1 || best_gene_value >= best_cond_value)) {
            work.gene_mask[best_gene] = 0;
        } else {
            work.cond_mask[best_cond] = 0;
        }
        compute_stats(matrix, work, stats);
    }
    return work;
}

Bicluster multiple_node_addition(const ExpressionMatrix& matrix, const Bicluster& bicluster,
                                 const LocalSearchConfig& config) {
    config.validate();
    Bicluster work = bicluster;
    SubmatrixStats stats;
    std::vector<double> contribution;

    for (std::size_t iter = 0; iter < config.max_iterations; ++iter) {
        compute_stats(matrix, work, stats);
        bool added = false;

        // Conditions first, then genes, per the addition phase order.
        all_column_contributions(matrix, stats, contribution);
        for (std::size_t j = 0; j < matrix.n_conditions(); ++j) {
            if (!work.cond_mask[j] && contribution[j] <= stats.residue) {
                work.cond_mask[j] = 1;
                added = true;
            }
        }

        compute_stats(matrix, work, stats);

        all_gene_contributions(matrix, stats, contribution);
        for (std::size_t i = 0; i < matrix.n_genes(); ++i) {
            if (!work.gene_mask[i] && contribution[i] <= stats.residue) {
                work.gene_mask[i] = 1;
                added = true;
            }
        }

        if (!added) {
            break;
        }
    }
    return work;
}

Bicluster local_search(const ExpressionMatrix& matrix, const Bicluster& bicluster,
                       const LocalSearchConfig& config) {
    config.validate();
    if (config.phases == LocalSearchPhases::AdditionOnly) {
        return multiple_node_addition(matrix, bicluster, config);
    }
    Bicluster work = multiple_node_deletion(matrix, bicluster, config);
    work = single_node_deletion(matrix, work, config);
    return multiple_node_addition(matrix, work, config);
}

} // namespace biswarm

#pragma once

#include "biswarm/bicluster.hpp"
#include "biswarm/expression_matrix.hpp"

#include <cstddef>

namespace biswarm {

enum class LocalSearchPhases { Full3Phase, AdditionOnly };

struct LocalSearchConfig {
    double delta = 0.0;
    double alpha = 1.2;                 ///< multiple-deletion threshold factor, > 1
    std::size_t max_iterations = 500;   ///< safety cap on fixed-point loops
    LocalSearchPhases phases = LocalSearchPhases::Full3Phase;

    void validate() const;
};

/// Repeated batch removal of genes, then conditions, whose contribution
/// exceeds alpha times the current residue. Stops when a pass removes
/// nothing, the residue reaches delta, or the iteration cap. A pass that
/// would empty a dimension keeps the single lowest-contribution node.
Bicluster multiple_node_deletion(const ExpressionMatrix& matrix, const Bicluster& bicluster,
                                 const LocalSearchConfig& config);

/// Remove the single worst node (gene or condition) at a time until the
/// residue drops to delta or only one gene and one condition remain. Ties
/// prefer genes, then the lowest index. A 1x1 submatrix has residue 0, so
/// termination is guaranteed.
Bicluster single_node_deletion(const ExpressionMatrix& matrix, const Bicluster& bicluster,
                               const LocalSearchConfig& config);

/// Add every non-member condition, then gene, whose contribution does not
/// exceed the current residue; iterate to a fixed point under the cap.
Bicluster multiple_node_addition(const ExpressionMatrix& matrix, const Bicluster& bicluster,
                                 const LocalSearchConfig& config);

/// Full3Phase runs deletion, single deletion, then addition; AdditionOnly
/// runs just the addition phase.
Bicluster local_search(const ExpressionMatrix& matrix, const Bicluster& bicluster,
                       const LocalSearchConfig& config);

} // namespace biswarm

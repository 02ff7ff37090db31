#pragma once

#include "biswarm/bicluster.hpp"
#include "biswarm/expression_matrix.hpp"
#include "biswarm/stats.hpp"

#include <array>

namespace biswarm {

/// The four minimized objectives of a bicluster, plus the raw residue and
/// row variance they derive from. f1 and f2 reward many genes/conditions,
/// f3 is the residue normalized by delta and f4 penalizes flat biclusters.
/// feasible holds exactly when residue <= delta.
struct ObjectiveVector {
    double f1 = 0.0;            ///< N / |I|
    double f2 = 0.0;            ///< M / |J|
    double f3 = 0.0;            ///< residue / delta
    double f4 = 0.0;            ///< 1 / (row_variance + epsilon)
    double residue = 0.0;
    double row_variance = 0.0;
    bool feasible = false;

    std::array<double, 4> values() const { return {f1, f2, f3, f4}; }
};

inline constexpr double kDefaultEpsilonVar = 1e-9;

/// Evaluate all four objectives. Throws EmptySelectionError for
/// non-evaluable biclusters and DegenerateSubmatrixError when the
/// selection has no present cell.
ObjectiveVector evaluate(const ExpressionMatrix& matrix, const Bicluster& bicluster,
                         double delta, double epsilon_var = kDefaultEpsilonVar);

/// Same, reusing a stats buffer across calls.
ObjectiveVector evaluate(const ExpressionMatrix& matrix, const Bicluster& bicluster,
                         double delta, double epsilon_var, SubmatrixStats& scratch);

} // namespace biswarm

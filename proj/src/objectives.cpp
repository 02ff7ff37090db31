#include "biswarm/objectives.hpp"

namespace biswarm {

ObjectiveVector evaluate(const ExpressionMatrix& matrix, const Bicluster& bicluster,
                         double delta, double epsilon_var, SubmatrixStats& scratch) {
    compute_stats(matrix, bicluster, scratch);
    ObjectiveVector obj;
    obj.f1 = static_cast<double>(matrix.n_genes()) / static_cast<double>(scratch.n_rows());
    obj.f2 = static_cast<double>(matrix.n_conditions()) / static_cast<double>(scratch.n_cols);
    obj.f3 = scratch.residue / delta;
    obj.f4 = 1.0 / (scratch.row_variance + epsilon_var);
    obj.residue = scratch.residue;
    obj.row_variance = scratch.row_variance;
    obj.feasible = scratch.residue <= delta;
    return obj;
}

ObjectiveVector evaluate(const ExpressionMatrix& matrix, const Bicluster& bicluster,
                         double delta, double epsilon_var) {
    SubmatrixStats scratch;
    return evaluate(matrix, bicluster, delta, epsilon_var, scratch);
}

} // namespace biswarm

#include "biswarm/errors.hpp"
#include "biswarm/objectives.hpp"
#include "biswarm/stats.hpp"

#include "generators.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace biswarm;

TEST_SUITE("stats") {

TEST_CASE("2x2 hand-computed residue and row variance") {
    // rows (1,2) and (3,5): residue 1/16 per cell, variance (0.25+0.25+1+1)/4.
    const ExpressionMatrix m = gen::to_matrix({{1.0, 2.0}, {3.0, 5.0}});
    const SubmatrixStats s = compute_stats(m, Bicluster::full(2, 2));
    CHECK(s.residue == doctest::Approx(0.0625).epsilon(1e-12));
    CHECK(s.row_variance == doctest::Approx(0.625).epsilon(1e-12));
    CHECK(s.grand_mean == doctest::Approx(2.75).epsilon(1e-12));
    CHECK(s.volume == 4);
}

TEST_CASE("constant matrix has zero residue and variance") {
    const ExpressionMatrix m = gen::to_matrix({{7, 7, 7}, {7, 7, 7}, {7, 7, 7}});
    const SubmatrixStats s = compute_stats(m, Bicluster::full(3, 3));
    CHECK(s.residue == 0.0);
    CHECK(s.row_variance == 0.0);
}

TEST_CASE("residue and variance match the brute-force oracle on random submatrices") {
    Rng rng(101);
    for (int trial = 0; trial < 40; ++trial) {
        const bool with_missing = trial % 2 == 1;
        const oracle::Grid grid = gen::random_grid(rng, 10, 8, 0.0, 10.0,
                                                   with_missing ? 0.15 : 0.0);
        const ExpressionMatrix m = gen::to_matrix(grid);
        const auto rows = gen::random_subset(rng, 10);
        const auto cols = gen::random_subset(rng, 8);
        const oracle::Stats expected = oracle::stats(grid, rows, cols);
        if (expected.volume == 0) {
            continue;
        }
        const SubmatrixStats got =
            compute_stats(m, Bicluster::from_indices(10, 8, rows, cols));
        CHECK(got.residue == doctest::Approx(expected.residue).epsilon(1e-9));
        CHECK(got.row_variance == doctest::Approx(expected.row_variance).epsilon(1e-9));
        CHECK(got.grand_mean == doctest::Approx(expected.grand_mean).epsilon(1e-9));
        CHECK(got.volume == expected.volume);
    }
}

TEST_CASE("additive model has residue below 1e-9 on every submatrix") {
    Rng rng(202);
    for (int trial = 0; trial < 10; ++trial) {
        oracle::Grid grid(12, std::vector<std::optional<double>>(9));
        std::vector<double> a(12), b(9);
        for (auto& x : a) {
            x = 500.0 * rng.uniform01();
        }
        for (auto& x : b) {
            x = 100.0 * rng.uniform01();
        }
        for (std::size_t i = 0; i < 12; ++i) {
            for (std::size_t j = 0; j < 9; ++j) {
                grid[i][j] = a[i] + b[j];
            }
        }
        const ExpressionMatrix m = gen::to_matrix(grid);
        for (int k = 0; k < 5; ++k) {
            const auto rows = gen::random_subset(rng, 12);
            const auto cols = gen::random_subset(rng, 9);
            const SubmatrixStats s =
                compute_stats(m, Bicluster::from_indices(12, 9, rows, cols));
            CHECK(s.residue < 1e-9);
        }
    }
}

TEST_CASE("single-row and single-column submatrices have zero residue") {
    Rng rng(303);
    const oracle::Grid grid = gen::random_grid(rng, 6, 6, 0.0, 600.0);
    const ExpressionMatrix m = gen::to_matrix(grid);
    const SubmatrixStats row = compute_stats(m, Bicluster::from_indices(6, 6, {2}, {0, 1, 2, 3}));
    CHECK(row.residue == doctest::Approx(0.0).epsilon(1e-15));
    const SubmatrixStats col = compute_stats(m, Bicluster::from_indices(6, 6, {0, 1, 4}, {5}));
    CHECK(col.residue == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("missing cells are excluded from every mean") {
    // Second row's second cell missing: row mean over present = 3.
    oracle::Grid grid = {{1.0, 2.0}, {3.0, std::nullopt}};
    const ExpressionMatrix m = gen::to_matrix(grid);
    const SubmatrixStats s = compute_stats(m, Bicluster::full(2, 2));
    const oracle::Stats expected = oracle::stats(grid, {0, 1}, {0, 1});
    CHECK(s.volume == 3);
    CHECK(s.residue == doctest::Approx(expected.residue).epsilon(1e-12));
    CHECK(s.row_variance == doctest::Approx(expected.row_variance).epsilon(1e-12));
}

TEST_CASE("empty selection and all-missing selections raise") {
    const ExpressionMatrix m = gen::to_matrix({{1.0, 2.0}, {3.0, 4.0}});
    Bicluster empty(2, 2);
    CHECK_THROWS_AS((void)compute_stats(m, empty), EmptySelectionError);

    oracle::Grid grid = {{std::nullopt, 2.0}, {3.0, 4.0}};
    grid[0][0] = std::nullopt;
    const ExpressionMatrix m2 = gen::to_matrix(grid);
    CHECK_THROWS_AS((void)compute_stats(m2, Bicluster::from_indices(2, 2, {0}, {0})),
                    DegenerateSubmatrixError);
}

TEST_CASE("gene contributions match the oracle for members and non-members") {
    Rng rng(404);
    for (int trial = 0; trial < 20; ++trial) {
        const oracle::Grid grid =
            gen::random_grid(rng, 9, 7, 0.0, 10.0, trial % 2 ? 0.1 : 0.0);
        const ExpressionMatrix m = gen::to_matrix(grid);
        const auto rows = gen::random_subset(rng, 9);
        const auto cols = gen::random_subset(rng, 7);
        const Bicluster bic = Bicluster::from_indices(9, 7, rows, cols);
        SubmatrixStats stats;
        try {
            compute_stats(m, bic, stats);
        } catch (const DegenerateSubmatrixError&) {
            continue;
        }
        std::vector<double> all;
        all_gene_contributions(m, stats, all);
        REQUIRE(all.size() == 9);
        for (std::size_t i = 0; i < 9; ++i) {
            const double expected = oracle::gene_contribution(grid, rows, cols, i);
            if (std::isinf(expected)) {
                CHECK(std::isinf(all[i]));
            } else {
                CHECK(all[i] == doctest::Approx(expected).epsilon(1e-9));
            }
            if (std::find(rows.begin(), rows.end(), i) != rows.end()) {
                const double direct = residue_contribution_row(m, bic, i);
                if (std::isinf(all[i])) {
                    CHECK(std::isinf(direct));
                } else {
                    CHECK(direct == doctest::Approx(all[i]).epsilon(1e-12));
                }
            }
        }
    }
}

TEST_CASE("column contributions match the oracle for members and non-members") {
    Rng rng(505);
    for (int trial = 0; trial < 20; ++trial) {
        const oracle::Grid grid =
            gen::random_grid(rng, 9, 7, 0.0, 10.0, trial % 2 ? 0.1 : 0.0);
        const ExpressionMatrix m = gen::to_matrix(grid);
        const auto rows = gen::random_subset(rng, 9);
        const auto cols = gen::random_subset(rng, 7);
        const Bicluster bic = Bicluster::from_indices(9, 7, rows, cols);
        SubmatrixStats stats;
        try {
            compute_stats(m, bic, stats);
        } catch (const DegenerateSubmatrixError&) {
            continue;
        }
        std::vector<double> all;
        all_column_contributions(m, stats, all);
        REQUIRE(all.size() == 7);
        for (std::size_t j = 0; j < 7; ++j) {
            const double expected = oracle::col_contribution(grid, rows, cols, j);
            if (std::isinf(expected)) {
                CHECK(std::isinf(all[j]));
            } else {
                CHECK(all[j] == doctest::Approx(expected).epsilon(1e-9));
            }
            if (std::find(cols.begin(), cols.end(), j) != cols.end()) {
                const double direct = residue_contribution_col(m, bic, j);
                if (std::isinf(all[j])) {
                    CHECK(std::isinf(direct));
                } else {
                    CHECK(direct == doctest::Approx(all[j]).epsilon(1e-12));
                }
            }
        }
    }
}

TEST_CASE("objective vector wiring") {
    // 2x2 of a 4x5 matrix: f1 = 4/2, f2 = 5/2, f3 = residue/delta,
    // f4 = 1/(variance + epsilon).
    oracle::Grid grid(4, std::vector<std::optional<double>>(5, 1.0));
    grid[0][0] = 1.0;
    grid[0][1] = 2.0;
    grid[1][0] = 3.0;
    grid[1][1] = 5.0;
    const ExpressionMatrix m = gen::to_matrix(grid);
    const Bicluster bic = Bicluster::from_indices(4, 5, {0, 1}, {0, 1});
    const ObjectiveVector o = evaluate(m, bic, 0.5);
    CHECK(o.f1 == doctest::Approx(2.0));
    CHECK(o.f2 == doctest::Approx(2.5));
    CHECK(o.f3 == doctest::Approx(0.0625 / 0.5).epsilon(1e-12));
    CHECK(o.f4 == doctest::Approx(1.0 / (0.625 + 1e-9)).epsilon(1e-9));
    CHECK(o.residue == doctest::Approx(0.0625).epsilon(1e-12));
    CHECK(o.feasible == (o.residue <= 0.5));

    // Feasibility boundary is exact: residue == delta counts as feasible.
    const ObjectiveVector at = evaluate(m, bic, 0.0625);
    CHECK(at.feasible);
    const ObjectiveVector below = evaluate(m, bic, 0.06249);
    CHECK_FALSE(below.feasible);
}

TEST_CASE("yeast-scale objective normalizers") {
    // The f1 scale anchor: 437 genes of 2884 gives N/|I| ~ 6.599.
    CHECK(2884.0 / 437.0 == doctest::Approx(6.5995423341));
}

} // TEST_SUITE

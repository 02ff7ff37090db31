#include "biswarm/errors.hpp"
#include "biswarm/mopso.hpp"
#include "biswarm/report.hpp"
#include "biswarm/stats.hpp"

#include "generators.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

using namespace biswarm;

namespace {

PsoParams small_params(double delta) {
    PsoParams p;
    p.pop_size = 20;
    p.max_gen = 5;
    p.delta = delta;
    p.archive_cap = 40;
    p.prune_to = 20;
    p.seed = 99;
    return p;
}

} // namespace

TEST_SUITE("mopso") {

TEST_CASE("parameter validation") {
    PsoParams p;
    p.delta = 300.0;
    CHECK_NOTHROW(p.validate());
    p.pop_size = 1;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p.pop_size = 2;
    p.max_gen = 0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p.max_gen = 1;
    p.mutation_prob = 1.5;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p.mutation_prob = 0.3;
    p.v_max = 0.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p.v_max = 4.0;
    p.delta = 0.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p.delta = 300.0;
    p.init_gene_prob = 1.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("velocity step: consensus, inertia, single social term, clamping") {
    // All positions agree: every difference term vanishes.
    CHECK(velocity_step(0.0, 1.0, 1.0, 1.0, 0.729, 1.49445, 1.49445, 0.3, 0.7, 4.0) == 0.0);
    // Pure inertia with zeroed acceleration coefficients.
    CHECK(velocity_step(0.3, 0.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.9, 0.1, 4.0) ==
          doctest::Approx(0.3));
    // Single active term: w=0, c1=2, r1=1, gbest=1, s=0 gives exactly 2.
    CHECK(velocity_step(0.0, 0.0, 0.0, 1.0, 0.0, 2.0, 0.0, 1.0, 0.0, 4.0) ==
          doctest::Approx(2.0));
    // Clamp at +/- v_max.
    CHECK(velocity_step(3.9, 0.0, 1.0, 1.0, 1.0, 2.0, 2.0, 1.0, 1.0, 4.0) == 4.0);
    CHECK(velocity_step(-3.9, 1.0, 0.0, 0.0, 1.0, 2.0, 2.0, 1.0, 1.0, 4.0) == -4.0);
}

TEST_CASE("sigmoid midpoint and saturation") {
    CHECK(sigmoid(0.0) == 0.5);
    CHECK(sigmoid(4.0) == doctest::Approx(0.98201379).epsilon(1e-6));
    CHECK(sigmoid(-4.0) == doctest::Approx(0.01798621).epsilon(1e-6));
    CHECK(sigmoid(-60.0) < 1e-20);
}

TEST_CASE("position update bit frequencies track sigmoid(v)") {
    Rng rng(404);
    Particle p;
    const int draws = 10000;
    for (const double v : {0.0, 4.0, -4.0}) {
        p.velocity.assign(1, v);
        p.position.assign(1, 0);
        int ones = 0;
        for (int i = 0; i < draws; ++i) {
            update_position(p, rng);
            ones += p.position[0];
        }
        const double freq = static_cast<double>(ones) / draws;
        CHECK(std::abs(freq - sigmoid(v)) < 0.01);
    }
}

TEST_CASE("velocity update clamps every dimension") {
    Rng rng(505);
    PsoParams params;
    params.delta = 1.0;
    params.c1 = params.c2 = 50.0; // force saturation
    Particle p;
    p.position.assign(12, 0);
    p.velocity.assign(12, 0.0);
    p.pbest_position.assign(12, 1);
    const std::vector<std::uint8_t> gbest(12, 1);
    update_velocity(p, gbest, params, rng);
    for (const double v : p.velocity) {
        CHECK(std::abs(v) <= params.v_max);
        CHECK(v > 0.0); // both social terms push upward here
    }
}

TEST_CASE("mutation: probability zero is the identity") {
    Rng rng(606);
    PsoParams params;
    params.delta = 1.0;
    params.mutation_prob = 0.0;
    Particle p;
    p.position.assign(10, 0);
    p.position[3] = 1;
    const auto before = p.position;
    for (int i = 0; i < 300; ++i) {
        mutate(p, params, 6, rng);
    }
    CHECK(p.position == before);
}

TEST_CASE("mutation moves at most one bit; bit-flip operator moves exactly one") {
    Rng rng(707);
    PsoParams params;
    params.delta = 1.0;
    params.mutation_prob = 1.0;

    // From an all-ones position the two grow operators are no-ops, so any
    // change comes from the flip operator and has Hamming distance 1.
    std::size_t changed = 0;
    const int trials = 3000;
    for (int t = 0; t < trials; ++t) {
        Particle p;
        p.position.assign(12, 1);
        mutate(p, params, 8, rng);
        std::size_t dist = 0;
        for (std::size_t d = 0; d < 12; ++d) {
            dist += p.position[d] != 1;
        }
        CHECK(dist <= 1);
        changed += dist;
    }
    // The flip operator is chosen with probability 1/3.
    CHECK(static_cast<double>(changed) / trials == doctest::Approx(1.0 / 3.0).epsilon(0.15));

    // General positions: every mutation changes at most one bit.
    for (int t = 0; t < 1000; ++t) {
        Particle p;
        p.position.assign(10, 0);
        for (auto& bit : p.position) {
            bit = rng.chance(0.5);
        }
        const auto before = p.position;
        mutate(p, params, 6, rng);
        std::size_t dist = 0;
        for (std::size_t d = 0; d < 10; ++d) {
            dist += p.position[d] != before[d];
        }
        CHECK(dist <= 1);
    }
}

TEST_CASE("grow operators only set bits within their own section") {
    Rng rng(808);
    PsoParams params;
    params.delta = 1.0;
    params.mutation_prob = 1.0;
    for (int t = 0; t < 2000; ++t) {
        Particle p;
        p.position.assign(9, 0);
        p.position[0] = 1; // one gene set, conditions empty
        const auto before = p.position;
        mutate(p, params, 5, rng);
        int grew_gene = 0;
        int grew_cond = 0;
        int cleared = 0;
        for (std::size_t d = 0; d < 9; ++d) {
            if (p.position[d] && !before[d]) {
                (d < 5 ? grew_gene : grew_cond) += 1;
            }
            cleared += before[d] && !p.position[d];
        }
        CHECK(grew_gene + grew_cond + cleared <= 1);
    }
}

TEST_CASE("pbest updates follow dominance with a fair tie coin") {
    Rng rng(909);
    Particle p;
    p.position.assign(4, 1);
    p.pbest_position.assign(4, 0);

    auto obj = [](double f1, double f2) {
        ObjectiveVector o;
        o.f1 = f1;
        o.f2 = f2;
        o.f3 = 1.0;
        o.f4 = 1.0;
        o.feasible = true;
        return o;
    };

    p.pbest_objectives = obj(2, 2);
    p.current_objectives = obj(1, 1);
    p.current_valid = true;
    update_pbest(p, rng);
    CHECK(p.pbest_objectives.f1 == 1.0);
    CHECK(p.pbest_position == p.position);

    p.pbest_objectives = obj(1, 1);
    p.current_objectives = obj(2, 2);
    p.pbest_position.assign(4, 0);
    update_pbest(p, rng);
    CHECK(p.pbest_objectives.f1 == 1.0);
    CHECK(p.pbest_position == std::vector<std::uint8_t>(4, 0));

    // Mutually non-dominating: replacement frequency 0.5.
    int replaced = 0;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) {
        p.pbest_objectives = obj(1, 2);
        p.current_objectives = obj(2, 1);
        update_pbest(p, rng);
        replaced += p.pbest_objectives.f2 == 1.0;
    }
    CHECK(std::abs(static_cast<double>(replaced) / trials - 0.5) < 0.05);

    // Invalid evaluations never touch the pbest.
    p.pbest_objectives = obj(1, 2);
    p.current_objectives = obj(0.5, 0.5);
    p.current_valid = false;
    update_pbest(p, rng);
    CHECK(p.pbest_objectives.f1 == 1.0);
}

TEST_CASE("position encoding round-trips") {
    Bicluster b = Bicluster::from_indices(5, 3, {0, 4}, {1});
    const auto pos = encode_position(b);
    REQUIRE(pos.size() == 8);
    CHECK(pos[0] == 1);
    CHECK(pos[4] == 1);
    CHECK(pos[6] == 1);
    CHECK(decode_position(pos, 5) == b);
}

TEST_CASE("equal seeds give bit-identical archives; different seeds differ") {
    Rng rng(1001);
    const gen::PlantedBlock plant = gen::planted_block(rng);
    const ExpressionMatrix m = gen::to_matrix(plant.grid);
    const PsoParams params = small_params(300.0);

    const RunResult a = run(m, params);
    const RunResult b = run(m, params);
    CHECK(archive_to_json(m, a.archive).dump() == archive_to_json(m, b.archive).dump());
    REQUIRE(a.generations.size() == b.generations.size());
    for (std::size_t g = 0; g < a.generations.size(); ++g) {
        CHECK(a.generations[g].archive_size == b.generations[g].archive_size);
        CHECK(a.generations[g].best_residue == b.generations[g].best_residue);
    }

    PsoParams other = params;
    other.seed = 1234567;
    const RunResult c = run(m, other);
    CHECK(archive_to_json(m, a.archive).dump() != archive_to_json(m, c.archive).dump());
}

TEST_CASE("thread count does not change results") {
    Rng rng(1002);
    const gen::PlantedBlock plant = gen::planted_block(rng);
    const ExpressionMatrix m = gen::to_matrix(plant.grid);
    PsoParams params = small_params(300.0);
    params.threads = 1;
    const RunResult a = run(m, params);
    params.threads = 4;
    const RunResult b = run(m, params);
    CHECK(archive_to_json(m, a.archive).dump() == archive_to_json(m, b.archive).dump());
}

TEST_CASE("run output invariants: feasibility, caps, velocity bounds") {
    Rng rng(1003);
    const gen::PlantedBlock plant = gen::planted_block(rng);
    const ExpressionMatrix m = gen::to_matrix(plant.grid);
    const PsoParams params = small_params(300.0);

    bool velocity_ok = true;
    bool cap_ok = true;
    const RunResult result = run(m, params, [&](const GenerationView& view) {
        for (const auto& particle : view.particles) {
            for (const double v : particle.velocity) {
                velocity_ok &= std::abs(v) <= params.v_max;
            }
        }
        cap_ok &= view.archive.size() <= params.prune_to; // hook fires post-prune
    });
    CHECK(velocity_ok);
    CHECK(cap_ok);
    CHECK(result.generations.size() == params.max_gen);
    CHECK(result.total_seconds > 0.0);
    CHECK(result.seed == params.seed);

    // Independent re-verification of every archived bicluster.
    REQUIRE(!result.archive.empty());
    for (const auto& entry : result.archive.entries()) {
        const SubmatrixStats s = compute_stats(m, entry.bicluster);
        CHECK(s.residue <= 300.0);
        CHECK(entry.objectives.feasible);
        CHECK(s.residue == doctest::Approx(entry.objectives.residue).epsilon(1e-9));
    }
    // Mutual non-dominance of the final archive.
    for (const auto& a : result.archive.entries()) {
        for (const auto& b : result.archive.entries()) {
            CHECK_FALSE(dominates(a.objectives, b.objectives));
        }
    }
}

TEST_CASE("per-generation stats are coherent") {
    Rng rng(1004);
    const gen::PlantedBlock plant = gen::planted_block(rng);
    const ExpressionMatrix m = gen::to_matrix(plant.grid);
    const RunResult result = run(m, small_params(300.0));
    for (std::size_t g = 0; g < result.generations.size(); ++g) {
        const GenerationStats& s = result.generations[g];
        CHECK(s.gen == g + 1);
        CHECK(s.archive_size >= 1);
        CHECK(s.best_residue >= 0.0);
        CHECK(s.best_residue <= 300.0);
        CHECK(s.coverage_cells_pct >= 0.0);
        CHECK(s.coverage_cells_pct <= 100.0);
    }
}

TEST_CASE("all-missing matrix exhausts re-initialization and names delta") {
    // Loadable matrix whose every cell is missing: evaluation degenerates
    // everywhere, so the archive can never be seeded.
    std::istringstream in("gene\ta\tb\ng1\t-1\t-1\ng2\t-1\t-1\n");
    const ExpressionMatrix m = ExpressionMatrix::load_tsv(in);
    PsoParams params = small_params(123.5);
    params.pop_size = 4;
    params.max_gen = 1;
    try {
        (void)run(m, params);
        FAIL("expected InfeasibleError");
    } catch (const InfeasibleError& e) {
        CHECK(std::string(e.what()).find("123.5") != std::string::npos);
    }
}

TEST_CASE("small planted block is recovered quickly") {
    Rng rng(1005);
    const gen::PlantedBlock plant = gen::planted_constant_block(rng);
    const ExpressionMatrix m = gen::to_matrix(plant.grid);
    PsoParams params = small_params(300.0);
    params.pop_size = 30;
    params.max_gen = 12;
    const RunResult result = run(m, params);
    const Bicluster truth =
        Bicluster::from_indices(60, 12, plant.block_rows, plant.block_cols);
    double best = 0.0;
    for (const auto& entry : result.archive.entries()) {
        best = std::max(best, gen::jaccard_cells(entry.bicluster, truth));
    }
    CHECK(best >= 0.8);
}

} // TEST_SUITE

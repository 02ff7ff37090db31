#include "biswarm/mopso.hpp"

#include "biswarm/errors.hpp"
#include "biswarm/local_search.hpp"
#include "biswarm/parallel.hpp"
#include "biswarm/stats.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <limits>
#include <sstream>
#include <utility>

namespace biswarm {

namespace {

// Substream tags. Particle streams use (seed, particle, gen) with gen >= 1;
// the init attempts and the archive's own stream live in disjoint tag ranges.
constexpr std::uint64_t kTagInitBase = 0x1000000000000000ULL;
constexpr std::uint64_t kTagArchive = 0x2000000000000000ULL;

ObjectiveVector worst_objectives() {
    ObjectiveVector o;
    const double inf = std::numeric_limits<double>::infinity();
    o.f1 = o.f2 = o.f3 = o.f4 = inf;
    o.residue = o.row_variance = inf;
    o.feasible = false;
    return o;
}

// Evaluation that degrades to a sentinel when the selection holds no
// present cell (possible with missing data); the repair step already
// guarantees non-empty masks.
bool try_evaluate(const ExpressionMatrix& matrix, const Bicluster& bic, const PsoParams& params,
                  SubmatrixStats& scratch, ObjectiveVector& out) {
    try {
        out = evaluate(matrix, bic, params.delta, params.epsilon_var, scratch);
        return true;
    } catch (const DegenerateSubmatrixError&) {
        out = worst_objectives();
        return false;
    }
}

void repair(std::vector<std::uint8_t>& position, std::size_t n_genes, Rng& rng) {
    const std::size_t n_conditions = position.size() - n_genes;
    if (std::find(position.begin(), position.begin() + n_genes, std::uint8_t{1}) ==
        position.begin() + n_genes) {
        position[rng.below(n_genes)] = 1;
    }
    if (std::find(position.begin() + n_genes, position.end(), std::uint8_t{1}) == position.end()) {
        position[n_genes + rng.below(n_conditions)] = 1;
    }
}

// Indices of population members not dominated by any other member, on the
// raw objective vectors (feasible or not).
std::vector<std::size_t> non_dominated_members(const std::vector<Particle>& particles) {
    std::vector<std::size_t> result;
    for (std::size_t i = 0; i < particles.size(); ++i) {
        if (!particles[i].current_valid) {
            continue;
        }
        bool dominated = false;
        for (std::size_t k = 0; k < particles.size(); ++k) {
            if (k != i && particles[k].current_valid &&
                dominates(particles[k].current_objectives, particles[i].current_objectives)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) {
            result.push_back(i);
        }
    }
    return result;
}

// Addition-only refinement of each archive entry, rebuilt through
// try_insert so the feasibility/non-dominance invariants are re-imposed.
// Entries whose refinement degenerates keep their original form.
void refine_archive(const ExpressionMatrix& matrix, ParetoArchive& archive,
                    const PsoParams& params, const LocalSearchConfig& add_cfg, Rng& archive_rng,
                    SubmatrixStats& scratch) {
    const std::vector<ArchiveEntry> snapshot = archive.entries();
    ParetoArchive rebuilt(params.archive_cap, params.prune_to);
    for (const auto& entry : snapshot) {
        ArchiveEntry candidate = entry;
        Bicluster refined = multiple_node_addition(matrix, entry.bicluster, add_cfg);
        if (!(refined == entry.bicluster)) {
            ObjectiveVector obj;
            if (try_evaluate(matrix, refined, params, scratch, obj) && obj.feasible) {
                candidate.bicluster = std::move(refined);
                candidate.objectives = obj;
            }
        }
        rebuilt.try_insert(std::move(candidate), archive_rng);
    }
    archive = std::move(rebuilt);
}

double archive_best_residue(const ParetoArchive& archive) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& entry : archive.entries()) {
        best = std::min(best, entry.objectives.residue);
    }
    return archive.empty() ? 0.0 : best;
}

double archive_cell_coverage_pct(const ExpressionMatrix& matrix, const ParetoArchive& archive) {
    std::vector<Bicluster> set;
    set.reserve(archive.size());
    for (const auto& entry : archive.entries()) {
        set.push_back(entry.bicluster);
    }
    return coverage(matrix, set).cell_pct;
}

} // namespace

void PsoParams::validate() const {
    if (pop_size < 2) {
        throw ConfigError("pop_size must be at least 2");
    }
    if (max_gen < 1) {
        throw ConfigError("max_gen must be at least 1");
    }
    if (mutation_prob < 0.0 || mutation_prob > 1.0) {
        throw ConfigError("mutation_prob must lie in [0, 1]");
    }
    if (v_max <= 0.0) {
        throw ConfigError("v_max must be positive");
    }
    if (delta <= 0.0) {
        throw ConfigError("delta must be positive");
    }
    if (alpha <= 1.0) {
        throw ConfigError("alpha must exceed 1");
    }
    if (init_gene_prob <= 0.0 || init_gene_prob >= 1.0 || init_cond_prob <= 0.0 ||
        init_cond_prob >= 1.0) {
        throw ConfigError("initialization probabilities must lie in (0, 1)");
    }
    if (ls_max_iterations == 0) {
        throw ConfigError("ls_max_iterations must be at least 1");
    }
    ParetoArchive probe(archive_cap, prune_to); // validates the cap pair
    (void)probe;
}

double velocity_step(double v, double s, double pbest, double gbest, double w, double c1,
                     double c2, double r1, double r2, double v_max) {
    const double next = w * v + c1 * r1 * (gbest - s) + c2 * r2 * (pbest - s);
    return std::clamp(next, -v_max, v_max);
}

void update_velocity(Particle& p, const std::vector<std::uint8_t>& gbest, const PsoParams& params,
                     Rng& rng) {
    assert(gbest.size() == p.position.size());
    for (std::size_t d = 0; d < p.velocity.size(); ++d) {
        const double r1 = rng.uniform01();
        const double r2 = rng.uniform01();
        p.velocity[d] =
            velocity_step(p.velocity[d], p.position[d], p.pbest_position[d], gbest[d],
                          params.inertia, params.c1, params.c2, r1, r2, params.v_max);
    }
}

void update_position(Particle& p, Rng& rng) {
    for (std::size_t d = 0; d < p.position.size(); ++d) {
        p.position[d] = rng.uniform01() < sigmoid(p.velocity[d]) ? 1 : 0;
    }
}

void mutate(Particle& p, const PsoParams& params, std::size_t n_genes, Rng& rng) {
    if (!rng.chance(params.mutation_prob)) {
        return;
    }
    const std::size_t op = rng.below(3);
    if (op == 0) {
        const std::size_t d = rng.below(p.position.size());
        p.position[d] ^= 1;
        return;
    }
    const std::size_t begin = op == 1 ? 0 : n_genes;
    const std::size_t end = op == 1 ? n_genes : p.position.size();
    std::vector<std::size_t> zeros;
    for (std::size_t d = begin; d < end; ++d) {
        if (!p.position[d]) {
            zeros.push_back(d);
        }
    }
    if (!zeros.empty()) {
        p.position[zeros[rng.below(zeros.size())]] = 1;
    }
}

void update_pbest(Particle& p, Rng& rng) {
    if (!p.current_valid) {
        return;
    }
    if (dominates(p.current_objectives, p.pbest_objectives)) {
        p.pbest_position = p.position;
        p.pbest_objectives = p.current_objectives;
        return;
    }
    if (dominates(p.pbest_objectives, p.current_objectives)) {
        return;
    }
    if (rng.chance(0.5)) {
        p.pbest_position = p.position;
        p.pbest_objectives = p.current_objectives;
    }
}

Bicluster decode_position(const std::vector<std::uint8_t>& position, std::size_t n_genes) {
    Bicluster bic;
    bic.gene_mask.assign(position.begin(), position.begin() + n_genes);
    bic.cond_mask.assign(position.begin() + n_genes, position.end());
    return bic;
}

std::vector<std::uint8_t> encode_position(const Bicluster& bicluster) {
    std::vector<std::uint8_t> position = bicluster.gene_mask;
    position.insert(position.end(), bicluster.cond_mask.begin(), bicluster.cond_mask.end());
    return position;
}

RunResult run(const ExpressionMatrix& matrix, const PsoParams& params, const GenerationHook& hook) {
    params.validate();
    const auto started = std::chrono::steady_clock::now();

    const std::size_t n_genes = matrix.n_genes();
    const std::size_t n_dims = n_genes + matrix.n_conditions();

    const LocalSearchConfig full_cfg{params.delta, params.alpha, params.ls_max_iterations,
                                     LocalSearchPhases::Full3Phase};
    const LocalSearchConfig add_cfg{params.delta, params.alpha, params.ls_max_iterations,
                                    LocalSearchPhases::AdditionOnly};

    RunResult result;
    result.seed = params.seed;
    result.archive = ParetoArchive(params.archive_cap, params.prune_to);

    std::vector<Particle> particles(params.pop_size);
    SubmatrixStats scratch;

    // Initialization: random positions, zero velocities, archive seeded by
    // three-phase refinement of the population's non-dominated members.
    // The deletion phases drive infeasible random starts down to residue
    // <= delta, so the seeding normally succeeds on the first attempt.
    constexpr std::size_t kInitAttempts = 6; // first try + 5 retries
    for (std::size_t attempt = 0; attempt < kInitAttempts; ++attempt) {
        for (std::size_t i = 0; i < particles.size(); ++i) {
            Particle& p = particles[i];
            Rng rng = Rng::substream(params.seed, i, kTagInitBase + attempt);
            p.position.assign(n_dims, 0);
            p.velocity.assign(n_dims, 0.0);
            for (std::size_t d = 0; d < n_dims; ++d) {
                const double prob = d < n_genes ? params.init_gene_prob : params.init_cond_prob;
                p.position[d] = rng.chance(prob) ? 1 : 0;
            }
            repair(p.position, n_genes, rng);
            p.current_valid =
                try_evaluate(matrix, decode_position(p.position, n_genes), params, scratch,
                             p.current_objectives);
            p.pbest_position = p.position;
            p.pbest_objectives = p.current_valid ? p.current_objectives : worst_objectives();
        }

        Rng archive_rng = Rng::substream(params.seed, kTagArchive, kTagInitBase + attempt);
        for (const auto i : non_dominated_members(particles)) {
            const Bicluster start = decode_position(particles[i].position, n_genes);
            Bicluster refined;
            try {
                refined = local_search(matrix, start, full_cfg);
            } catch (const Error&) {
                continue; // degenerate selection under missing data
            }
            ArchiveEntry candidate;
            ObjectiveVector obj;
            if (!try_evaluate(matrix, refined, params, scratch, obj)) {
                continue;
            }
            candidate.bicluster = std::move(refined);
            candidate.objectives = obj;
            result.archive.try_insert(std::move(candidate), archive_rng);
        }
        if (!result.archive.empty()) {
            break;
        }
    }
    if (result.archive.empty()) {
        std::ostringstream msg;
        msg << "no feasible bicluster found for delta=" << params.delta
            << " after initialization and 5 re-initializations";
        throw InfeasibleError(msg.str());
    }

    // Main loop, one generation per iteration.
    for (std::size_t gen = 1; gen <= params.max_gen; ++gen) {
        result.archive.recompute_crowding();

        std::vector<Rng> streams;
        streams.reserve(particles.size());
        for (std::size_t i = 0; i < particles.size(); ++i) {
            streams.push_back(Rng::substream(params.seed, i, gen));
        }

        const ParetoArchive& archive = result.archive; // read-only during the particle phase
        parallel_for_blocks(particles.size(), params.threads, [&](std::size_t begin,
                                                                  std::size_t end) {
            SubmatrixStats local_scratch;
            for (std::size_t i = begin; i < end; ++i) {
                Particle& p = particles[i];
                Rng& rng = streams[i];
                const ArchiveEntry& leader = archive.select_gbest(rng);
                assert(leader.objectives.feasible);
                const std::vector<std::uint8_t> gbest = encode_position(leader.bicluster);
                update_velocity(p, gbest, params, rng);
                update_position(p, rng);
                mutate(p, params, n_genes, rng);
                repair(p.position, n_genes, rng);
                p.current_valid = try_evaluate(matrix, decode_position(p.position, n_genes),
                                               params, local_scratch, p.current_objectives);
            }
        });

        // Serialized archive phase, in particle order.
        Rng archive_rng = Rng::substream(params.seed, kTagArchive, gen);
        for (const auto& p : particles) {
            if (p.current_valid && p.current_objectives.feasible) {
                ArchiveEntry candidate;
                candidate.bicluster = decode_position(p.position, n_genes);
                candidate.objectives = p.current_objectives;
                result.archive.try_insert(std::move(candidate), archive_rng);
            }
        }

        refine_archive(matrix, result.archive, params, add_cfg, archive_rng, scratch);

        for (std::size_t i = 0; i < particles.size(); ++i) {
            update_pbest(particles[i], streams[i]);
        }

        result.archive.prune_by_overlap();

        GenerationStats stats;
        stats.gen = gen;
        stats.archive_size = result.archive.size();
        stats.best_residue = archive_best_residue(result.archive);
        stats.coverage_cells_pct = archive_cell_coverage_pct(matrix, result.archive);
        result.generations.push_back(stats);

        if (hook) {
            hook(GenerationView{gen, result.archive, particles});
        }
    }

    result.total_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

} // namespace biswarm
